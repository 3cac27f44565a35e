#include "synapse/report.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace synapse::report {

using harness::ReportRow;

namespace {

constexpr const char* csv_header = "method,group,crps,mase,panels,wins,losses,ties";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& name, std::size_t line) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw ParseError(name, line, "invalid number '" + text + "'");
    return value;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") != std::string::npos)
        throw InvalidArgument("report field '" + text + "' contains a CSV delimiter");
    return text;
}

} // namespace

Format parse_format(std::string_view text) {
    if (text == "table") return Format::table;
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    if (text == "curves") return Format::curves;
    throw InvalidArgument("unknown report format '" + std::string(text) + "'");
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

void write_table(std::ostream& out, const std::vector<ReportRow>& rows) {
    std::size_t method_w = 6, group_w = 5;
    for (const auto& r : rows) {
        method_w = std::max(method_w, r.method.size());
        group_w = std::max(group_w, r.group.size());
    }
    out << std::left << std::setw(static_cast<int>(group_w)) << "group" << "  " << std::setw(static_cast<int>(method_w))
        << "method" << std::right << std::setw(10) << "CRPS" << std::setw(10) << "MASE" << std::setw(8) << "panels"
        << std::setw(14) << "W/L/T" << '\n';
    const auto flags = out.flags();
    for (const auto& r : rows) {
        std::ostringstream wlt;
        wlt << r.wins << '/' << r.losses << '/' << r.ties;
        out << std::left << std::setw(static_cast<int>(group_w)) << r.group << "  "
            << std::setw(static_cast<int>(method_w)) << r.method << std::right << std::fixed << std::setprecision(4)
            << std::setw(10) << r.crps << std::setw(10) << r.mase << std::setw(8) << r.panels << std::setw(14)
            << wlt.str() << '\n';
        out.flags(flags);
    }
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << csv_header << '\n';
    for (const auto& r : rows)
        out << csv_field(r.method) << ',' << csv_field(r.group) << ',' << format_double(r.crps) << ','
            << format_double(r.mase) << ',' << r.panels << ',' << r.wins << ',' << r.losses << ',' << r.ties << '\n';
}

void write_json(std::ostream& out, const std::vector<ReportRow>& rows) {
    nlohmann::json doc;
    doc["schema_version"] = report_schema_version;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
        doc["rows"].push_back({{"method", r.method},
                               {"group", r.group},
                               {"crps", r.crps},
                               {"mase", r.mase},
                               {"panels", r.panels},
                               {"wins", r.wins},
                               {"losses", r.losses},
                               {"ties", r.ties}});
    out << doc.dump(2) << '\n';
}

void write_curves(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "method,horizon_class,metric,value\n";
    constexpr std::string_view prefix = "horizon:";
    for (const auto& r : rows) {
        if (!r.group.starts_with(prefix)) continue;
        const std::string horizon = r.group.substr(prefix.size());
        out << csv_field(r.method) << ',' << horizon << ",crps," << format_double(r.crps) << '\n';
        out << csv_field(r.method) << ',' << horizon << ",mase," << format_double(r.mase) << '\n';
    }
}

std::vector<ReportRow> read_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header) throw ParseError(name, 1, "missing or unexpected CSV header");
    std::vector<ReportRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 8) throw ParseError(name, line_no, "expected 8 fields, found " + std::to_string(f.size()));
        ReportRow r;
        r.method = f[0];
        r.group = f[1];
        r.crps = parse_number<double>(f[2], name, line_no);
        r.mase = parse_number<double>(f[3], name, line_no);
        r.panels = parse_number<std::size_t>(f[4], name, line_no);
        r.wins = parse_number<std::size_t>(f[5], name, line_no);
        r.losses = parse_number<std::size_t>(f[6], name, line_no);
        r.ties = parse_number<std::size_t>(f[7], name, line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_report(const std::vector<ReportRow>& rows, Format format, const std::filesystem::path& out_path) {
    std::ostringstream buffer;
    switch (format) {
    case Format::table: write_table(buffer, rows); break;
    case Format::csv: write_csv(buffer, rows); break;
    case Format::json: write_json(buffer, rows); break;
    case Format::curves: write_curves(buffer, rows); break;
    }
    if (out_path == "-") {
        std::cout << buffer.str();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + out_path.string() + "'");
    out << buffer.str();
    if (!out) throw IoError("write to '" + out_path.string() + "' failed");
}

void write_scaling_table(std::ostream& out, const std::vector<harness::ScalingRow>& rows, Format format) {
    auto pool_text = [](const harness::ScalingRow& r) {
        std::string s;
        for (const auto& m : r.pool) s += (s.empty() ? "" : "+") + m;
        return s;
    };
    if (format == Format::json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : rows)
            doc.push_back({{"pool", r.pool},
                           {"synapse_crps", r.synapse_crps},
                           {"synapse_mase", r.synapse_mase},
                           {"best_crps_model", r.best_crps_model},
                           {"best_crps", r.best_crps},
                           {"best_mase_model", r.best_mase_model},
                           {"best_mase", r.best_mase}});
        out << doc.dump(2) << '\n';
        return;
    }
    if (format == Format::csv || format == Format::curves) {
        out << "pool,synapse_crps,synapse_mase,best_crps_model,best_crps,best_mase_model,best_mase\n";
        for (const auto& r : rows)
            out << pool_text(r) << ',' << format_double(r.synapse_crps) << ',' << format_double(r.synapse_mase) << ','
                << r.best_crps_model << ',' << format_double(r.best_crps) << ',' << r.best_mase_model << ','
                << format_double(r.best_mase) << '\n';
        return;
    }
    const auto flags = out.flags();
    out << std::left << std::setw(48) << "pool" << std::right << std::setw(12) << "SYN CRPS" << std::setw(12)
        << "SYN MASE" << std::setw(12) << "best CRPS" << std::setw(12) << "best MASE" << '\n';
    for (const auto& r : rows)
        out << std::left << std::setw(48) << pool_text(r) << std::right << std::fixed << std::setprecision(4)
            << std::setw(12) << r.synapse_crps << std::setw(12) << r.synapse_mase << std::setw(12) << r.best_crps
            << std::setw(12) << r.best_mase << '\n';
    out.flags(flags);
}

void write_selection_accuracy(std::ostream& out, const std::vector<harness::SelectionAccuracy>& rows, Format format) {
    if (format == Format::json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : rows) doc.push_back({{"method", r.method}, {"pooled", r.pooled}, {"macro", r.macro}});
        out << doc.dump(2) << '\n';
        return;
    }
    out << "method,aggregation";
    const std::size_t kmax = rows.empty() ? 0 : rows.front().pooled.size();
    for (std::size_t k = 1; k <= kmax; ++k) out << ",top" << k;
    out << '\n';
    for (const auto& r : rows) {
        out << r.method << ",pooled";
        for (double v : r.pooled) out << ',' << format_double(v);
        out << '\n' << r.method << ",macro";
        for (double v : r.macro) out << ',' << format_double(v);
        out << '\n';
    }
}

} // namespace synapse::report
