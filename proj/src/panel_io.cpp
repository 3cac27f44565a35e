#include "synapse/panel_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

namespace synapse::io {

using nlohmann::json;

namespace {

const std::set<std::string> top_level_fields = {
    "schema_version", "series_id", "domain",  "dataset", "horizon_class", "frequency",
    "seasonality",    "horizon",   "levels",  "context", "actuals",       "models"};
const std::set<std::string> model_fields = {"name", "quantiles", "backtest"};

struct RecordContext {
    const std::string& file;
    std::size_t line;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(file, line, what); }
};

void check_fields(const json& obj, const std::set<std::string>& allowed, const RecordContext& ctx,
                  const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) ctx.fail("unknown field '" + key + "' in " + where);
}

const json& required(const json& obj, const char* key, const RecordContext& ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) ctx.fail(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T as(const json& value, const char* key, const RecordContext& ctx) {
    try {
        return value.get<T>();
    } catch (const json::exception& e) {
        ctx.fail(std::string("field '") + key + "': " + e.what());
    }
}

std::vector<std::vector<double>> as_matrix(const json& value, const char* key, const RecordContext& ctx) {
    return as<std::vector<std::vector<double>>>(value, key, ctx);
}

} // namespace

RawPanelDocument parse_panel_record(std::string_view text, bool strict, const std::string& file, std::size_t line) {
    const RecordContext ctx{file, line};
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        ctx.fail(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) ctx.fail("panel record must be a JSON object");
    if (strict) check_fields(doc, top_level_fields, ctx, "panel record");

    const int version = as<int>(required(doc, "schema_version", ctx), "schema_version", ctx);
    if (version != panel_schema_version)
        throw SchemaVersionMismatch(file + ":" + std::to_string(line) + ": schema version " +
                                    std::to_string(version) + ", expected " +
                                    std::to_string(panel_schema_version));

    RawPanelDocument out;
    auto& panel = out.panel;
    panel.series_id = as<std::string>(required(doc, "series_id", ctx), "series_id", ctx);
    panel.horizon = as<std::size_t>(required(doc, "horizon", ctx), "horizon", ctx);
    panel.seasonality = as<std::size_t>(required(doc, "seasonality", ctx), "seasonality", ctx);
    panel.levels = as<std::vector<double>>(required(doc, "levels", ctx), "levels", ctx);
    panel.context = as<std::vector<double>>(required(doc, "context", ctx), "context", ctx);
    if (auto it = doc.find("actuals"); it != doc.end() && !it->is_null())
        panel.actuals = as<std::vector<double>>(*it, "actuals", ctx);

    if (auto it = doc.find("domain"); it != doc.end()) out.meta.domain = as<std::string>(*it, "domain", ctx);
    if (auto it = doc.find("dataset"); it != doc.end()) out.meta.dataset = as<std::string>(*it, "dataset", ctx);
    if (auto it = doc.find("frequency"); it != doc.end())
        out.meta.frequency = as<std::string>(*it, "frequency", ctx);
    if (auto it = doc.find("horizon_class"); it != doc.end()) {
        try {
            out.meta.horizon_class = parse_horizon_class(as<std::string>(*it, "horizon_class", ctx));
        } catch (const InvalidArgument& e) {
            ctx.fail(e.what());
        }
    }

    const json& models = required(doc, "models", ctx);
    if (!models.is_array()) ctx.fail("field 'models' must be an array");
    std::size_t with_backtest = 0;
    for (const auto& m : models) {
        if (!m.is_object()) ctx.fail("model entries must be objects");
        if (strict) check_fields(m, model_fields, ctx, "model entry");
        RawModelForecasts model;
        model.name = as<std::string>(required(m, "name", ctx), "name", ctx);
        model.quantiles = as_matrix(required(m, "quantiles", ctx), "quantiles", ctx);
        panel.models.push_back(std::move(model));
        if (auto it = m.find("backtest"); it != m.end()) {
            out.backtest.push_back(as_matrix(*it, "backtest", ctx));
            ++with_backtest;
        }
    }
    if (with_backtest != 0 && with_backtest != panel.models.size())
        throw AlignmentMismatch(file + ":" + std::to_string(line) + ": backtest present for only some models");
    return out;
}

std::string format_panel_record(const RawPanelDocument& doc) {
    const auto& panel = doc.panel;
    json out = json::object();
    out["schema_version"] = panel_schema_version;
    out["series_id"] = panel.series_id;
    out["domain"] = doc.meta.domain;
    if (!doc.meta.dataset.empty()) out["dataset"] = doc.meta.dataset;
    out["horizon_class"] = to_string(doc.meta.horizon_class);
    out["frequency"] = doc.meta.frequency;
    out["seasonality"] = panel.seasonality;
    out["horizon"] = panel.horizon;
    out["levels"] = panel.levels;
    out["context"] = panel.context;
    out["actuals"] = panel.actuals ? json(*panel.actuals) : json(nullptr);
    json models = json::array();
    for (std::size_t i = 0; i < panel.models.size(); ++i) {
        json m = {{"name", panel.models[i].name}, {"quantiles", panel.models[i].quantiles}};
        if (!doc.backtest.empty()) m["backtest"] = doc.backtest.at(i);
        models.push_back(std::move(m));
    }
    out["models"] = std::move(models);
    return out.dump();
}

namespace {

void load_file(const std::filesystem::path& file, bool strict, std::vector<PanelDocument>& out) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open '" + file.string() + "'");
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        out.push_back(validate_document(parse_panel_record(text, strict, file.string(), line_no)));
    }
}

} // namespace

std::vector<PanelDocument> load_panels(const std::filesystem::path& path, bool strict) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) throw IoError("path '" + path.string() + "' does not exist");
    std::vector<PanelDocument> out;
    if (!std::filesystem::is_directory(path)) {
        load_file(path, strict, out);
        return out;
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) load_file(f, strict, out);
    return out;
}

void write_panels(const std::filesystem::path& path, const std::vector<PanelDocument>& docs) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    for (const auto& doc : docs) out << format_panel_record(doc.to_raw()) << '\n';
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

} // namespace synapse::io
