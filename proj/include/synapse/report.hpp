#pragma once

#include "synapse/evaluation.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace synapse::report {

enum class Format { table, csv, json, curves };

Format parse_format(std::string_view text);

inline constexpr int report_schema_version = 1;

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

void write_table(std::ostream& out, const std::vector<harness::ReportRow>& rows);
void write_csv(std::ostream& out, const std::vector<harness::ReportRow>& rows);
void write_json(std::ostream& out, const std::vector<harness::ReportRow>& rows);

/// Long-format horizon curves: method,horizon_class,metric,value for the
/// horizon:* groups, one line per metric.
void write_curves(std::ostream& out, const std::vector<harness::ReportRow>& rows);

/// Reads a CSV written by write_csv. Throws ParseError.
std::vector<harness::ReportRow> read_csv(std::istream& in, const std::string& name = "<stream>");

/// Writes rows in the given format to `out_path` ("-" for stdout). Throws IoError.
void emit_report(const std::vector<harness::ReportRow>& rows, Format format, const std::filesystem::path& out_path);

void write_scaling_table(std::ostream& out, const std::vector<harness::ScalingRow>& rows, Format format);
void write_selection_accuracy(std::ostream& out, const std::vector<harness::SelectionAccuracy>& rows, Format format);

} // namespace synapse::report
