#pragma once

#include "synapse/panel_document.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace synapse::io {

inline constexpr int panel_schema_version = 1;

/// Parses one panel record. `strict` rejects unknown fields.
/// Throws ParseError (reported against `file`:`line`) or SchemaVersionMismatch;
/// validation errors from the panel invariants propagate unchanged.
RawPanelDocument parse_panel_record(std::string_view text, bool strict = true, const std::string& file = "<memory>",
                                    std::size_t line = 1);

std::string format_panel_record(const RawPanelDocument& doc);

/// Loads every record of a .jsonl file, or of every *.jsonl file in a
/// directory (sorted by file name). Blank lines are skipped.
std::vector<PanelDocument> load_panels(const std::filesystem::path& path, bool strict = true);

/// Writes one record per line. Throws IoError.
void write_panels(const std::filesystem::path& path, const std::vector<PanelDocument>& docs);

} // namespace synapse::io
