#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace styloseg::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Regular files in `dir` whose extension matches one of `extensions`
/// (e.g. {".txt"}), sorted by filename for deterministic traversal.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              const std::vector<std::string>& extensions);

/// Shortest decimal rendering that round-trips the double exactly.
std::string format_double(double v);

/// Fixed-point rendering for human-readable tables and SVG coordinates.
std::string format_fixed(double v, int decimals);

std::string csv_escape(const std::string& field);

/// One CSV row, fields escaped and joined by commas, newline-terminated.
std::string csv_row(const std::vector<std::string>& fields);

/// Minimal CSV parser for the toolkit's own outputs (quotes and embedded
/// commas supported, no multi-line fields).
std::vector<std::vector<std::string>> parse_csv(const std::string& content);

}  // namespace styloseg::io
