#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace fbvp::cli {

using Json = nlohmann::ordered_json;

/// 17 significant digits, lowercase scientific: 1.0000000000000000e+00.
std::string format_double(double v);

/// JSON text with every floating-point value printed by format_double,
/// non-finite values as null, two-space indentation and a final newline.
std::string dump_json(const Json& doc);

using CsvRow = std::vector<std::string>;

/// Comma-separated, header row first, "\n" line endings.
std::string to_csv(const CsvRow& header, const std::vector<CsvRow>& rows);

/// Writes text to path, creating parent directories. Throws fbvp::Error on
/// I/O failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fbvp::cli
