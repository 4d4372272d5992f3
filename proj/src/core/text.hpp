#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fss {

// A parsed CSV file. `lines[i]` is the physical line on which `rows[i]`
// starts (the header is line 1).
struct CsvTable {
  std::string file;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;
};

// RFC 4180 style: comma separated, optional double-quote quoting with ""
// escapes, LF or CRLF line ends, optional UTF-8 BOM. Blank lines are skipped.
CsvTable parse_csv(std::string_view text, std::string file_label);
CsvTable read_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest representation that round-trips; stable across runs.
std::string format_double(double value);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace fss
