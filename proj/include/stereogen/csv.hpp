#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace stereogen {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line number of the row start in the source file
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

/// RFC-4180-style reader: quoted fields, "" escapes, embedded delimiters and
/// newlines inside quotes, tolerant of \r\n endings. First record is the header.
CsvTable read_csv(const std::string& path);

/// Parse CSV from an in-memory buffer (same rules as read_csv).
CsvTable parse_csv(const std::string& text, const std::string& origin);

/// Quote a field if it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

/// Join fields into one escaped CSV line (no trailing newline).
std::string csv_join(const std::vector<std::string>& fields);

/// Read an entire file into a string. Throws ParseError if unreadable.
std::string read_file(const std::string& path);

/// Write a string to a file, creating parent directories as needed.
void write_file(const std::string& path, const std::string& content);

}  // namespace stereogen
