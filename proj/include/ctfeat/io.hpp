#ifndef CTFEAT_IO_HPP
#define CTFEAT_IO_HPP

#include <string>
#include <vector>

namespace ctfeat {

/// Whole file as a string; throws naming the path on failure.
std::string read_file(const std::string& path);

/// Write via a temp file in the same directory, then rename into place.
void atomic_write_file(const std::string& path, const std::string& content);

/// Split one CSV record. Handles double-quoted fields with "" escapes;
/// no embedded newlines.
std::vector<std::string> split_csv_line(const std::string& line);

/// Quote a field when it contains a comma, quote or space padding.
std::string csv_escape(const std::string& field);

std::string trim(const std::string& s);
std::vector<std::string> split_lines(const std::string& text);

}  // namespace ctfeat

#endif
