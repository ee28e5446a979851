#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace multicopy::csv {

/// Quotes a field when it contains a comma, quote or newline.
std::string field(std::string_view text);

/// Shortest text that parses back to exactly the same double.
std::string real(double value);

void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads a whole CSV document, honouring quoted fields.
std::vector<std::vector<std::string>> read(std::istream& in);

}  // namespace multicopy::csv
