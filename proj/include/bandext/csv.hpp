#pragma once

#include "bandext/errors.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bandext::csv {

/// Malformed input; line() is 1-based, 0 when the file as a whole is at fault.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Read a one-column numeric file. Blank lines and lines starting with '#'
/// are skipped; anything else must parse as a single finite number.
std::vector<double> read_column(std::istream& in);

/// Shortest text that round-trips to the same double; "nan"/"inf"/"-inf" otherwise.
std::string format_number(double v);

void write_comment(std::ostream& out, std::string_view text);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace bandext::csv
