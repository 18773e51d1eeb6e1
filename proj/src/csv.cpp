#include "bandext/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace bandext::csv {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
{
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

std::vector<double> read_column(std::istream& in)
{
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto field = trim(line);
        if (field.empty() || field.front() == '#') {
            continue;
        }
        if (field.find(',') != std::string_view::npos) {
            throw ParseError(line_no, "expected a single column, found '" + std::string(field) + "'");
        }
        double v = 0.0;
        const auto* begin = field.data();
        const auto* end = field.data() + field.size();
        if (*begin == '+') {
            ++begin;
        }
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end) {
            throw ParseError(line_no, "not a number: '" + std::string(field) + "'");
        }
        if (!std::isfinite(v)) {
            throw ParseError(line_no, "value is not finite: '" + std::string(field) + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw ParseError(0, "input contains no data rows");
    }
    return values;
}

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void write_comment(std::ostream& out, std::string_view text)
{
    out << "# " << text << '\n';
}

void write_row(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << fields[i];
    }
    out << '\n';
}

} // namespace bandext::csv
