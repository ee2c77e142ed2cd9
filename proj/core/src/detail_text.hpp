#pragma once

#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace coxkde::detail {

inline std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' || text.front() == '\r')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    return text;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

inline bool parse_double(std::string_view text, double& value) {
    text = trim(text);
    if (text.empty()) return false;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc{} && ptr == end;
}

// shortest representation that parses back to the same double
inline std::string format_double(double value) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: buffer too small");
    return std::string(buffer, ptr);
}

// Moves the decimal point of a decimal literal `places` digits to the right
// (left when negative). Pure text manipulation, so decimal scaling is exact:
// shift_decimal("336.22", 3) == "336220". An exponent part is folded into
// the shift ("1.2e-3", 2 -> "0.12").
inline std::string shift_decimal(std::string_view text, int places) {
    std::string sign;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        if (text.front() == '-') sign = "-";
        text.remove_prefix(1);
    }
    const std::size_t exponent_mark = text.find_first_of("eE");
    if (exponent_mark != std::string_view::npos) {
        std::string_view exponent_text = text.substr(exponent_mark + 1);
        if (!exponent_text.empty() && exponent_text.front() == '+') exponent_text.remove_prefix(1);
        int exponent = 0;
        const auto [ptr, ec] =
            std::from_chars(exponent_text.data(), exponent_text.data() + exponent_text.size(),
                            exponent);
        if (ec != std::errc{} || ptr != exponent_text.data() + exponent_text.size()) {
            throw std::invalid_argument("shift_decimal: malformed exponent");
        }
        places += exponent;
        text = text.substr(0, exponent_mark);
    }
    const std::size_t point = text.find('.');
    std::string digits;
    std::ptrdiff_t point_position;
    if (point == std::string_view::npos) {
        digits = std::string(text);
        point_position = static_cast<std::ptrdiff_t>(digits.size());
    } else {
        digits = std::string(text.substr(0, point)) + std::string(text.substr(point + 1));
        point_position = static_cast<std::ptrdiff_t>(point);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("shift_decimal: not a plain decimal literal");
    }
    point_position += places;

    std::string result;
    if (point_position <= 0) {
        result = "0." + std::string(static_cast<std::size_t>(-point_position), '0') + digits;
    } else if (static_cast<std::size_t>(point_position) >= digits.size()) {
        result = digits + std::string(static_cast<std::size_t>(point_position) - digits.size(), '0');
    } else {
        result = digits.substr(0, static_cast<std::size_t>(point_position)) + "." +
                 digits.substr(static_cast<std::size_t>(point_position));
    }
    // drop redundant leading zeros ("01.04" -> "1.04")
    std::size_t keep = 0;
    while (keep + 1 < result.size() && result[keep] == '0' && result[keep + 1] != '.') ++keep;
    return sign + result.substr(keep);
}

} // namespace coxkde::detail
