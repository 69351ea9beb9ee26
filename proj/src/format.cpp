#include "qdilemma/format.hpp"

#include <charconv>
#include <numbers>

#include "qdilemma/errors.hpp"

namespace qdilemma {

namespace {

int significant_digits(const std::string& s) {
    int count = 0;
    bool leading = true;
    for (char ch : s) {
        if (ch == 'e' || ch == 'E') break;
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++count;
    }
    return count;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto shortest = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, shortest.ptr);
    if (significant_digits(s) <= 12) return s;
    const auto capped = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, capped.ptr);
}

double parse_angle(const std::string& text) {
    std::string body = text;
    // trim surrounding whitespace
    const auto first = body.find_first_not_of(" \t");
    const auto last = body.find_last_not_of(" \t");
    if (first == std::string::npos)
        throw InvalidParameter("angle: empty value; expected a number or pi, pi/2, pi/4");
    body = body.substr(first, last - first + 1);

    double sign = 1.0;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        if (body[0] == '-') sign = -1.0;
        body.erase(0, 1);
    }
    if (body == "pi") return sign * std::numbers::pi;
    if (body == "pi/2") return sign * std::numbers::pi / 2.0;
    if (body == "pi/4") return sign * std::numbers::pi / 4.0;

    double value = 0.0;
    const char* begin = body.data();
    const char* end = begin + body.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw InvalidParameter("angle: '" + text + "' is not a number or pi, pi/2, pi/4");
    return sign * value;
}

}  // namespace qdilemma
