#include "fishsim/csv.hpp"

#include <charconv>
#include <cmath>

namespace fishsim {

namespace {

std::string to_chars_str(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::to_chars_result r =
        precision < 0 ? std::to_chars(buf, buf + sizeof buf, v)
                      : std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                                      precision);
    return std::string(buf, r.ptr);
}

} // namespace

std::string format_double(double v) { return to_chars_str(v, 17); }

std::string format_double_shortest(double v) { return to_chars_str(v, -1); }

} // namespace fishsim
