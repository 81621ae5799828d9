#include "oafem/geometry.hpp"

#include <charconv>
#include <stdexcept>

namespace oafem {

namespace {

std::string to_chars_str(double v, bool fixed_precision) {
    char buf[64];
    std::to_chars_result res =
        fixed_precision ? std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17)
                        : std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, res.ptr);
}

}  // namespace

std::string format_double17(double v) { return to_chars_str(v, true); }

std::string format_double_shortest(double v) { return to_chars_str(v, false); }

}  // namespace oafem
