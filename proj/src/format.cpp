#include "momentbounds/format.hpp"

#include <cmath>
#include <cstdio>

namespace momentbounds {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string json_number(double x) {
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"+inf\"" : "\"-inf\"";
    return format_double(x);
}

} // namespace momentbounds
