#include <charconv>
#include <cstdio>
#include <string>

#include "bmo/error.hpp"
#include "bmo/interval.hpp"

namespace bmo {

void reject(const std::string& what) { throw Rejection(what); }

Interval parse_interval(const std::string& text) {
    auto colon = text.find(':', text.empty() ? 0 : 1);
    if (colon == std::string::npos) reject("expected LO:HI, got '" + text + "'");
    Interval out;
    try {
        std::size_t used = 0;
        out.lo = std::stod(text.substr(0, colon), &used);
        out.hi = std::stod(text.substr(colon + 1), &used);
    } catch (const std::exception&) {
        reject("expected LO:HI, got '" + text + "'");
    }
    if (out.degenerate()) reject("interval '" + text + "' is empty");
    return out;
}

std::string to_string(const Interval& i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", i.lo, i.hi);
    return buf;
}

}  // namespace bmo
