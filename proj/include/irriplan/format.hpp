#ifndef IRRIPLAN_FORMAT_HPP
#define IRRIPLAN_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace irriplan {

// Fixed 6-decimal formatting for byte-stable CSV artifacts. Infinities
// (no path found yet) print as "inf".
inline std::string format_fixed(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace irriplan

#endif
