#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace platonic {

// Shortest-round-trip-safe text for CSV output; NaN and infinities spelled
// the same on every platform.
inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace platonic
