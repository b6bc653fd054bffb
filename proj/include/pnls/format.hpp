#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace pnls {

// 17 significant digits; round-trips every double.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace pnls
