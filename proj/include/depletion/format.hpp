#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace depletion {

// Round-trip decimal form: 17 significant digits, "inf"/"-inf"/"nan".
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace depletion
