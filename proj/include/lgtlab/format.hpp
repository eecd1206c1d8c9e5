#pragma once

#include <cstdio>
#include <string>

namespace lgt {

/// Round-trip decimal form of a double (17 significant digits).
inline std::string fmt_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace lgt
