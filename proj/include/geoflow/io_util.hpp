#pragma once

#include <cstdio>
#include <string>

namespace geoflow {

// Full round-trip precision for CSV output.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace geoflow
