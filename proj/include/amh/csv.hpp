#pragma once

#include <cstdio>
#include <string>

namespace amh::csv {

// All CSV emitters print floating-point fields with %.6g so that equal
// configurations produce byte-identical output across runs and platforms.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace amh::csv
