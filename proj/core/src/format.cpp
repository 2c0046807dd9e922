#include "coulstat/format.hpp"

#include <cstdio>

namespace coulstat {

std::string fmt17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

} // namespace coulstat
