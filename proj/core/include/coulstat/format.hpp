#pragma once

#include <string>

namespace coulstat {

// Numeric serialization for CSV/JSON output: 17 significant digits, enough
// to round-trip any double bit-exactly.
std::string fmt17(double value);

} // namespace coulstat
