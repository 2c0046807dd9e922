#pragma once

#include <string>
#include <vector>

namespace coulstat::cli {

// Full entry point: parses flags and the optional JSON config file
// (flags take precedence), dispatches, writes output.
// Returns 0 on success, 1 on validation/usage errors (and failed compare
// suites), 2 on numerical errors.
int run(int argc, const char* const* argv);

// Convenience for tests: argv without the program name.
int run(const std::vector<std::string>& args);

} // namespace coulstat::cli
