#pragma once

#include <string>
#include <vector>

namespace energylab {

// Command-line surface: simulate, audit, check, spectrum, classify.
// Exit codes: 0 success, 1 audit/suite failure, 2 usage error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace energylab
