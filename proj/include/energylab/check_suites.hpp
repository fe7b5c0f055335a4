#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace energylab {

// Property suites behind `check --suite <name>`. Each prints one line per
// check ("ok <name> <value>" / "FAIL <name> ...") and returns the number of
// failures; output is byte-deterministic for a fixed seed.
int run_identities_suite(std::uint64_t seed, std::ostream& out);
int run_estimates_suite(std::uint64_t seed, std::ostream& out);
int run_exact_solutions_suite(std::uint64_t seed, std::ostream& out);

// Dispatch by suite name; throws std::invalid_argument for unknown names.
int run_suite(const std::string& name, std::uint64_t seed, std::ostream& out);

}  // namespace energylab
