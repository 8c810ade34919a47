#pragma once
#include <cstdint>

// Runs the bundled invariant suite and prints a per-claim verdict table.
// Returns the number of failing claims.  The seed only feeds the randomized
// claims (compression runs); exact verdicts are seed-free.
int run_selftest(std::uint64_t seed, bool verbose);
