#pragma once

#include <cstdint>
#include <string>

#include "freqest/model.hpp"

namespace freqest {

enum class Engine { Fourier, Grid };

inline constexpr int kDefaultGridSize = 10000;
inline constexpr int kDefaultEnumerationCap = 16;

struct ObjectiveReport {
    double expected_variance = 0.0;
    std::int64_t branch_count = 0;
    std::string method;          // "exact-fourier" | "exact-grid" | "monte-carlo"
    double stderr_value = 0.0;   // monte-carlo only
};

// Outcome-averaged posterior variance E[V] = sum_r P(r) V(r) over all 2^N
// outcome strings, by depth-first traversal with prefix sharing. The Fourier
// engine requires an integer schedule; throws cap_exceeded_error when the
// schedule length exceeds the enumeration cap.
ObjectiveReport expected_variance_exact(const Schedule& s, Engine engine,
                                        int grid_size = kDefaultGridSize,
                                        int enumeration_cap = kDefaultEnumerationCap);

// Unbiased Monte-Carlo estimate of E[V]: draws omega uniform on (0, omega0),
// simulates the outcome string, averages the branch posterior variance.
// One derived RNG stream per sample index, so results are seed-reproducible.
ObjectiveReport expected_variance_mc(const Schedule& s, int samples, std::uint64_t seed,
                                     int grid_size = kDefaultGridSize);

}  // namespace freqest
