#pragma once

#include <utility>
#include <vector>

#include "freqest/model.hpp"
#include "freqest/objective.hpp"

namespace freqest {

struct LonaTrace {
    std::vector<int> schedule;             // ascending canonical order
    std::vector<double> per_step_ev;       // E[V] after each greedy step
    std::vector<int> search_bound_used;    // m sweep bound at each step
};

// Greedy integer choice: m in {1..m_max} minimizing the exact Fourier E[V]
// of prefix ++ [m]; ties broken toward smaller m.
std::pair<int, double> best_next_time(const std::vector<int>& prefix, int m_max,
                                      int enumeration_cap = kDefaultEnumerationCap);

// Locally-optimal non-adaptive schedule of length N. The per-step sweep bound
// is max(8, 2 * max(prefix)), then extended once by 50% to confirm the argmin.
LonaTrace lona_schedule(int n, int enumeration_cap = kDefaultEnumerationCap);

// Adaptive bound before the confirmation extension.
int lona_search_bound(const std::vector<int>& prefix);

}  // namespace freqest
