#include "freqest/lona.hpp"

#include <algorithm>
#include <stdexcept>

namespace freqest {

namespace {

double step_objective(const std::vector<int>& prefix, int m, int cap) {
    Schedule s(prefix.begin(), prefix.end());
    s.push_back(m);
    return expected_variance_exact(s, Engine::Fourier, kDefaultGridSize, cap)
        .expected_variance;
}

}  // namespace

std::pair<int, double> best_next_time(const std::vector<int>& prefix, int m_max,
                                      int enumeration_cap) {
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    if (static_cast<int>(prefix.size()) + 1 > enumeration_cap)
        throw cap_exceeded_error("prefix length + 1 exceeds enumeration cap");

    int best_m = 1;
    double best_ev = step_objective(prefix, 1, enumeration_cap);
    for (int m = 2; m <= m_max; ++m) {
        const double ev = step_objective(prefix, m, enumeration_cap);
        if (ev < best_ev) {
            best_ev = ev;
            best_m = m;
        }
    }
    return {best_m, best_ev};
}

int lona_search_bound(const std::vector<int>& prefix) {
    const int max_prev =
        prefix.empty() ? 0 : *std::max_element(prefix.begin(), prefix.end());
    return std::max(8, 2 * max_prev);
}

LonaTrace lona_schedule(int n, int enumeration_cap) {
    if (n < 1) throw std::invalid_argument("N must be >= 1");
    if (n > enumeration_cap) throw cap_exceeded_error("N exceeds enumeration cap");

    LonaTrace trace;
    for (int step = 0; step < n; ++step) {
        const int bound = lona_search_bound(trace.schedule);
        const int extended = bound + (bound + 1) / 2;
        auto [m, ev] = best_next_time(trace.schedule, bound, enumeration_cap);
        // Confirmation pass against a bound-induced wrong minimum.
        auto [m_ext, ev_ext] = best_next_time(trace.schedule, extended, enumeration_cap);
        if (ev_ext < ev) {
            m = m_ext;
            ev = ev_ext;
        }
        trace.schedule.push_back(m);
        trace.per_step_ev.push_back(ev);
        trace.search_bound_used.push_back(extended);
    }
    // E[V] depends only on the multiset of times; report the canonical
    // ascending representative.
    std::sort(trace.schedule.begin(), trace.schedule.end());
    return trace;
}

}  // namespace freqest
