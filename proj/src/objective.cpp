#include "freqest/objective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "freqest/fourier.hpp"
#include "freqest/grid.hpp"
#include "freqest/rng.hpp"

namespace freqest {

namespace {

// Compensated accumulator for sums of many small positive terms.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

constexpr double kPriorVariance = kOmega0 * kOmega0 / 12.0;

void check_schedule(const Schedule& s, int cap) {
    if (static_cast<int>(s.size()) > cap)
        throw cap_exceeded_error("schedule length exceeds enumeration cap");
    for (double t : s)
        if (t < 0.0) throw std::domain_error("evolution times must be non-negative");
}

std::vector<int> integer_times(const Schedule& s) {
    if (!is_integer_schedule(s))
        throw std::invalid_argument("fourier engine requires a positive integer schedule");
    std::vector<int> m;
    m.reserve(s.size());
    for (double t : s) m.push_back(static_cast<int>(std::lround(t)));
    return m;
}

void fourier_branches(const FourierPosterior& p, const std::vector<int>& m,
                      std::size_t depth, KahanSum& acc) {
    if (depth == m.size()) {
        const double mass = p.total_mass();
        if (mass > 0.0) acc.add(mass * p.moments().variance);
        return;
    }
    fourier_branches(p.updated(m[depth], Outcome::Plus), m, depth + 1, acc);
    fourier_branches(p.updated(m[depth], Outcome::Minus), m, depth + 1, acc);
}

// Grid traversal with preallocated per-depth buffers and per-time likelihood
// tables; leaf moments are accumulated in the final multiply pass, so leaves
// are never materialized.
class GridTreeEvaluator {
  public:
    GridTreeEvaluator(const Schedule& s, int grid_size)
        : n_(s.size()), g_(grid_size), like_plus_(n_), levels_(n_ > 0 ? n_ : 1) {
        for (std::size_t d = 0; d < n_; ++d) {
            like_plus_[d].resize(g_);
            const double phase = std::numbers::pi * s[d] / (2.0 * kOmega0);
            for (int j = 0; j < g_; ++j) {
                const double sn = std::sin(phase * omega(j));
                like_plus_[d][j] = sn * sn;
            }
        }
        for (auto& lvl : levels_) lvl.resize(g_);
        for (int j = 0; j < g_; ++j) levels_[0][j] = 1.0 / kOmega0;
    }

    double expected_variance() {
        if (n_ == 0) return kPriorVariance;
        descend(0);
        return acc_.sum;
    }

  private:
    double omega(int j) const { return (j + 0.5) * kOmega0 / g_; }

    void descend(std::size_t depth) {
        for (Outcome o : {Outcome::Plus, Outcome::Minus}) {
            if (depth == n_ - 1)
                accumulate_leaf(depth, o);
            else {
                apply(depth, o);
                descend(depth + 1);
            }
        }
    }

    void apply(std::size_t depth, Outcome o) {
        const double* src = levels_[depth].data();
        const double* lp = like_plus_[depth].data();
        double* dst = levels_[depth + 1].data();
        if (o == Outcome::Plus)
            for (int j = 0; j < g_; ++j) dst[j] = src[j] * lp[j];
        else
            for (int j = 0; j < g_; ++j) dst[j] = src[j] * (1.0 - lp[j]);
    }

    void accumulate_leaf(std::size_t depth, Outcome o) {
        const double* src = levels_[depth].data();
        const double* lp = like_plus_[depth].data();
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        const double dw = kOmega0 / g_;
        for (int j = 0; j < g_; ++j) {
            const double v = src[j] * (o == Outcome::Plus ? lp[j] : 1.0 - lp[j]);
            const double w = (j + 0.5) * dw;
            s0 += v;
            s1 += v * w;
            s2 += v * w * w;
        }
        if (s0 <= 0.0) return;  // zero-mass branch contributes nothing
        const double mean = s1 / s0;
        const double var = s2 / s0 - mean * mean;
        acc_.add(s0 * dw * var);
    }

    std::size_t n_;
    int g_;
    std::vector<std::vector<double>> like_plus_;
    std::vector<std::vector<double>> levels_;
    KahanSum acc_;
};

}  // namespace

ObjectiveReport expected_variance_exact(const Schedule& s, Engine engine, int grid_size,
                                        int enumeration_cap) {
    check_schedule(s, enumeration_cap);
    ObjectiveReport report;
    report.branch_count = std::int64_t{1} << s.size();

    if (s.empty()) {
        report.expected_variance = kPriorVariance;
        report.method = engine == Engine::Fourier ? "exact-fourier" : "exact-grid";
        return report;
    }

    if (engine == Engine::Fourier) {
        const auto m = integer_times(s);
        KahanSum acc;
        fourier_branches(FourierPosterior::flat_prior(), m, 0, acc);
        report.expected_variance = acc.sum;
        report.method = "exact-fourier";
    } else {
        if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
        GridTreeEvaluator evaluator(s, grid_size);
        report.expected_variance = evaluator.expected_variance();
        report.method = "exact-grid";
    }
    return report;
}

ObjectiveReport expected_variance_mc(const Schedule& s, int samples, std::uint64_t seed,
                                     int grid_size) {
    if (samples < 100) throw std::invalid_argument("monte-carlo requires samples >= 100");
    for (double t : s)
        if (t < 0.0) throw std::domain_error("evolution times must be non-negative");

    const bool integer = !s.empty() && is_integer_schedule(s);
    std::vector<int> m;
    if (integer) m = integer_times(s);

    double mean = 0.0, m2 = 0.0;  // Welford
    for (int i = 0; i < samples; ++i) {
        RngStream stream = derive_stream(seed, static_cast<std::uint64_t>(i));
        const double omega = stream.uniform(0.0, kOmega0);

        double variance;
        if (s.empty()) {
            variance = kPriorVariance;
        } else if (integer) {
            FourierPosterior p = FourierPosterior::flat_prior();
            for (std::size_t k = 0; k < s.size(); ++k) {
                const bool plus =
                    stream.uniform01() < outcome_probability(s[k], omega, Outcome::Plus);
                p = p.updated(m[k], plus ? Outcome::Plus : Outcome::Minus);
            }
            variance = p.moments().variance;
        } else {
            GridPosterior p = GridPosterior::flat_prior(grid_size);
            for (double t : s) {
                const bool plus =
                    stream.uniform01() < outcome_probability(t, omega, Outcome::Plus);
                p = p.updated(t, plus ? Outcome::Plus : Outcome::Minus);
            }
            variance = p.moments().variance;
        }

        const double delta = variance - mean;
        mean += delta / (i + 1);
        m2 += delta * (variance - mean);
    }

    ObjectiveReport report;
    report.expected_variance = mean;
    report.branch_count = samples;
    report.method = "monte-carlo";
    report.stderr_value = samples > 1 ? std::sqrt(m2 / (samples - 1.0) / samples) : 0.0;
    return report;
}

}  // namespace freqest
