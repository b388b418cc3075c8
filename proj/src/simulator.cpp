#include "freqest/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "freqest/fourier.hpp"
#include "freqest/grid.hpp"

namespace freqest {

Outcome sample_outcome(double t, Frequency true_omega, RngStream& stream) {
    const double p_plus = outcome_probability(t, true_omega, Outcome::Plus);
    return stream.uniform01() < p_plus ? Outcome::Plus : Outcome::Minus;
}

namespace {

TrajectoryRecord run_with_stream(const Schedule& s, Frequency true_omega,
                                 RngStream& stream, int grid_size) {
    TrajectoryRecord rec;
    rec.true_omega = true_omega;
    rec.schedule = s;
    rec.outcomes.reserve(s.size());

    if (s.empty()) {
        rec.final_mean = kOmega0 / 2.0;
        rec.final_variance = kOmega0 * kOmega0 / 12.0;
    } else if (is_integer_schedule(s)) {
        FourierPosterior p = FourierPosterior::flat_prior();
        for (double t : s) {
            const Outcome o = sample_outcome(t, true_omega, stream);
            rec.outcomes.push_back(o);
            p = p.updated(static_cast<int>(std::lround(t)), o);
        }
        const Moments mom = p.moments();
        rec.final_mean = mom.mean;
        rec.final_variance = mom.variance;
    } else {
        GridPosterior p = GridPosterior::flat_prior(grid_size);
        for (double t : s) {
            const Outcome o = sample_outcome(t, true_omega, stream);
            rec.outcomes.push_back(o);
            p = p.updated(t, o);
        }
        const Moments mom = p.moments();
        rec.final_mean = mom.mean;
        rec.final_variance = mom.variance;
    }

    const double err = rec.final_mean - true_omega;
    rec.squared_error = err * err;
    return rec;
}

}  // namespace

TrajectoryRecord run_trajectory(const Schedule& s, Frequency true_omega,
                                std::uint64_t seed, int grid_size) {
    if (true_omega < 0.0 || true_omega > kOmega0)
        throw std::domain_error("omega outside [0, omega0]");
    RngStream stream(seed);
    return run_with_stream(s, true_omega, stream, grid_size);
}

BenchmarkResult benchmark_schedule(const Schedule& s, int trials, std::uint64_t seed,
                                   int grid_size) {
    if (trials < 100) throw std::invalid_argument("benchmark requires trials >= 100");

    double mse_sum = 0.0;
    double var_mean = 0.0, var_m2 = 0.0;  // Welford over posterior variances
    for (int i = 0; i < trials; ++i) {
        RngStream stream = derive_stream(seed, static_cast<std::uint64_t>(i));
        const double omega = stream.uniform(0.0, kOmega0);
        const TrajectoryRecord rec = run_with_stream(s, omega, stream, grid_size);

        mse_sum += rec.squared_error;
        const double delta = rec.final_variance - var_mean;
        var_mean += delta / (i + 1);
        var_m2 += delta * (rec.final_variance - var_mean);
    }

    BenchmarkResult res;
    res.trials = trials;
    res.mean_squared_error = mse_sum / trials;
    res.mean_posterior_variance = var_mean;
    res.stderr_value =
        trials > 1 ? std::sqrt(var_m2 / (trials - 1.0) / trials) : 0.0;
    return res;
}

}  // namespace freqest
