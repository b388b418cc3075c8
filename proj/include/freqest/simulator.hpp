#pragma once

#include <cstdint>
#include <vector>

#include "freqest/model.hpp"
#include "freqest/objective.hpp"
#include "freqest/rng.hpp"

namespace freqest {

struct TrajectoryRecord {
    double true_omega = 0.0;
    Schedule schedule;
    std::vector<Outcome> outcomes;
    double final_mean = 0.0;
    double final_variance = 0.0;
    double squared_error = 0.0;
};

struct BenchmarkResult {
    double mean_squared_error = 0.0;
    double mean_posterior_variance = 0.0;
    double stderr_value = 0.0;   // standard error of mean_posterior_variance
    int trials = 0;
};

// Plus with probability sin^2(pi t omega / 2 omega0); consumes one draw.
Outcome sample_outcome(double t, Frequency true_omega, RngStream& stream);

// Simulates the outcome string for a known truth, runs the matching posterior
// engine (Fourier for integer schedules, grid otherwise) and summarizes it.
TrajectoryRecord run_trajectory(const Schedule& s, Frequency true_omega,
                                std::uint64_t seed, int grid_size = kDefaultGridSize);

// Averages trajectories over omega ~ Uniform(0, omega0), one derived RNG
// stream per trial.
BenchmarkResult benchmark_schedule(const Schedule& s, int trials, std::uint64_t seed,
                                   int grid_size = kDefaultGridSize);

}  // namespace freqest
