#pragma once

#include <stdexcept>
#include <vector>

namespace freqest {

// Internal units: omega0 = 1 and dt = 1 (dimensionless). The likelihood
// depends only on the ratio t*omega/omega0, so nothing is lost; variances
// are reported in units of omega0^2.
inline constexpr double kOmega0 = 1.0;

enum class Outcome { Plus, Minus };

// Frequency in [0, kOmega0].
using Frequency = double;

// Absolute per-measurement evolution times, in units of dt.
using Schedule = std::vector<double>;

// PSO search coordinate: dts[0] = t1, dts[k] = t_{k+1} - t_k.
using DtVector = std::vector<double>;

struct Moments {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
};

// P(+|omega) = sin^2(pi t omega / 2 omega0), P(-|omega) = cos^2 of the same.
double outcome_probability(double t, Frequency omega, Outcome outcome);

// Cumulative sum; accepts infeasible vectors (negative entries).
Schedule dt_to_times(const DtVector& d);

// Exact inverse of dt_to_times. Throws on an empty schedule.
DtVector times_to_dt(const Schedule& s);

// Feasible iff every increment is >= 0 (ascending times; duplicates allowed).
bool is_feasible(const DtVector& d);

// True when every time is a positive integer (within tol).
bool is_integer_schedule(const Schedule& s, double tol = 1e-9);

// Thrown when a request exceeds the configured enumeration cap.
struct cap_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace freqest
