#include "freqest/model.hpp"

#include <cmath>
#include <numbers>

namespace freqest {

double outcome_probability(double t, Frequency omega, Outcome outcome) {
    if (t < 0.0) throw std::domain_error("evolution time must be non-negative");
    if (omega < 0.0 || omega > kOmega0)
        throw std::domain_error("omega outside [0, omega0]");
    const double s = std::sin(std::numbers::pi * t * omega / (2.0 * kOmega0));
    const double p_plus = s * s;
    return outcome == Outcome::Plus ? p_plus : 1.0 - p_plus;
}

Schedule dt_to_times(const DtVector& d) {
    Schedule times;
    times.reserve(d.size());
    double acc = 0.0;
    for (double dt : d) {
        acc += dt;
        times.push_back(acc);
    }
    return times;
}

DtVector times_to_dt(const Schedule& s) {
    if (s.empty()) throw std::invalid_argument("schedule must be nonempty");
    DtVector d;
    d.reserve(s.size());
    double prev = 0.0;
    for (double t : s) {
        d.push_back(t - prev);
        prev = t;
    }
    return d;
}

bool is_feasible(const DtVector& d) {
    for (double dt : d)
        if (dt < 0.0) return false;
    return true;
}

bool is_integer_schedule(const Schedule& s, double tol) {
    for (double t : s) {
        const double r = std::round(t);
        if (r < 1.0 || std::abs(t - r) > tol) return false;
    }
    return true;
}

}  // namespace freqest
