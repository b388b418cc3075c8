#include "freqest/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace freqest {

GridPosterior GridPosterior::flat_prior(int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
    return GridPosterior(std::vector<double>(grid_size, 1.0 / kOmega0));
}

GridPosterior GridPosterior::updated(double t, Outcome outcome) const {
    if (t < 0.0) throw std::domain_error("evolution time must be non-negative");
    const int g = grid_size();
    std::vector<double> out(values_);
    const double phase = std::numbers::pi * t / (2.0 * kOmega0);
    for (int j = 0; j < g; ++j) {
        const double s = std::sin(phase * omega_at(j));
        const double p_plus = s * s;
        out[j] *= (outcome == Outcome::Plus) ? p_plus : 1.0 - p_plus;
    }
    return GridPosterior(std::move(out));
}

double GridPosterior::total_mass() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum * kOmega0 / grid_size();
}

Moments GridPosterior::moments() const {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    const int g = grid_size();
    for (int j = 0; j < g; ++j) {
        const double w = omega_at(j);
        const double v = values_[j];
        s0 += v;
        s1 += v * w;
        s2 += v * w * w;
    }
    if (!(s0 > 0.0)) throw std::domain_error("zero-mass posterior has no moments");
    Moments mom;
    mom.mean = s1 / s0;
    mom.second_moment = s2 / s0;
    mom.variance = mom.second_moment - mom.mean * mom.mean;
    return mom;
}

}  // namespace freqest
