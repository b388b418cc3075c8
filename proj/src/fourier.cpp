#include "freqest/fourier.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace freqest {

FourierPosterior FourierPosterior::flat_prior() {
    return FourierPosterior({1.0 / kOmega0}, 0);
}

FourierPosterior FourierPosterior::updated(int m, Outcome outcome) const {
    if (m < 1) throw std::invalid_argument("evolution time must be a positive integer");

    // Work in the symmetric (complex-exponential) convention b(q), where
    // b(0) = a(0), b(q) = a(q)/2 and b(-q) = b(q). Multiplying by
    // (1 -/+ cos(m pi omega/omega0))/2 is then a clean shift:
    //   b'(p) = b(p)/2 -/+ (b(p-m) + b(p+m))/4.
    const int old_band = bandwidth();
    const int new_band = old_band + m;
    const double sign = (outcome == Outcome::Plus) ? -1.0 : 1.0;

    auto b = [&](int q) -> double {
        q = std::abs(q);
        if (q > old_band) return 0.0;
        return q == 0 ? coeffs_[0] : 0.5 * coeffs_[q];
    };

    std::vector<double> out(static_cast<std::size_t>(new_band) + 1);
    for (int p = 0; p <= new_band; ++p) {
        const double bp = 0.5 * b(p) + sign * 0.25 * (b(p - m) + b(p + m));
        out[p] = (p == 0) ? bp : 2.0 * bp;
    }
    return FourierPosterior(std::move(out), measurement_count_ + 1);
}

double FourierPosterior::evaluate_at(Frequency omega) const {
    if (omega < 0.0 || omega > kOmega0)
        throw std::domain_error("omega outside [0, omega0]");
    const double x = std::numbers::pi * omega / kOmega0;
    double sum = coeffs_[0];
    for (int q = 1; q <= bandwidth(); ++q) sum += coeffs_[q] * std::cos(q * x);
    return sum;
}

double FourierPosterior::total_mass() const { return kOmega0 * coeffs_[0]; }

Moments FourierPosterior::moments() const {
    // From direct integration of the series over (0, omega0):
    //   <w>   = w0/2 + sum_q a(q) w0 ((-1)^q - 1) / (a0 (q pi)^2)
    //   <w^2> = w0^2/3 + sum_q 2 a(q) w0^2 (-1)^q / (a0 (q pi)^2)
    // (note the factor 2 on the second-moment sum, and that the mean sum
    // vanishes for even q).
    const double a0 = coeffs_[0];
    if (!(total_mass() > 0.0)) throw std::domain_error("total mass must be positive");

    double mean_sum = 0.0;
    double second_sum = 0.0;
    for (int q = 1; q <= bandwidth(); ++q) {
        const double inv_q2 = 1.0 / ((q * std::numbers::pi) * (q * std::numbers::pi));
        const bool odd = (q % 2) != 0;
        if (odd) mean_sum += coeffs_[q] * (-2.0) * inv_q2;
        second_sum += coeffs_[q] * 2.0 * (odd ? -1.0 : 1.0) * inv_q2;
    }
    Moments mom;
    mom.mean = kOmega0 / 2.0 + kOmega0 * mean_sum / a0;
    mom.second_moment = kOmega0 * kOmega0 / 3.0 + kOmega0 * kOmega0 * second_sum / a0;
    mom.variance = mom.second_moment - mom.mean * mom.mean;
    return mom;
}

}  // namespace freqest
