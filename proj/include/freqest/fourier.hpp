#pragma once

#include <vector>

#include "freqest/model.hpp"

namespace freqest {

// Exact unnormalized posterior over omega for integer-time schedules, stored
// as a finite cosine series
//
//     U(omega) = sum_{q=0}^{M} a(q) cos(q pi omega / omega0).
//
// The constant term absorbs the conventional 1/2: a(0) = c(0)/2 and
// a(q) = c(q) for q >= 1 in the half-coefficient convention. The flat prior
// is folded in, so total_mass() is the marginal probability of the outcome
// string applied so far.
class FourierPosterior {
  public:
    // U(omega) = 1/omega0, M = 0, k = 0.
    static FourierPosterior flat_prior();

    // Multiplies in one likelihood factor p(outcome | omega) for an integer
    // evolution time m >= 1. Bandwidth grows by exactly m.
    FourierPosterior updated(int m, Outcome outcome) const;

    double evaluate_at(Frequency omega) const;

    // Integral over (0, omega0); equals omega0 * a(0).
    double total_mass() const;

    // Moments of the normalized distribution. Throws when total_mass() <= 0.
    Moments moments() const;

    const std::vector<double>& coeffs() const { return coeffs_; }
    int bandwidth() const { return static_cast<int>(coeffs_.size()) - 1; }
    int measurement_count() const { return measurement_count_; }

  private:
    FourierPosterior(std::vector<double> coeffs, int measurement_count)
        : coeffs_(std::move(coeffs)), measurement_count_(measurement_count) {}

    std::vector<double> coeffs_;
    int measurement_count_ = 0;
};

}  // namespace freqest
