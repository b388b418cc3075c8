#pragma once

#include <vector>

#include "freqest/model.hpp"

namespace freqest {

// Unnormalized posterior sampled on a uniform midpoint grid over (0, omega0),
// omega_j = (j + 1/2) omega0 / G. Supports arbitrary real evolution times;
// moments are midpoint-rule quadrature, accurate to O(G^-2).
class GridPosterior {
  public:
    static GridPosterior flat_prior(int grid_size);

    // Multiplies every cell by p(outcome | t, omega_j). Throws on t < 0.
    GridPosterior updated(double t, Outcome outcome) const;

    // Midpoint-rule integral sum(values) * omega0 / G.
    double total_mass() const;

    // Quadrature moments of the normalized grid function. Throws on zero mass.
    Moments moments() const;

    int grid_size() const { return static_cast<int>(values_.size()); }
    double omega_at(int j) const {
        return (j + 0.5) * kOmega0 / static_cast<double>(values_.size());
    }
    const std::vector<double>& values() const { return values_; }

  private:
    explicit GridPosterior(std::vector<double> values) : values_(std::move(values)) {}

    std::vector<double> values_;
};

}  // namespace freqest
