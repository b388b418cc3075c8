#include "freqest/pso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace freqest {

double constriction_factor(double c1, double c2) {
    const double phi = c1 + c2;
    if (phi <= 4.0)
        throw std::domain_error("constriction factor requires c1 + c2 > 4");
    return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

double penalized_objective(const DtVector& d, const ScheduleObjective& base,
                           double penalty) {
    if (!is_feasible(d)) return penalty;
    return base(dt_to_times(d));
}

namespace {

double swarm_spread(const std::vector<Particle>& particles) {
    if (particles.empty()) return 0.0;
    const std::size_t dim = particles.front().position.size();
    DtVector centroid(dim, 0.0);
    for (const auto& p : particles)
        for (std::size_t k = 0; k < dim; ++k) centroid[k] += p.position[k];
    for (auto& c : centroid) c /= static_cast<double>(particles.size());
    double acc = 0.0;
    for (const auto& p : particles) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double diff = p.position[k] - centroid[k];
            d2 += diff * diff;
        }
        acc += d2;
    }
    return std::sqrt(acc / static_cast<double>(particles.size()));
}

void refresh_global_best(Swarm& swarm) {
    for (const auto& p : swarm.particles) {
        const bool pf = is_feasible(p.best_position);
        const bool take =
            swarm.global_best_position.empty() ||
            (pf && !swarm.global_best_feasible) ||
            (pf == swarm.global_best_feasible && p.best_value < swarm.global_best_value);
        if (take) {
            swarm.global_best_value = p.best_value;
            swarm.global_best_position = p.best_position;
            swarm.global_best_feasible = pf;
        }
    }
}

}  // namespace

Swarm init_swarm(const PsoConfig& cfg, int dim, const DtObjective& objective) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (cfg.swarm_size < 1) throw std::invalid_argument("swarm size must be >= 1");
    if (cfg.init == InitMode::AroundSchedule &&
        static_cast<int>(cfg.base.size()) != dim)
        throw std::invalid_argument("around-schedule base length must equal dim");

    Swarm swarm;
    swarm.particles.resize(cfg.swarm_size);
    swarm.streams.reserve(cfg.swarm_size);
    for (int i = 0; i < cfg.swarm_size; ++i)
        swarm.streams.push_back(derive_stream(cfg.seed, static_cast<std::uint64_t>(i)));

    for (int i = 0; i < cfg.swarm_size; ++i) {
        Particle& p = swarm.particles[i];
        RngStream& rng = swarm.streams[i];
        p.position.resize(dim);
        p.velocity.resize(dim);

        if (cfg.init == InitMode::Range) {
            for (int k = 0; k < dim; ++k)
                p.position[k] = rng.uniform(0.0, k == 0 ? cfg.dt1_max : cfg.dti_max);
        } else {
            // Perturb the base times by +-radius; a running max clamps any
            // descending pair so every increment is >= 0 while each time stays
            // within the radius of its base entry.
            Schedule times(dim);
            double floor_time = 0.0;
            for (int k = 0; k < dim; ++k) {
                floor_time =
                    std::max(floor_time, cfg.base[k] + rng.uniform(-cfg.radius, cfg.radius));
                times[k] = floor_time;
            }
            p.position = times_to_dt(times);
        }
        for (int k = 0; k < dim; ++k)
            p.velocity[k] = rng.uniform(cfg.init_velocity_min, cfg.init_velocity_max);

        p.value = objective(p.position);
        p.best_position = p.position;
        p.best_value = p.value;
    }
    refresh_global_best(swarm);
    return swarm;
}

void step_swarm(Swarm& swarm, const PsoConfig& cfg, const DtObjective& objective) {
    const double chi = constriction_factor(cfg.c1, cfg.c2);
    const DtVector global_best = swarm.global_best_position;  // pre-step best

    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
        Particle& p = swarm.particles[i];
        RngStream& rng = swarm.streams[i];
        const std::size_t dim = p.position.size();

        double r1 = rng.uniform01();
        double r2 = rng.uniform01();
        for (std::size_t k = 0; k < dim; ++k) {
            if (cfg.per_dimension_r && k > 0) {
                r1 = rng.uniform01();
                r2 = rng.uniform01();
            }
            double v = chi * (p.velocity[k] +
                              r1 * cfg.c1 * (p.best_position[k] - p.position[k]) +
                              r2 * cfg.c2 * (global_best[k] - p.position[k]));
            v = std::clamp(v, -cfg.v_max, cfg.v_max);
            p.velocity[k] = v;
            p.position[k] += v;
        }

        p.value = objective(p.position);
        const bool feasible = is_feasible(p.position);
        const bool best_feasible = is_feasible(p.best_position);
        // A feasible point always displaces an infeasible personal best.
        if ((feasible && !best_feasible) ||
            (feasible == best_feasible && p.value < p.best_value)) {
            p.best_value = p.value;
            p.best_position = p.position;
        }
    }
    refresh_global_best(swarm);
}

PsoResult optimize(const PsoConfig& cfg, int dim, const ScheduleObjective& objective) {
    if (cfg.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (!(cfg.penalty > kOmega0 * kOmega0 / 12.0))
        throw std::invalid_argument("penalty must exceed the prior variance");

    const DtObjective penalized = [&](const DtVector& d) {
        return penalized_objective(d, objective, cfg.penalty);
    };

    Swarm swarm = init_swarm(cfg, dim, penalized);
    PsoResult result;
    for (int it = 0; it < cfg.iterations; ++it) {
        step_swarm(swarm, cfg, penalized);
        double mean = 0.0;
        for (const auto& p : swarm.particles) mean += p.value;
        mean /= static_cast<double>(swarm.particles.size());
        result.trace.best_value.push_back(swarm.global_best_value);
        result.trace.mean_value.push_back(mean);
        result.trace.spread.push_back(swarm_spread(swarm.particles));
    }

    if (!swarm.global_best_feasible)
        throw std::runtime_error("no feasible point found during optimization");
    result.best_schedule = dt_to_times(swarm.global_best_position);
    result.best_value = swarm.global_best_value;
    return result;
}

}  // namespace freqest
