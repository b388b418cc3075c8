#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "freqest/model.hpp"
#include "freqest/rng.hpp"

namespace freqest {

// chi = 2 / |2 - phi - sqrt(phi^2 - 4 phi)| with phi = c1 + c2.
// Throws std::domain_error when phi <= 4.
double constriction_factor(double c1, double c2);

enum class InitMode { Range, AroundSchedule };

struct PsoConfig {
    int swarm_size = 16;
    double c1 = 2.05;
    double c2 = 2.05;
    double v_max = 2.0;
    double penalty = 10.0 * kOmega0 * kOmega0;
    InitMode init = InitMode::Range;
    double dt1_max = 1.5;              // range init: dt1 in (0, dt1_max)
    double dti_max = 2.0;              // range init: dt_i in (0, dti_max)
    Schedule base;                     // around-schedule init centre (times)
    double radius = 0.5;               // around-schedule perturbation
    double init_velocity_min = -1.0;
    double init_velocity_max = 1.0;
    int iterations = 200;
    std::uint64_t seed = 0;
    bool per_dimension_r = false;      // draw r1, r2 per dimension instead of per particle
};

struct Particle {
    DtVector position;
    DtVector velocity;
    DtVector best_position;
    double best_value = 0.0;
    double value = 0.0;
};

struct SwarmTrace {
    std::vector<double> best_value;   // global best objective per iteration
    std::vector<double> mean_value;   // swarm-average objective per iteration
    std::vector<double> spread;       // RMS distance to the swarm centroid
};

struct Swarm {
    std::vector<Particle> particles;
    std::vector<RngStream> streams;   // one independent stream per particle
    DtVector global_best_position;
    double global_best_value = 0.0;
    bool global_best_feasible = false;
};

using ScheduleObjective = std::function<double(const Schedule&)>;
using DtObjective = std::function<double(const DtVector&)>;

// Barrier: any negative increment returns `penalty` without evaluating base.
double penalized_objective(const DtVector& d, const ScheduleObjective& base,
                           double penalty);

Swarm init_swarm(const PsoConfig& cfg, int dim, const DtObjective& objective);

// One constriction-factor velocity/position update of every particle, using
// the global best from before the step; bests updated in particle index order.
void step_swarm(Swarm& swarm, const PsoConfig& cfg, const DtObjective& objective);

struct PsoResult {
    Schedule best_schedule;   // ascending times of the global best
    double best_value = 0.0;
    SwarmTrace trace;
};

PsoResult optimize(const PsoConfig& cfg, int dim, const ScheduleObjective& objective);

}  // namespace freqest
