// Acceptance suite: one pass/fail line per criterion. Exercises the CLI
// binary (path given as argv[1]) where a criterion names a command, and the
// library elsewhere. Exit code is the number of failed gating criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "freqest/fourier.hpp"
#include "freqest/grid.hpp"
#include "freqest/lona.hpp"
#include "freqest/objective.hpp"
#include "freqest/pso.hpp"
#include "freqest/rng.hpp"
#include "freqest/simulator.hpp"

using nlohmann::json;
using namespace freqest;

namespace {

std::string g_cli;

const std::vector<int> kLona5{1, 1, 1, 2, 3};
const std::vector<int> kLona10{1, 1, 1, 1, 1, 2, 2, 3, 4, 6};
const Schedule kPso5{1.060, 1.082, 1.419, 2.138, 2.870};
const Schedule kPso10{1.071, 1.107, 1.161, 1.180, 1.200,
                      2.041, 2.152, 3.070, 3.970, 4.906};

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, {}};
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double ev_grid(const Schedule& s) {
    return expected_variance_exact(s, Engine::Grid, 10000).expected_variance;
}

double ev_fourier(const Schedule& s) {
    return expected_variance_exact(s, Engine::Fourier).expected_variance;
}

struct Criterion {
    std::string name;
    bool gating;
    std::function<bool(std::string&)> check;
};

bool check_lona_golden(int n, const std::vector<int>& expected, double budget_s,
                       std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const CliResult res = run_cli("lona --n " + std::to_string(n) + " --format json");
    const double elapsed = seconds_since(t0);
    if (res.exit_code != 0) {
        detail = "cli exit code " + std::to_string(res.exit_code);
        return false;
    }
    const json out = json::parse(res.output);
    const auto got = out.at("schedule").get<std::vector<int>>();
    std::ostringstream oss;
    oss << "schedule [";
    for (std::size_t i = 0; i < got.size(); ++i) oss << (i ? "," : "") << got[i];
    oss << "] in " << elapsed << " s";
    detail = oss.str();
    return got == expected && elapsed < budget_s;
}

bool check_engine_agreement(std::string& detail) {
    double worst = 0.0;
    Schedule prefix;
    for (int m : kLona10) {
        prefix.push_back(m);
        worst = std::max(worst, std::abs(ev_fourier(prefix) - ev_grid(prefix)));
    }
    detail = "max |EV_fourier - EV_grid| = " + std::to_string(worst);
    return worst <= 1e-6;
}

bool check_pso_beats_lona(std::string& detail) {
    const double l5 = ev_grid(Schedule(kLona5.begin(), kLona5.end()));
    const double p5 = ev_grid(kPso5);
    const double l10 = ev_grid(Schedule(kLona10.begin(), kLona10.end()));
    const double p10 = ev_grid(kPso10);
    std::ostringstream oss;
    oss << "N=5: " << p5 << " vs " << l5 << "; N=10: " << p10 << " vs " << l10;
    detail = oss.str();
    return p5 < l5 && p10 < l10;
}

bool pso_reaches(int n, const std::vector<int>& lona, const Schedule& table,
                 double radius, double& best_seen, double& worst_run_s) {
    const double target = ev_grid(table) + 1e-4;
    const ScheduleObjective objective = [](const Schedule& s) { return ev_grid(s); };
    const DtObjective penalized = [&](const DtVector& d) {
        return penalized_objective(d, objective, 10.0 * kOmega0 * kOmega0);
    };

    best_seen = 1e300;
    worst_run_s = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PsoConfig cfg;
        cfg.init = InitMode::AroundSchedule;
        cfg.base.assign(lona.begin(), lona.end());
        cfg.radius = radius;
        cfg.seed = seed;

        const auto t0 = std::chrono::steady_clock::now();
        Swarm swarm = init_swarm(cfg, n, penalized);
        bool reached = swarm.global_best_feasible && swarm.global_best_value <= target;
        for (int it = 0; it < cfg.iterations && !reached; ++it) {
            step_swarm(swarm, cfg, penalized);
            reached = swarm.global_best_feasible && swarm.global_best_value <= target;
        }
        worst_run_s = std::max(worst_run_s, seconds_since(t0));
        best_seen = std::min(best_seen, swarm.global_best_value);
        if (reached && worst_run_s < 300.0) return true;
    }
    return false;
}

bool check_pso_reproduction(std::string& detail) {
    double best5, best10, t5, t10;
    const bool ok5 = pso_reaches(5, kLona5, kPso5, 0.5, best5, t5);
    const bool ok10 = pso_reaches(10, kLona10, kPso10, 0.1, best10, t10);
    std::ostringstream oss;
    oss << "N=5 best " << best5 << " (target " << ev_grid(kPso5) + 1e-4 << ", "
        << t5 << " s); N=10 best " << best10 << " (target " << ev_grid(kPso10) + 1e-4
        << ", " << t10 << " s)";
    detail = oss.str();
    return ok5 && ok10;
}

bool check_property_suite(std::string& detail) {
    RngStream rng(2024);
    std::ostringstream fail;

    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 8);
        Schedule s;
        for (int k = 0; k < n; ++k)
            s.push_back(1 + static_cast<int>(rng.uniform01() * 4));
        std::vector<int> m(s.begin(), s.end());

        // exhaustive outcome-tree checks
        double mass_f = 0.0, mean_f = 0.0, mass_g = 0.0;
        GridPosterior grid_root = GridPosterior::flat_prior(10000);
        for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
            auto p = FourierPosterior::flat_prior();
            for (int k = 0; k < n; ++k)
                p = p.updated(m[k], (bits >> k) & 1 ? Outcome::Plus : Outcome::Minus);
            mass_f += p.total_mass();
            if (p.total_mass() > 0) mean_f += p.total_mass() * p.moments().mean;
        }
        if (std::abs(mass_f - 1.0) > 1e-14) fail << "mass sum fourier; ";
        if (std::abs(mean_f - kOmega0 / 2) > 1e-9) fail << "total expectation; ";

        const double ev = ev_fourier(s);
        if (ev > kOmega0 * kOmega0 / 12 + 1e-12) fail << "EV above prior variance; ";

        // permutation invariance
        Schedule perm = s;
        for (int p = 0; p < 20; ++p) {
            for (std::size_t k = perm.size(); k > 1; --k)
                std::swap(perm[k - 1], perm[static_cast<std::size_t>(rng.uniform01() * k)]);
            if (std::abs(ev_fourier(perm) - ev) > 1e-12) fail << "permutation; ";
        }
        if (trial >= 10) continue;  // heavier grid checks on a subset

        // grid mass sum over the tree equals 1
        std::function<double(const GridPosterior&, int)> mass_rec =
            [&](const GridPosterior& g, int depth) -> double {
            if (depth == n) return g.total_mass();
            return mass_rec(g.updated(s[depth], Outcome::Plus), depth + 1) +
                   mass_rec(g.updated(s[depth], Outcome::Minus), depth + 1);
        };
        if (std::abs(mass_rec(GridPosterior::flat_prior(2000), 0) - 1.0) > 1e-9)
            fail << "mass sum grid; ";

        // pointwise fourier vs grid and moments vs quadrature
        auto f = FourierPosterior::flat_prior();
        auto g = GridPosterior::flat_prior(10000);
        for (int k = 0; k < n; ++k) {
            const Outcome o = rng.uniform01() < 0.5 ? Outcome::Plus : Outcome::Minus;
            f = f.updated(m[k], o);
            g = g.updated(s[k], o);
        }
        double scale = 0.0;
        for (double v : g.values()) scale = std::max(scale, v);
        if (scale > 0.0 && f.total_mass() > 1e-12) {
            for (int j = 0; j < g.grid_size(); j += 53)
                if (std::abs(g.values()[j] - f.evaluate_at(g.omega_at(j))) >
                    1e-12 * scale)
                    fail << "pointwise; ";
            const auto fm = f.moments();
            const auto gm = g.moments();
            if (std::abs(fm.mean - gm.mean) > 1e-6 ||
                std::abs(fm.variance - gm.variance) > 1e-6)
                fail << "moments vs quadrature; ";
        }
    }
    detail = fail.str().empty() ? "all properties hold" : fail.str();
    return fail.str().empty();
}

bool check_mc_consistency(std::string& detail) {
    const auto lona8 = lona_schedule(8);
    const Schedule s(lona8.schedule.begin(), lona8.schedule.end());
    const double exact = ev_fourier(s);

    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto mc = expected_variance_mc(s, 2000, seed);
        const auto bench = benchmark_schedule(s, 2000, seed + 1000);
        const bool pass =
            std::abs(mc.expected_variance - exact) <= 3.0 * mc.stderr_value &&
            std::abs(bench.mean_posterior_variance - exact) <= 3.0 * bench.stderr_value;
        if (pass) ++ok;
    }
    detail = std::to_string(ok) + "/100 seeds within 3 stderr";
    return ok >= 95;
}

bool check_fig1_shape(std::string& detail) {
    const CliResult res = run_cli("figure-data --which fig1 --n 10 --format csv");
    if (res.exit_code != 0) {
        detail = "cli exit code " + std::to_string(res.exit_code);
        return false;
    }
    std::istringstream in(res.output);
    std::string line;
    std::vector<double> ev_lona;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("step,", 0) == 0) continue;
        std::stringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        std::getline(row, field, ',');
        ev_lona.push_back(std::stod(field));
    }
    bool decreasing = ev_lona.size() == 10;
    for (std::size_t i = 1; i < ev_lona.size(); ++i)
        decreasing = decreasing && ev_lona[i] < ev_lona[i - 1];
    detail = std::to_string(ev_lona.size()) + " rows, strictly decreasing: " +
             (decreasing ? "yes" : "no");
    return decreasing;
}

// Least-squares polynomial fit of log E[V] on steps [k_lo, k_hi], evaluated
// at step 60.
double extrapolate_log_ev(const std::vector<double>& per_step_ev, int k_lo, int k_hi,
                          int degree) {
    std::vector<std::vector<double>> a(degree + 1, std::vector<double>(degree + 2, 0.0));
    for (int k = k_lo; k <= k_hi; ++k) {
        const double y = std::log(per_step_ev[k - 1]);
        std::vector<double> powers(degree + 1, 1.0);
        for (int d = 1; d <= degree; ++d) powers[d] = powers[d - 1] * k;
        for (int r = 0; r <= degree; ++r) {
            for (int c = 0; c <= degree; ++c) a[r][c] += powers[r] * powers[c];
            a[r][degree + 1] += powers[r] * y;
        }
    }
    // gaussian elimination on the (degree+1) x (degree+2) normal system
    for (int col = 0; col <= degree; ++col) {
        int pivot = col;
        for (int r = col + 1; r <= degree; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        for (int r = 0; r <= degree; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= degree + 1; ++c) a[r][c] -= f * a[col][c];
        }
    }
    double log_ev = 0.0, power = 1.0;
    for (int d = 0; d <= degree; ++d) {
        log_ev += a[d][degree + 1] / a[d][d] * power;
        power *= 60.0;
    }
    return std::exp(log_ev);
}

bool check_linear_schedule_near_step_60(std::string& detail) {
    // LONA is not enumerable at N=60. The per-step decay ratio of its E[V]
    // drifts upward over the computable range, so a log-linear fit is an
    // optimistic lower bracket; a log-quadratic fit captures the drift and
    // serves as the extrapolated policy value.
    const auto lona = lona_schedule(14);
    const double lona_linear = extrapolate_log_ev(lona.per_step_ev, 8, 14, 1);
    const double lona_quadratic = extrapolate_log_ev(lona.per_step_ev, 8, 14, 2);

    Schedule linear;
    for (int k = 1; k <= 60; ++k) linear.push_back(k);
    const auto mc = expected_variance_mc(linear, 100000, 7);

    std::ostringstream oss;
    oss << "m_k=k MC " << mc.expected_variance << " +- " << mc.stderr_value
        << " vs LONA extrapolation " << lona_quadratic << " (log-quadratic; log-linear "
        << "bracket " << lona_linear << ")";
    detail = oss.str();
    return mc.expected_variance <= lona_quadratic + 3.0 * mc.stderr_value;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-freqest-cli>\n");
        return 64;
    }
    g_cli = argv[1];

    const std::vector<Criterion> criteria{
        {"1 LONA golden N=5 (< 1 s)", true,
         [](std::string& d) { return check_lona_golden(5, kLona5, 1.0, d); }},
        {"2 LONA golden N=10 (< 30 s)", true,
         [](std::string& d) { return check_lona_golden(10, kLona10, 30.0, d); }},
        {"3 Fourier/grid engine agreement <= 1e-6", true, check_engine_agreement},
        {"4 Table PSO schedules beat LONA (grid engine)", true, check_pso_beats_lona},
        {"5 PSO reproduction with paper hyperparameters", true, check_pso_reproduction},
        {"6 constriction_factor(2.05, 2.05) in [0.7290, 0.7299]", true,
         [](std::string& d) {
             const double chi = constriction_factor(2.05, 2.05);
             d = "chi = " + std::to_string(chi);
             return chi >= 0.7290 && chi <= 0.7299;
         }},
        {"7 property suite", true, check_property_suite},
        {"8 Monte-Carlo consistency (>= 95/100 seeds)", true, check_mc_consistency},
        {"9 Fig. 1 shape: LONA E[V] strictly decreasing", true, check_fig1_shape},
        {"10 stretch: m_k=k near step 60 (non-gating)", false,
         check_linear_schedule_near_step_60},
    };

    int failed_gating = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool pass = false;
        try {
            pass = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const char* tag = pass ? "PASS" : (c.gating ? "FAIL" : "INFO");
        std::printf("%s criterion %s — %s\n", tag, c.name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!pass && c.gating) ++failed_gating;
    }
    return failed_gating;
}
