// freqest: schedule design and evaluation for single-qubit frequency
// estimation. Subcommands: lona, pso, eval, simulate, figure-data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freqest/lona.hpp"
#include "freqest/objective.hpp"
#include "freqest/pso.hpp"
#include "freqest/simulator.hpp"

using nlohmann::json;
using namespace freqest;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

const Schedule kTable1Pso{1.060, 1.082, 1.419, 2.138, 2.870};
const Schedule kTable2Pso{1.071, 1.107, 1.161, 1.180, 1.200,
                          2.041, 2.152, 3.070, 3.970, 4.906};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct Options {
    int n = 0;
    std::string engine = "auto";  // fourier | grid | auto
    int grid_size = kDefaultGridSize;
    int cap = kDefaultEnumerationCap;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    std::string config_path;

    // pso
    int swarm_size = 16;
    double c1 = 2.05;
    double c2 = 2.05;
    double vmax = 2.0;
    int iters = 200;
    std::string init = "range";
    double radius = 0.5;
    double penalty = 10.0 * kOmega0 * kOmega0;

    // eval / simulate
    std::string times_literal;
    std::string times_file;
    int mc_samples = 0;
    int trials = 10000;

    // figure-data
    std::string which;
};

Schedule parse_times(const std::string& literal) {
    Schedule s;
    std::stringstream ss(literal);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad time token: " + tok);
        s.push_back(v);
    }
    if (s.empty()) throw std::invalid_argument("empty schedule");
    return s;
}

Schedule load_times(const Options& opt) {
    if (!opt.times_literal.empty()) return parse_times(opt.times_literal);
    if (!opt.times_file.empty()) {
        std::ifstream in(opt.times_file);
        if (!in) throw std::invalid_argument("cannot open " + opt.times_file);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        for (auto& ch : text)
            if (ch == '\n' || ch == ' ' || ch == '\t') ch = ',';
        return parse_times(text);
    }
    throw std::invalid_argument("provide --times or --file");
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("cannot write " + opt.out);
    out << text;
}

json base_config(const Options& opt, const std::string& command) {
    return json{{"command", command},     {"seed", opt.seed},
                {"grid_size", opt.grid_size}, {"enumeration_cap", opt.cap},
                {"format", opt.format},   {"engine", opt.engine}};
}

json pso_config_json(const Options& opt) {
    return json{{"swarm_size", opt.swarm_size}, {"c1", opt.c1},
                {"c2", opt.c2},                 {"v_max", opt.vmax},
                {"iterations", opt.iters},      {"init", opt.init},
                {"radius", opt.radius},         {"penalty", opt.penalty}};
}

// Flags > config file > defaults. Applies JSON keys only where the flag was
// not given on the command line.
void apply_config_file(CLI::App* cmd, Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw std::invalid_argument("cannot open config " + opt.config_path);
    json cfg = json::parse(in);

    auto unset = [&](const std::string& flag) {
        const CLI::Option* o = cmd->get_option_no_throw(flag);
        return o != nullptr && o->count() == 0;
    };
    auto take = [&](const char* key, const std::string& flag, auto& field) {
        if (cfg.contains(key) && unset(flag)) cfg.at(key).get_to(field);
    };
    take("n", "--n", opt.n);
    take("engine", "--engine", opt.engine);
    take("grid_size", "--grid-size", opt.grid_size);
    take("enumeration_cap", "--cap", opt.cap);
    take("seed", "--seed", opt.seed);
    take("format", "--format", opt.format);
    take("swarm_size", "--swarm-size", opt.swarm_size);
    take("c1", "--c1", opt.c1);
    take("c2", "--c2", opt.c2);
    take("v_max", "--vmax", opt.vmax);
    take("iterations", "--iters", opt.iters);
    take("init", "--init", opt.init);
    take("radius", "--radius", opt.radius);
    take("penalty", "--penalty", opt.penalty);
    take("times", "--times", opt.times_literal);
    take("mc_samples", "--mc", opt.mc_samples);
    take("trials", "--trials", opt.trials);
}

std::string csv_header(const json& config) { return "# config: " + config.dump() + "\n"; }

int run_lona(const Options& opt) {
    if (opt.n < 1) throw CLI::ValidationError("--n must be >= 1");
    const LonaTrace trace = lona_schedule(opt.n, opt.cap);
    json config = base_config(opt, "lona");
    config["n"] = opt.n;

    if (opt.format == "json") {
        json out{{"config", config},
                 {"schedule", trace.schedule},
                 {"per_step_ev", trace.per_step_ev},
                 {"search_bounds", trace.search_bound_used}};
        write_output(opt, out.dump(2) + "\n");
    } else {
        std::string text = csv_header(config);
        text += "step,time,expected_variance\n";
        for (std::size_t i = 0; i < trace.schedule.size(); ++i)
            text += std::to_string(i + 1) + "," + std::to_string(trace.schedule[i]) +
                    "," + fmt17(trace.per_step_ev[i]) + "\n";
        write_output(opt, text);
    }
    return 0;
}

PsoConfig make_pso_config(const Options& opt, int n) {
    PsoConfig cfg;
    cfg.swarm_size = opt.swarm_size;
    cfg.c1 = opt.c1;
    cfg.c2 = opt.c2;
    cfg.v_max = opt.vmax;
    cfg.penalty = opt.penalty;
    cfg.iterations = opt.iters;
    cfg.seed = opt.seed;
    cfg.radius = opt.radius;
    if (opt.init == "around-lona") {
        cfg.init = InitMode::AroundSchedule;
        const auto lona = lona_schedule(n, opt.cap).schedule;
        cfg.base.assign(lona.begin(), lona.end());
    } else if (opt.init == "range") {
        cfg.init = InitMode::Range;
    } else {
        throw CLI::ValidationError("--init must be range or around-lona");
    }
    return cfg;
}

PsoResult run_pso_search(const Options& opt, const PsoConfig& cfg, int n) {
    const ScheduleObjective objective = [&](const Schedule& s) {
        return expected_variance_exact(s, Engine::Grid, opt.grid_size, opt.cap)
            .expected_variance;
    };
    return optimize(cfg, n, objective);
}

int run_pso(const Options& opt) {
    if (opt.n < 1) throw CLI::ValidationError("--n must be >= 1");
    if (opt.engine == "fourier")
        throw CLI::ValidationError("pso searches real times; only the grid engine applies");
    if (opt.c1 + opt.c2 <= 4.0)
        throw CLI::ValidationError("constriction undefined: c1 + c2 must exceed 4");

    const PsoConfig cfg = make_pso_config(opt, opt.n);
    const PsoResult result = run_pso_search(opt, cfg, opt.n);

    json config = base_config(opt, "pso");
    config["n"] = opt.n;
    config["pso"] = pso_config_json(opt);
    config["pso"]["chi"] = constriction_factor(opt.c1, opt.c2);

    if (opt.format == "json") {
        json out{{"config", config},
                 {"best_schedule", result.best_schedule},
                 {"best_ev", result.best_value},
                 {"trace",
                  {{"best_ev", result.trace.best_value},
                   {"mean_ev", result.trace.mean_value},
                   {"spread", result.trace.spread}}}};
        write_output(opt, out.dump(2) + "\n");
    } else {
        std::string text = csv_header(config);
        text += "# best_schedule:";
        for (double t : result.best_schedule) text += " " + fmt17(t);
        text += "\n# best_ev: " + fmt17(result.best_value) + "\n";
        text += "iteration,best_ev,mean_ev,spread\n";
        for (std::size_t i = 0; i < result.trace.best_value.size(); ++i)
            text += std::to_string(i + 1) + "," + fmt17(result.trace.best_value[i]) +
                    "," + fmt17(result.trace.mean_value[i]) + "," +
                    fmt17(result.trace.spread[i]) + "\n";
        write_output(opt, text);
    }
    return 0;
}

int run_eval(const Options& opt) {
    const Schedule times = load_times(opt);
    json config = base_config(opt, "eval");

    ObjectiveReport report;
    std::string engine = opt.engine;
    if (opt.mc_samples > 0) {
        report = expected_variance_mc(times, opt.mc_samples, opt.seed, opt.grid_size);
        engine = is_integer_schedule(times) ? "fourier" : "grid";
        config["mc_samples"] = opt.mc_samples;
    } else {
        if (engine == "auto") engine = is_integer_schedule(times) ? "fourier" : "grid";
        const Engine e = engine == "fourier" ? Engine::Fourier : Engine::Grid;
        report = expected_variance_exact(times, e, opt.grid_size, opt.cap);
    }

    json out{{"times", times},
             {"expected_variance", report.expected_variance},
             {"method", report.method},
             {"engine", engine},
             {"branches", report.branch_count},
             {"config", config}};
    if (report.method == "monte-carlo") out["stderr"] = report.stderr_value;
    write_output(opt, out.dump(2) + "\n");
    return 0;
}

int run_simulate(const Options& opt) {
    const Schedule times = load_times(opt);
    const BenchmarkResult res =
        benchmark_schedule(times, opt.trials, opt.seed, opt.grid_size);

    json config = base_config(opt, "simulate");
    config["trials"] = opt.trials;
    config["times"] = times;

    if (opt.format == "json") {
        json out{{"config", config},
                 {"mean_squared_error", res.mean_squared_error},
                 {"mean_posterior_variance", res.mean_posterior_variance},
                 {"stderr", res.stderr_value},
                 {"trials", res.trials}};
        write_output(opt, out.dump(2) + "\n");
    } else {
        std::string text = csv_header(config);
        text += "trials,mean_squared_error,mean_posterior_variance,stderr\n";
        text += std::to_string(res.trials) + "," + fmt17(res.mean_squared_error) + "," +
                fmt17(res.mean_posterior_variance) + "," + fmt17(res.stderr_value) + "\n";
        write_output(opt, text);
    }
    return 0;
}

int run_figure_data(const Options& opt) {
    if (opt.which == "fig1") {
        const int n = opt.n > 0 ? opt.n : 10;
        const LonaTrace lona = lona_schedule(n, opt.cap);

        std::vector<double> ev_linear;  // m_k = k comparison curve
        Schedule linear;
        for (int k = 1; k <= n; ++k) {
            linear.push_back(k);
            ev_linear.push_back(
                expected_variance_exact(linear, Engine::Fourier, opt.grid_size, opt.cap)
                    .expected_variance);
        }

        auto pso_point = [&](int step) -> std::optional<double> {
            const Schedule* s = nullptr;
            if (step == 5) s = &kTable1Pso;
            if (step == 10) s = &kTable2Pso;
            if (s == nullptr || static_cast<int>(s->size()) > n) return std::nullopt;
            return expected_variance_exact(*s, Engine::Grid, opt.grid_size, opt.cap)
                .expected_variance;
        };

        json config = base_config(opt, "figure-data");
        config["which"] = "fig1";
        config["n"] = n;

        if (opt.format == "json") {
            json rows = json::array();
            for (int k = 1; k <= n; ++k) {
                json row{{"step", k},
                         {"ev_lona", lona.per_step_ev[k - 1]},
                         {"ev_linear", ev_linear[k - 1]}};
                const auto p = pso_point(k);
                row["ev_pso"] = p ? json(*p) : json(nullptr);
                rows.push_back(row);
            }
            write_output(opt, json{{"config", config}, {"rows", rows}}.dump(2) + "\n");
        } else {
            std::string text = csv_header(config);
            text += "step,ev_lona,ev_linear,ev_pso\n";
            for (int k = 1; k <= n; ++k) {
                const auto p = pso_point(k);
                text += std::to_string(k) + "," + fmt17(lona.per_step_ev[k - 1]) + "," +
                        fmt17(ev_linear[k - 1]) + "," + (p ? fmt17(*p) : "") + "\n";
            }
            write_output(opt, text);
        }
        return 0;
    }

    if (opt.which == "fig2") {
        if (opt.n < 1) throw CLI::ValidationError("fig2 requires --n");
        if (opt.c1 + opt.c2 <= 4.0)
            throw CLI::ValidationError("constriction undefined: c1 + c2 must exceed 4");
        const PsoConfig cfg = make_pso_config(opt, opt.n);
        const PsoResult result = run_pso_search(opt, cfg, opt.n);

        json config = base_config(opt, "figure-data");
        config["which"] = "fig2";
        config["n"] = opt.n;
        config["pso"] = pso_config_json(opt);

        if (opt.format == "json") {
            json out{{"config", config},
                     {"best_schedule", result.best_schedule},
                     {"best_ev", result.best_value},
                     {"trace",
                      {{"best_ev", result.trace.best_value},
                       {"mean_ev", result.trace.mean_value},
                       {"spread", result.trace.spread}}}};
            write_output(opt, out.dump(2) + "\n");
        } else {
            std::string text = csv_header(config);
            text += "iteration,best_ev,mean_ev,spread\n";
            for (std::size_t i = 0; i < result.trace.best_value.size(); ++i)
                text += std::to_string(i + 1) + "," +
                        fmt17(result.trace.best_value[i]) + "," +
                        fmt17(result.trace.mean_value[i]) + "," +
                        fmt17(result.trace.spread[i]) + "\n";
            write_output(opt, text);
        }
        return 0;
    }

    throw CLI::ValidationError("--which must be fig1 or fig2");
}

void add_shared_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--n", opt.n, "number of measurements");
    cmd->add_option("--engine", opt.engine, "posterior engine: fourier|grid")
        ->check(CLI::IsMember({"fourier", "grid", "auto"}));
    cmd->add_option("--grid-size", opt.grid_size, "grid points (default 10000)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cap", opt.cap, "enumeration cap (default 16)");
    cmd->add_option("--seed", opt.seed, "master RNG seed");
    cmd->add_option("--out", opt.out, "output path (default stdout)");
    cmd->add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", opt.config_path, "JSON config file");
}

void add_pso_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--swarm-size", opt.swarm_size)->check(CLI::PositiveNumber);
    cmd->add_option("--c1", opt.c1);
    cmd->add_option("--c2", opt.c2);
    cmd->add_option("--vmax", opt.vmax)->check(CLI::PositiveNumber);
    cmd->add_option("--iters", opt.iters)->check(CLI::PositiveNumber);
    cmd->add_option("--init", opt.init, "range|around-lona");
    cmd->add_option("--radius", opt.radius)->check(CLI::NonNegativeNumber);
    cmd->add_option("--penalty", opt.penalty);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qubit frequency estimation schedule toolkit"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* lona = app.add_subcommand("lona", "greedy locally-optimal schedule");
    add_shared_flags(lona, opt);

    CLI::App* pso = app.add_subcommand("pso", "particle swarm schedule search");
    add_shared_flags(pso, opt);
    add_pso_flags(pso, opt);

    CLI::App* eval = app.add_subcommand("eval", "expected variance of a schedule");
    add_shared_flags(eval, opt);
    eval->add_option("--times", opt.times_literal, "comma-separated times");
    eval->add_option("--file", opt.times_file, "file with whitespace/comma times");
    eval->add_option("--mc", opt.mc_samples, "Monte-Carlo samples (0 = exact)");

    CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo schedule benchmark");
    add_shared_flags(sim, opt);
    sim->add_option("--times", opt.times_literal, "comma-separated times");
    sim->add_option("--file", opt.times_file, "file with whitespace/comma times");
    sim->add_option("--trials", opt.trials)->check(CLI::PositiveNumber);

    CLI::App* fig = app.add_subcommand("figure-data", "plot data emission");
    add_shared_flags(fig, opt);
    add_pso_flags(fig, opt);
    fig->add_option("--which", opt.which, "fig1|fig2")->required();

    try {
        app.parse(argc, argv);
        CLI::App* active = app.get_subcommands().front();
        apply_config_file(active, opt);
        if (active == lona) return run_lona(opt);
        if (active == pso) return run_pso(opt);
        if (active == eval) return run_eval(opt);
        if (active == sim) return run_simulate(opt);
        return run_figure_data(opt);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const cap_exceeded_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
