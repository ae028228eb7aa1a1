#include "fishsim/cli.hpp"

#include "fishsim/conditions.hpp"
#include "fishsim/csv.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fishsim {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file " + path.string());
    out << content;
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,N\n";
    const auto& ts = traj.times();
    const auto& vs = traj.values();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out += format_double(ts[i]);
        out += ',';
        out += format_double(vs[i]);
        out += '\n';
    }
    return out;
}

std::string plot_csv(const Trajectory& traj, double lo, double hi) {
    constexpr std::size_t n = 1000;
    std::string out = "t,N\n";
    for (std::size_t i = 0; i < n; ++i) {
        double t = lo + (hi - lo) * i / (n - 1);
        out += format_double(t);
        out += ',';
        out += format_double(traj.eval(t));
        out += '\n';
    }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceReport>& reports) {
    std::string out = "first,second,sup_diff_last_period,decay_rate_estimate,rate_estimable,"
                      "converged\n";
    for (const auto& r : reports) {
        out += std::to_string(r.first);
        out += ',';
        out += std::to_string(r.second);
        out += ',';
        out += format_double(r.sup_diff_last_period);
        out += ',';
        out += format_double(r.decay_rate_estimate);
        out += ',';
        out += r.rate_estimable ? "true" : "false";
        out += ',';
        out += r.converged ? "true" : "false";
        out += '\n';
    }
    return out;
}

double resolved_t_end(const ExperimentConfig& cfg, const ModelParams& m) {
    if (cfg.run.t_end)
        return *cfg.run.t_end;
    return cfg.run.horizon_periods * m.effective_period();
}

std::vector<HistorySpec> standard_history_pair(const ModelParams& m) {
    double lo = 0.5 * m.K.grid_min();
    double hi = 2.0 * m.K.grid_max();
    return {HistorySpec::constant(lo, lo), HistorySpec::constant(hi, hi)};
}

int cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                 const CommandOptions& opts) {
    ModelParams m = cfg.resolved_model();
    if (!cfg.history)
        throw ConfigError("history: section required for simulate");
    double t_end = resolved_t_end(cfg, m);
    Trajectory traj = integrate(m, *cfg.history, t_end, cfg.run.control());
    write_file(out_dir / "trajectory.csv", trajectory_csv(traj));
    if (opts.plot)
        write_file(out_dir / "trajectory_plot.csv", plot_csv(traj, 0.0, t_end));
    return 0;
}

int cmd_check(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
              const CommandOptions& opts) {
    ModelParams m = cfg.resolved_model();
    ConditionReport rep;
    if (cfg.history)
        rep.merge(validate(m, *cfg.history));
    rep.merge(check_global_attraction(m, opts.jobs));
    if (cfg.proportional) {
        rep.merge(check_global_attraction(*cfg.proportional, opts.jobs));
        rep.merge(check_local_stability(*cfg.proportional, opts.jobs));
    }
    write_file(out_dir / "conditions.csv", rep.to_csv());
    write_file(out_dir / "conditions.txt", rep.to_text());
    return 0;
}

int cmd_periodic(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                 const CommandOptions& opts, std::ostream& diag) {
    ModelParams m = cfg.resolved_model();
    auto conditions = check_global_attraction(m, opts.jobs);
    if (conditions.overall() != Verdict::holds) {
        std::string msg = "global-attraction conditions not all satisfied (overall " +
                          std::string(to_string(conditions.overall())) + ")";
        if (opts.strict) {
            diag << "error: " << msg << "\n";
            return 1;
        }
        diag << "warning: " << msg << "; searching anyway\n";
    }
    PeriodicOrbit orbit = find_periodic_solution(m, cfg.run.control(), cfg.run.transient_periods,
                                                 cfg.run.residual_tol, cfg.run.guess,
                                                 /*warn_and_proceed=*/true);
    write_file(out_dir / "orbit.csv", trajectory_csv(orbit.orbit));
    if (opts.plot)
        write_file(out_dir / "orbit_plot.csv",
                   plot_csv(orbit.orbit, orbit.orbit.start(), orbit.orbit.end()));
    std::ostringstream text;
    text << "period = " << format_double_shortest(orbit.period) << "\n"
         << "residual = " << format_double_shortest(orbit.residual) << "\n"
         << "transient_used = " << format_double_shortest(orbit.transient_used) << "\n"
         << "converged = " << (orbit.converged ? "true" : "false") << "\n";
    write_file(out_dir / "periodic.txt", text.str());
    if (!orbit.converged)
        diag << "warning: residual " << format_double_shortest(orbit.residual)
             << " is not below tolerance " << format_double_shortest(cfg.run.residual_tol)
             << "\n";
    return 0;
}

int cmd_converge(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                 const CommandOptions&) {
    ModelParams m = cfg.resolved_model();
    std::vector<HistorySpec> histories = cfg.converge_histories;
    if (histories.empty())
        histories = standard_history_pair(m);
    auto reports = verify_attraction(m, histories, cfg.run.control(), cfg.run.horizon_periods,
                                     cfg.run.tol);
    write_file(out_dir / "convergence.csv", convergence_csv(reports));
    return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
              const CommandOptions& opts) {
    if (!cfg.sweep_axis1 || !cfg.sweep_axis2)
        throw ConfigError("sweep: axis1 and axis2 sections are required");
    SweepOptions sopts;
    sopts.horizon_periods = cfg.run.horizon_periods;
    sopts.tol = cfg.run.tol;
    sopts.control = cfg.run.control();
    sopts.jobs = opts.jobs;
    SweepResult result = cfg.proportional
                             ? sweep(*cfg.proportional, *cfg.sweep_axis1, *cfg.sweep_axis2, sopts)
                             : sweep(cfg.resolved_model(), *cfg.sweep_axis1, *cfg.sweep_axis2,
                                     sopts);
    write_file(out_dir / "sweep.csv", result.to_csv());
    return 0;
}

} // namespace

int run_command(const std::string& command, const ExperimentConfig& cfg,
                const std::string& out_dir, const CommandOptions& opts, std::ostream& diag) {
    try {
        std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "resolved.cfg", serialize_config(cfg));

        if (command == "simulate")
            return cmd_simulate(cfg, dir, opts);
        if (command == "check")
            return cmd_check(cfg, dir, opts);
        if (command == "periodic")
            return cmd_periodic(cfg, dir, opts, diag);
        if (command == "converge")
            return cmd_converge(cfg, dir, opts);
        if (command == "sweep")
            return cmd_sweep(cfg, dir, opts);
        diag << "error: unknown command '" << command << "'\n";
        return 1;
    } catch (const ConfigError& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    } catch (const BlowUpError& e) {
        diag << "runtime error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        diag << "runtime error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Simulation and verification toolkit for a delayed harvesting model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    CommandOptions opts;

    const char* names[] = {"simulate", "check", "periodic", "converge", "sweep"};
    const char* descs[] = {
        "integrate the model and write the trajectory",
        "evaluate every stability condition",
        "locate the attracting periodic solution",
        "compare runs from several histories",
        "classify a 2D parameter grid",
    };
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "experiment configuration file")
            ->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--jobs", opts.jobs, "concurrency bound (0 = runtime default)");
        sub->add_flag("--strict", opts.strict,
                      "unknown keys and unmet preconditions become errors");
        if (i == 0 || i == 2)
            sub->add_flag("--plot", opts.plot, "also write the 1000-point plot CSV");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config file " << config_path << "\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    ExperimentConfig cfg;
    std::vector<std::string> warnings;
    try {
        cfg = parse_config(buf.str(), opts.strict, &warnings);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << "\n";

    return run_command(app.get_subcommands().front()->get_name(), cfg, out_dir, opts);
}

} // namespace fishsim
