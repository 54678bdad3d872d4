// cli_app.hpp — The `dimer` command line: subcommands, CSV output and run
// manifests. Exit codes: 0 ok, 2 usage/validation/output error, 3 oracle
// disagreement.

#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimer/dimer.hpp"

namespace dimer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOracleMismatch = 3;

namespace detail {

inline std::string manifest_path(const std::string& out) {
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? out.substr(0, dot) : out) + ".manifest.json";
}

struct Manifest {
    std::string subcommand;
    std::vector<std::string> argv;
    json config;
    json axes = json::array();
    std::vector<std::string> outputs;
    json summary = json::object();

    void write(const std::string& primary_output, double seconds) const {
        json j = {{"subcommand", subcommand},
                  {"argv", argv},
                  {"config", config},
                  {"axes", axes},
                  {"outputs", outputs},
                  {"wall_clock_seconds", seconds},
                  {"version", DIMER_VERSION},
                  {"summary", summary}};
        const auto path = manifest_path(primary_output);
        auto out = open_output(path);
        out << j.dump(2) << '\n';
        if (!out) throw OutputError("failed writing \"" + path + "\"");
    }
};

inline std::vector<double> sample_times(double t_min, double t_max, int steps) {
    std::vector<double> ts;
    for (int i = 0; i < steps; ++i) {
        ts.push_back(steps == 1 ? t_min : (i == steps - 1 ? t_max : t_min + (t_max - t_min) * i / (steps - 1)));
    }
    return ts;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    const auto started = std::chrono::steady_clock::now();
    CLI::App app{"Transition dynamics of a dimer coupled to spin-star baths", "dimer"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    double t_min = 0.0, t_max = 1.0;
    int steps = 1001;
    TimeWindow window;
    double theta = 0.0, phi = 0.0;
    unsigned threads = default_thread_count();

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file")->required();
    };
    auto add_curve = [&](CLI::App* sub) {
        add_config(sub);
        sub->add_option("--t-min", t_min, "first time sample (ps)");
        sub->add_option("--t-max", t_max, "last time sample (ps)");
        sub->add_option("--steps", steps, "number of time samples")->check(CLI::NonNegativeNumber);
        sub->add_option("--out", out_path, "output CSV (stdout when omitted)");
    };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--t-min", window.t_min, "search window start (ps)");
        sub->add_option("--t-max", window.t_max, "search window end (ps)");
        sub->add_option("--coarse-steps", window.coarse_steps, "coarse scan samples");
        sub->add_option("--refine", window.refine_iterations, "golden-section iterations");
    };
    auto add_angles = [&](CLI::App* sub) {
        sub->add_option("--theta", theta, "superposition angle for degenerate ground states");
        sub->add_option("--phi", phi, "relative phase for degenerate ground states");
    };

    auto* zero = app.add_subcommand("zero-temp", "P(t) at zero temperature, independent baths");
    add_curve(zero);
    auto* thermal = app.add_subcommand("thermal", "P(t) at finite temperature");
    add_curve(thermal);
    auto* corr = app.add_subcommand("correlated-zero-temp", "P(t) at zero temperature, Ising-correlated baths");
    add_curve(corr);
    add_angles(corr);

    auto* max = app.add_subcommand("max", "maximum of P(t) over a time window");
    add_config(max);
    add_window(max);
    bool with_gain = false;
    max->add_flag("--gain", with_gain, "also report the gain over the decoupled dimer");
    max->add_option("--out", out_path, "write the result as JSON");

    auto* sw = app.add_subcommand("sweep", "one- or two-parameter sweep");
    add_config(sw);
    add_window(sw);
    std::vector<std::string> axis_specs;
    std::string metric = "max-p";
    sw->add_option("--axis", axis_specs, "name=min:max:count (1 or 2 axes)")->required()->expected(1, 2);
    sw->add_option("--metric", metric, "max-p, or p when one axis is time")->check(CLI::IsMember({"max-p", "p"}));
    sw->add_option("--out", out_path, "output CSV")->required();

    auto* res = app.add_subcommand("resonance", "zero-temperature assistance condition and resonant coupling");
    add_config(res);
    add_angles(res);
    std::string free_name = "gamma2";
    res->add_option("--free", free_name, "coupling to solve for")->check(CLI::IsMember({"gamma1", "gamma2"}));

    auto* gs = app.add_subcommand("ground-state", "ground state of the correlated bath Hamiltonian");
    add_config(gs);
    add_angles(gs);

    auto* orc = app.add_subcommand("oracle-check", "compare the closed forms against exact diagonalization");
    add_config(orc);
    std::optional<int> n1_override, n2_override;
    int points = 50;
    double tol = 1e-8;
    double check_t_max = 1.0;
    orc->add_option("--n1", n1_override, "override N1");
    orc->add_option("--n2", n2_override, "override N2");
    orc->add_option("--points", points, "number of time points")->check(CLI::PositiveNumber);
    orc->add_option("--t-max", check_t_max, "last time point (ps)");
    orc->add_option("--tol", tol, "maximum allowed |dP|");

    auto* val = app.add_subcommand("validate", "check a configuration file");
    add_config(val);

    app.add_option("--threads", threads, "worker threads for sweeps (env DIMER_THREADS)")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    detail::Manifest manifest;
    manifest.argv = args;
    auto finish = [&](const std::string& primary) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        manifest.write(primary, secs);
    };

    try {
        const SystemConfig config = load_config(config_path);
        manifest.config = config_to_json(config);

        if (val->parsed()) {
            out << "valid\n";
            return kExitOk;
        }

        if (zero->parsed() || thermal->parsed() || corr->parsed()) {
            manifest.subcommand = zero->parsed() ? "zero-temp" : thermal->parsed() ? "thermal" : "correlated-zero-temp";
            if (!(t_max >= t_min) || t_min < 0.0) throw std::invalid_argument("need 0 <= t-min <= t-max");
            std::vector<CurvePoint> curve;
            double p_max = 0.0, t_star = 0.0;
            for (double t : detail::sample_times(t_min, t_max, steps)) {
                const double p = zero->parsed()      ? p12_zero_temp(config, t)
                                 : thermal->parsed() ? p12_thermal(config, t)
                                                     : p12_correlated_zero_temp(config, t, theta, phi);
                curve.push_back({t, p});
                if (p > p_max) p_max = p, t_star = t;
            }
            if (out_path.empty()) {
                write_curve(out, curve);
            } else {
                emit_csv(curve, out_path);
                manifest.outputs = {out_path};
                manifest.summary = {{"samples", curve.size()}, {"t_star_ps", t_star}, {"p_max_sampled", p_max}};
                finish(out_path);
                out << "wrote " << out_path << " (max sampled P = " << format_double(p_max) << ")\n";
            }
            return kExitOk;
        }

        if (max->parsed()) {
            manifest.subcommand = "max";
            const auto m = max_over_time(config, window);
            out << "t_star_ps=" << format_double(m.t) << "\np_max=" << format_double(m.p) << '\n';
            manifest.summary = {{"t_star_ps", m.t}, {"p_max", m.p}};
            if (with_gain) {
                const auto g = assistance_gain(config, window);
                out << "p_max_decoupled=" << format_double(g.decoupled.p) << "\ngain=" << format_double(g.gain)
                    << '\n';
                manifest.summary["p_max_decoupled"] = g.decoupled.p;
                manifest.summary["gain"] = g.gain;
            }
            if (!out_path.empty()) {
                auto f = open_output(out_path);
                f << manifest.summary.dump(2) << '\n';
                manifest.outputs = {out_path};
                finish(out_path);
            }
            return kExitOk;
        }

        if (sw->parsed()) {
            manifest.subcommand = "sweep";
            if (axis_specs.empty() || axis_specs.size() > 2) throw std::invalid_argument("give one or two --axis");
            const SweepAxis a1 = parse_axis(axis_specs[0]);
            const std::optional<SweepAxis> a2 =
                axis_specs.size() == 2 ? std::optional<SweepAxis>(parse_axis(axis_specs[1])) : std::nullopt;
            const bool has_time = a1.parameter == SweepParameter::time || (a2 && a2->parameter == SweepParameter::time);
            if (has_time != (metric == "p")) {
                throw std::invalid_argument("--metric p goes with a time axis; max-p with parameter axes only");
            }
            const auto grid = sweep(config, a1, a2, window, threads);
            manifest.outputs = emit_csv(grid, out_path, has_time ? "p12" : "p_max");
            for (const auto& spec : axis_specs) manifest.axes.push_back(spec);
            json am = {{"t_ps", grid.argmax.t}, {"p", grid.argmax.p},
                       {to_string(a1.parameter), a1.values[grid.argmax.i1]}};
            if (a2) am[to_string(a2->parameter)] = a2->values[grid.argmax.i2];
            manifest.summary = {{"argmax", am}, {"metric", metric}};
            finish(out_path);
            out << "wrote " << out_path << " (max = " << format_double(grid.argmax.p) << ")\n";
            return kExitOk;
        }

        if (res->parsed()) {
            SystemConfig zc = config;
            zc.thermal = ThermalSpec::zero_temperature();
            validate(zc);
            if (!config.thermal.is_zero()) out << "note=evaluated at zero temperature\n";
            const auto rep = assistance_condition(zc, theta, phi);
            out << "branch=" << to_string(rep.branch.kind) << '\n'
                << "delta0=" << format_double(rep.delta0) << '\n'
                << "satisfied=" << (rep.satisfied ? "true" : "false") << '\n';
            const auto sol = resonance_gamma(zc, free_name == "gamma1" ? FreeCoupling::gamma1 : FreeCoupling::gamma2,
                                             theta, phi);
            if (!sol) {
                out << free_name << "=none\n";
            } else {
                out << free_name << '=' << format_double(sol->gamma) << '\n';
                if (sol->any_gamma) out << "any_gamma=true\n";
            }
            return kExitOk;
        }

        if (gs->parsed()) {
            const auto& b1 = config.bath1;
            const auto& b2 = config.bath2;
            const auto branch = correlated_ground_state(b1.alpha, b2.alpha, config.correlation.q, b1.N, b2.N, theta, phi);
            out << "q0=" << format_double(q_threshold(b1.alpha, b2.alpha, b1.N, b2.N)) << '\n'
                << "branch=" << to_string(branch.kind) << '\n';
            SystemConfig zc = config;
            zc.thermal = ThermalSpec::zero_temperature();
            out << "delta0=" << format_double(delta0_correlated(zc, branch).value) << '\n';
            out << "minimizers=";
            const auto mins = oracle::brute_force_bath_ground(b1.alpha, b2.alpha, config.correlation.q, b1.N, b2.N);
            for (std::size_t i = 0; i < mins.size(); ++i) {
                out << (i ? ";" : "") << '(' << format_double(mins[i].first.value()) << ','
                    << format_double(mins[i].second.value()) << ')';
            }
            out << '\n';
            return kExitOk;
        }

        if (orc->parsed()) {
            SystemConfig c = config;
            if (n1_override) c.bath1.N = *n1_override;
            if (n2_override) c.bath2.N = *n2_override;
            validate(c);
            oracle::check_size(c.bath1.N, c.bath2.N);
            if (c.thermal.is_zero() && c.correlated() && correlated_ground_state(c).degenerate()) {
                err << "error: degenerate zero-temperature ground state; the closed form depends on the "
                       "superposition angle and has no ensemble counterpart\n";
                return kExitUsage;
            }
            const oracle::DenseOracle oracle(c);
            double worst = 0.0;
            for (double t : detail::sample_times(0.0, check_t_max, points)) {
                worst = std::max(worst, std::abs(transition_probability(c, t) - oracle.probability(t)));
            }
            out << "dimension=" << oracle.hamiltonian().dimension() << '\n'
                << "max |dP| = " << format_double(worst) << '\n';
            return worst <= tol ? kExitOk : kExitOracleMismatch;
        }
    } catch (const ConfigError& e) {
        for (const auto& msg : e.errors()) err << "error: " << msg << '\n';
        return kExitUsage;
    } catch (const oracle::SizeGuardError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}

}  // namespace dimer::cli
