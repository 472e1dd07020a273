// SPDX-License-Identifier: MIT
/**
 * @file cli.hpp
 * @brief Command-line workflows: existence scans, pseudopotential tables,
 *        profile construction, PDE evolution and Lax-pair verification.
 *
 * Configuration is a flat JSON object whose keys are the long flag names
 * with '-' replaced by '_'. Resolution order: built-in defaults, then the
 * --config file, then explicit flags. FHD_OUTPUT_DIR is consulted only when
 * neither the file nor the flags name an output directory.
 *
 * Exit status: 0 success, 2 validation error, 3 numerical failure,
 * 64 usage error (unknown command or malformed flags).
 */

#pragma once

#include "fhd/core_model.hpp"
#include "fhd/error.hpp"
#include "fhd/io.hpp"
#include "fhd/pde_integrator.hpp"
#include "fhd/pseudopotential.hpp"
#include "fhd/tw_solver.hpp"
#include "fhd/zero_curvature.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fhd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 64;

inline constexpr std::array<std::string_view, 6> kCommands = {
    "scan-existence", "potential", "profile", "evolve", "verify-lax", "reduce-check"};

struct RunConfig {
    std::string command;
    double lambda = 0.5;
    double v0 = 1.0;
    double lambda_spec = 1.0;
    double xmin = -40.0;
    double xmax = 40.0;
    std::size_t n = 2048;
    double t_final = 5.0;
    double cfl = 0.1;
    std::size_t output_stride = 0;
    std::string output_dir = ".";
    bool emit_plots = false;
    double lambda_min = 0.0;
    double lambda_max = 2.0;
    std::size_t steps = 41;
    std::size_t samples = 401;
    bool per_frame = false;

    [[nodiscard]] SolitonParams params() const { return {lambda, v0}; }
    [[nodiscard]] Grid1D grid() const { return make_grid(xmin, xmax, n, true); }
};

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"command", c.command},         {"lambda", c.lambda},
                       {"v0", c.v0},                   {"lambda_spec", c.lambda_spec},
                       {"xmin", c.xmin},               {"xmax", c.xmax},
                       {"n", c.n},                     {"t_final", c.t_final},
                       {"cfl", c.cfl},                 {"output_stride", c.output_stride},
                       {"output_dir", c.output_dir},   {"emit_plots", c.emit_plots},
                       {"lambda_min", c.lambda_min},   {"lambda_max", c.lambda_max},
                       {"steps", c.steps},             {"samples", c.samples},
                       {"per_frame", c.per_frame}};
}

/// Overlays the keys present in `j` onto `c`; unknown keys are rejected.
inline void merge_json(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    nlohmann::json known;
    to_json(known, c);
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw DomainError("unknown config key '" + key + "'");
    }
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    try {
        get("command", c.command);
        get("lambda", c.lambda);
        get("v0", c.v0);
        get("lambda_spec", c.lambda_spec);
        get("xmin", c.xmin);
        get("xmax", c.xmax);
        get("n", c.n);
        get("t_final", c.t_final);
        get("cfl", c.cfl);
        get("output_stride", c.output_stride);
        get("output_dir", c.output_dir);
        get("emit_plots", c.emit_plots);
        get("lambda_min", c.lambda_min);
        get("lambda_max", c.lambda_max);
        get("steps", c.steps);
        get("samples", c.samples);
        get("per_frame", c.per_frame);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad config value: ") + e.what());
    }
}

inline bool is_command(std::string_view name) {
    for (auto c : kCommands) {
        if (c == name) return true;
    }
    return false;
}

namespace detail {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outputs {
    fs::path dir;
    std::vector<std::string> files;

    fs::path add(const std::string& name) {
        files.push_back(name);
        return dir / name;
    }
};

inline void write_metadata(Outputs& out, const RunConfig& cfg) {
    json meta{{"config", cfg}, {"outputs", out.files}};
    io::write_json(out.dir / "metadata.json", meta);
}

inline void write_plot_script(Outputs& out, const std::string& name, const std::string& body) {
    std::ofstream f = io::open_for_write(out.add(name));
    f << "#!/usr/bin/env python3\n"
         "# Generated by fhd. Run from this directory: python3 "
      << name
      << "\n"
         "import numpy as np\n"
         "import matplotlib\n"
         "matplotlib.use('Agg')\n"
         "import matplotlib.pyplot as plt\n\n"
         "def load(name):\n"
         "    return np.genfromtxt(name, delimiter=',', names=True)\n\n"
      << body;
}

inline json run_scan(const RunConfig& c, Outputs& out) {
    if (c.steps < 2 || !(c.lambda_max > c.lambda_min)) {
        throw DomainError("scan needs steps >= 2 and lambda_max > lambda_min");
    }
    std::vector<double> lam(c.steps), ok(c.steps), s0(c.steps), ds0(c.steps), d2s(c.steps), d2e(c.steps);
    std::size_t count = 0;
    double last_in = std::nan(""), first_out_after = std::nan("");
    for (std::size_t i = 0; i < c.steps; ++i) {
        lam[i] = c.lambda_min + (c.lambda_max - c.lambda_min) * static_cast<double>(i) /
                                    static_cast<double>(c.steps - 1);
        const auto d = existence_check({lam[i], c.v0});
        ok[i] = d.admissible ? 1.0 : 0.0;
        s0[i] = d.S_at_v0;
        ds0[i] = d.dS_at_v0;
        d2s[i] = d.d2S_at_v0;
        d2e[i] = d.d2S_exact;
        if (d.admissible) {
            ++count;
            last_in = lam[i];
        } else if (count > 0 && std::isnan(first_out_after)) {
            first_out_after = lam[i];
        }
    }
    io::write_csv(out.add("existence.csv"),
                  {"lambda", "admissible", "S_v0", "dS_v0", "d2S_v0", "d2S_exact"},
                  {lam, ok, s0, ds0, d2s, d2e});
    if (c.emit_plots) {
        write_plot_script(out, "plot_existence.py",
                          "d = load('existence.csv')\n"
                          "fig, ax = plt.subplots()\n"
                          "ax.step(d['lambda'], d['admissible'], where='mid')\n"
                          "ax.plot(d['lambda'], d['d2S_v0'], label=\"S''(v0)\")\n"
                          "ax.axhline(0, color='k', lw=0.5)\n"
                          "ax.set_xlabel('Lambda'); ax.legend()\n"
                          "fig.savefig('existence.png', dpi=150)\n");
    }
    return json{{"v0", c.v0},
                {"admissible_count", count},
                {"last_admissible", std::isnan(last_in) ? json(nullptr) : json(last_in)},
                {"first_inadmissible_above", std::isnan(first_out_after) ? json(nullptr) : json(first_out_after)},
                {"analytic_boundary", c.v0 * c.v0 * c.v0}};
}

inline json run_potential(const RunConfig& c, Outputs& out) {
    const auto p = c.params();
    p.validate();
    if (c.samples < 2) throw DomainError("samples must be >= 2");
    const double vt = p.turning_value();
    const double lo = std::max(vt > 0.0 ? 0.5 * vt : 0.0, 0.05 * p.v0);
    const auto pot = potential_table(p, lo, 1.2 * p.v0, c.samples);
    std::vector<double> v(pot.size()), S(pot.size());
    for (std::size_t i = 0; i < pot.size(); ++i) {
        v[i] = pot[i].v;
        S[i] = pot[i].S;
    }
    io::write_csv(out.add("potential.csv"), {"v", "S"}, {v, S});

    const auto d = existence_check(p);
    json summary{{"lambda", p.lambda_speed}, {"v0", p.v0}, {"admissible", d.admissible},
                 {"d2S_v0", d.d2S_at_v0}, {"diagnostic", d.message}};
    if (d.admissible) {
        const auto tp = turning_points(p);
        const auto ph = phase_table(p, c.samples);
        std::vector<double> pv(ph.size()), pp(ph.size()), pm(ph.size());
        for (std::size_t i = 0; i < ph.size(); ++i) {
            pv[i] = ph[i].v;
            pp[i] = ph[i].vp_plus;
            pm[i] = ph[i].vp_minus;
        }
        io::write_csv(out.add("phase.csv"), {"v", "vp_plus", "vp_minus"}, {pv, pp, pm});
        summary["v_turn"] = tp.v_turn;
        summary["v_turn_bisected"] = tp.v_turn_bisected;
    }
    if (c.emit_plots) {
        write_plot_script(out, "plot_potential.py",
                          "import os\n"
                          "fig, axes = plt.subplots(1, 2, figsize=(10, 4))\n"
                          "p = load('potential.csv')\n"
                          "axes[0].plot(p['v'], p['S'])\n"
                          "axes[0].axhline(0, color='k', lw=0.5)\n"
                          "axes[0].set_xlabel('v'); axes[0].set_ylabel('S(v)')\n"
                          "if os.path.exists('phase.csv'):\n"
                          "    q = load('phase.csv')\n"
                          "    axes[1].plot(q['v'], q['vp_plus'], 'b')\n"
                          "    axes[1].plot(q['v'], q['vp_minus'], 'b')\n"
                          "axes[1].set_xlabel('v'); axes[1].set_ylabel(\"v'\")\n"
                          "fig.tight_layout()\n"
                          "fig.savefig('potential.png', dpi=150)\n");
    }
    return summary;
}

inline json metrics_json(const Profile& prof, const ProfileMetrics& m) {
    return json{{"lambda", prof.params.lambda_speed}, {"v0", prof.params.v0}, {"depth", m.depth},
                {"fwhm", m.fwhm}, {"method", to_string(prof.method)}};
}

inline json run_profile(const RunConfig& c, Outputs& out) {
    const auto p = c.params();
    require_existence(p);
    const Grid1D grid = c.grid();
    const QuadratureWave wave(p);
    const Field quad = wave.sample(grid);
    const Profile shoot = profile_by_shooting(p, grid);
    const Profile table = wave.tabulate(4001);

    const auto x = grid.nodes();
    io::write_csv(out.add("profile.csv"), {"xi", "v"}, {x, quad.values()});
    io::write_csv(out.add("profile_shooting.csv"), {"xi", "v"}, {x, std::span<const double>(shoot.v)});

    const auto mq = profile_metrics(table);
    const auto ms = profile_metrics(shoot);
    double discrepancy = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        discrepancy = std::max(discrepancy, std::abs(quad[i] - shoot.v[i]));
    }
    io::write_json(out.add("metrics.json"),
                   json{{"quadrature", metrics_json(table, mq)}, {"shooting", metrics_json(shoot, ms)}});
    if (c.emit_plots) {
        write_plot_script(out, "plot_profile.py",
                          "q = load('profile.csv')\n"
                          "s = load('profile_shooting.csv')\n"
                          "fig, ax = plt.subplots()\n"
                          "ax.plot(q['xi'], q['v'], label='quadrature')\n"
                          "ax.plot(s['xi'], s['v'], '--', label='shooting')\n"
                          "ax.set_xlabel('xi'); ax.set_ylabel('v'); ax.legend()\n"
                          "fig.savefig('profile.png', dpi=150)\n");
    }
    return json{{"lambda", p.lambda_speed},
                {"v0", p.v0},
                {"min_v", quad.min()},
                {"depth", mq.depth},
                {"fwhm_quadrature", mq.fwhm},
                {"fwhm_shooting", ms.fwhm},
                {"width_rel_diff", std::abs(mq.fwhm - ms.fwhm) / mq.fwhm},
                {"max_discrepancy", discrepancy},
                {"first_integral_residual", shoot.first_integral_residual}};
}

inline void write_trajectory(const RunConfig& c, Outputs& out, const Trajectory& traj) {
    if (c.per_frame) {
        for (auto& name : io::write_trajectory_frames(out.dir, traj)) out.files.push_back(name);
    } else {
        io::write_trajectory_csv(out.add("trajectory.csv"), traj);
    }
}

inline json run_evolve(const RunConfig& c, Outputs& out, int& status) {
    const auto p = c.params();
    require_existence(p);
    const Grid1D grid = c.grid();
    const Field initial = QuadratureWave(p).sample(grid);

    EvolveConfig ec;
    ec.t_final = c.t_final;
    ec.cfl_constant = c.cfl;
    ec.output_stride = c.output_stride;
    ec.positivity_floor = 0.01 * p.v0;

    EvolveStats stats;
    Trajectory traj;
    json summary{{"lambda", p.lambda_speed}, {"v0", p.v0}, {"n", grid.size()}};
    try {
        traj = evolve(initial, ec, &stats);
    } catch (const EvolveAborted& e) {
        write_trajectory(c, out, e.partial());
        summary["aborted"] = e.what();
        status = kExitNumerical;
        return summary;
    }
    write_trajectory(c, out, traj);

    const double displacement = measure_displacement(traj);
    const double i0 = conserved_functional(traj.front());
    const double i1 = conserved_functional(traj.back());
    summary["dt_mean"] = stats.dt_mean;
    summary["steps"] = stats.steps;
    summary["t_final"] = traj.times().back();
    summary["frames"] = traj.size();
    summary["speed_measured"] = measure_speed(traj);
    summary["displacement"] = displacement;
    summary["conservation_drift"] = std::abs(i1 - i0) / std::abs(i0);
    summary["shape_error"] = shape_error(traj.front(), traj.back(), displacement, p.v0);
    if (c.emit_plots) {
        const std::string loader =
            c.per_frame ? "idx = load('frames.csv')\n"
                          "frames = [load('frame_%05d.csv' % int(k)) for k in idx['frame']]\n"
                          "t = idx['t']; x = frames[0]['x']\n"
                          "V = np.array([f['v'] for f in frames])\n"
                        : "d = load('trajectory.csv')\n"
                          "t = np.unique(d['t']); x = d['x'][d['t'] == t[0]]\n"
                          "V = d['v'].reshape(len(t), len(x))\n";
        write_plot_script(out, "plot_evolve.py",
                          loader +
                              "from mpl_toolkits.mplot3d import Axes3D  # noqa: F401\n"
                              "X, T = np.meshgrid(x, t)\n"
                              "fig = plt.figure(figsize=(11, 4.5))\n"
                              "ax = fig.add_subplot(1, 2, 1, projection='3d')\n"
                              "ax.plot_surface(X, T, V, cmap='viridis', linewidth=0)\n"
                              "ax.set_xlabel('x'); ax.set_ylabel('t'); ax.set_zlabel('v')\n"
                              "ax2 = fig.add_subplot(1, 2, 2)\n"
                              "cs = ax2.contourf(X, T, V, 30)\n"
                              "fig.colorbar(cs, ax=ax2)\n"
                              "ax2.set_xlabel('x'); ax2.set_ylabel('t')\n"
                              "fig.tight_layout()\n"
                              "fig.savefig('evolve.png', dpi=150)\n");
    }
    return summary;
}

/// Exact translated-profile trajectories on the configured grid and its 2x refinement.
inline LaxConvergence lax_study(const RunConfig& c, const QuadratureWave& wave, double lambda_spec) {
    const Grid1D base = c.grid();
    auto make = [&](int level) {
        // Frame spacing dt = dx0^2 / 2^level keeps the O(dt^2) time error
        // below the O(dx^4) spatial error at every level.
        const Grid1D g = base.with_size(base.size() << level);
        const double dt = base.dx() * base.dx() / static_cast<double>(1 << level);
        std::vector<double> times;
        for (int k = 0; k <= 4 << level; ++k) times.push_back(dt * k);
        return travelling_trajectory(wave, g, times);
    };
    return zc_convergence(make, lambda_spec);
}

inline json lax_report_json(const LaxConvergence& study) {
    const auto& r = study.fine;
    const bool pass = study.order >= 2.0 && study.coarse.off_shell_max() < 1e-10 &&
                      study.fine.off_shell_max() < 1e-10;
    return json{{"lambda_spec", r.lambda_spec},
                {"entry_norms", {r.entry_norms[0][0], r.entry_norms[0][1], r.entry_norms[1][0], r.entry_norms[1][1]}},
                {"coarse_entry_norms",
                 {study.coarse.entry_norms[0][0], study.coarse.entry_norms[0][1],
                  study.coarse.entry_norms[1][0], study.coarse.entry_norms[1][1]}},
                {"dx", r.dx},
                {"dt", r.dt},
                {"convergence_order", study.order},
                {"pass", pass}};
}

inline json run_verify_lax(const RunConfig& c, Outputs& out, int& status) {
    const auto p = c.params();
    require_existence(p);
    const QuadratureWave wave(p);
    const auto report = lax_report_json(lax_study(c, wave, c.lambda_spec));
    io::write_json(out.add("lax_report.json"), report);
    if (!report.at("pass").get<bool>()) status = kExitNumerical;
    return report;
}

/// Deterministic family of smooth positive periodic test fields.
inline Field reduction_test_field(const Grid1D& grid, double v0, int index) {
    const double L = grid.length();
    // Base wavenumber close to 1 whatever the domain length.
    const double base = 2.0 * M_PI * std::max(1.0, std::round(L / (2.0 * M_PI))) / L;
    const double k1 = base * (1 + index % 3);
    const double k2 = base * (2 + index % 5);
    const double a1 = 0.1 + 0.02 * index;
    const double a2 = 0.02 * (index % 4);
    const double phase = 0.37 * index;
    return Field::from_function(grid, [&](double x) {
        const double s = x - grid.x_min();
        return v0 * (1.0 + a1 * std::sin(k1 * s + phase) + a2 * std::cos(k2 * s - 2.0 * phase));
    });
}

inline json run_reduce_check(const RunConfig& c, Outputs& out, int& status) {
    if (!(c.v0 > 0.0)) throw DomainError("v0 must be positive");
    const Grid1D grid = c.grid();
    std::vector<double> discrepancies;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double d = reduction_discrepancy(reduction_test_field(grid, c.v0, i), c.lambda_spec);
        discrepancies.push_back(d);
        worst = std::max(worst, d);
    }
    const double control = reduction_discrepancy(reduction_test_field(grid, c.v0, 0), c.lambda_spec, 1.0);
    const bool pass = worst < 1e-10 && control > 1e-2;
    json report{{"lambda_spec", c.lambda_spec},
                {"discrepancies", discrepancies},
                {"max_discrepancy", worst},
                {"negative_control_discrepancy", control},
                {"pass", pass}};
    io::write_json(out.add("reduce_report.json"), report);
    if (!pass) status = kExitNumerical;
    return report;
}

}  // namespace detail

/// Executes one workflow. Writes outputs into cfg.output_dir and a one-line summary to `log`.
inline int run(const RunConfig& cfg, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    using nlohmann::json;
    if (!is_command(cfg.command)) {
        err << "unknown command '" << cfg.command << "'\n";
        return kExitUsage;
    }
    int status = kExitOk;
    try {
        detail::Outputs out{std::filesystem::path(cfg.output_dir), {}};
        std::error_code ec;
        std::filesystem::create_directories(out.dir, ec);
        if (!std::filesystem::is_directory(out.dir)) {
            throw DomainError("output directory " + cfg.output_dir + " cannot be created");
        }

        json summary;
        if (cfg.command == "scan-existence") summary = detail::run_scan(cfg, out);
        else if (cfg.command == "potential") summary = detail::run_potential(cfg, out);
        else if (cfg.command == "profile") summary = detail::run_profile(cfg, out);
        else if (cfg.command == "evolve") summary = detail::run_evolve(cfg, out, status);
        else if (cfg.command == "verify-lax") summary = detail::run_verify_lax(cfg, out, status);
        else summary = detail::run_reduce_check(cfg, out, status);

        summary["command"] = cfg.command;
        summary["status"] = status;
        io::write_json(out.add("summary.json"), json{{"summary", summary}, {"config", cfg}});
        detail::write_metadata(out, cfg);
        log << summary.dump() << '\n';
        return status;
    } catch (const DomainError& e) {
        err << "validation error: " << e.what() << '\n';
        log << json{{"command", cfg.command}, {"status", kExitValidation}, {"error", e.what()}}.dump() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        log << json{{"command", cfg.command}, {"status", kExitNumerical}, {"error", e.what()}}.dump() << '\n';
        return kExitNumerical;
    }
}

/// Parses argv into a resolved config, or returns an exit code on failure/--help.
struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
};

inline ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& log = std::cout,
                               std::ostream& err = std::cerr) {
    CLI::App app{"Financial Harry Dym travelling-wave laboratory"};
    std::string command;
    std::string config_path;
    std::optional<double> lambda, v0, lambda_spec, xmin, xmax, t_final, cfl, lambda_min, lambda_max;
    std::optional<std::size_t> n, output_stride, steps, samples;
    std::optional<std::string> output_dir;
    bool emit_plots = false;
    bool per_frame = false;

    app.add_option("command", command,
                   "scan-existence | potential | profile | evolve | verify-lax | reduce-check")
        ->required();
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--lambda", lambda, "travelling-wave speed Lambda");
    app.add_option("--v0", v0, "background level v0");
    app.add_option("--lambda-spec", lambda_spec, "spectral parameter of the Lax pair");
    app.add_option("--xmin", xmin, "left end of the periodic domain");
    app.add_option("--xmax", xmax, "right end of the periodic domain");
    app.add_option("--n", n, "number of grid nodes");
    app.add_option("--t-final", t_final, "final time for evolve");
    app.add_option("--cfl", cfl, "dispersive CFL constant, dt = cfl dx^3 / max(v)^3");
    app.add_option("--output-stride", output_stride, "steps between recorded frames (0 = auto)");
    app.add_option("--output-dir", output_dir, "output directory (fallback: $FHD_OUTPUT_DIR)");
    app.add_flag("--emit-plots", emit_plots, "write a matplotlib script next to the data");
    app.add_option("--lambda-min", lambda_min, "scan-existence lower bound");
    app.add_option("--lambda-max", lambda_max, "scan-existence upper bound");
    app.add_option("--steps", steps, "scan-existence sample count");
    app.add_option("--samples", samples, "table length for potential/phase");
    app.add_flag("--per-frame", per_frame, "evolve: one CSV per frame instead of trajectory.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        log << app.help();
        return {std::nullopt, kExitOk};
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return {std::nullopt, kExitUsage};
    }
    if (!is_command(command)) {
        err << "unknown command '" << command << "'\n" << app.help();
        return {std::nullopt, kExitUsage};
    }

    RunConfig cfg;
    bool dir_from_file = false;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw DomainError("cannot read config " + config_path);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw DomainError(std::string("config is not valid JSON: ") + e.what());
            }
            merge_json(cfg, j);
            dir_from_file = j.contains("output_dir");
        }
    } catch (const DomainError& e) {
        err << "validation error: " << e.what() << '\n';
        return {std::nullopt, kExitValidation};
    }
    cfg.command = command;
    auto apply = [](auto& field, const auto& opt) {
        if (opt) field = *opt;
    };
    apply(cfg.lambda, lambda);
    apply(cfg.v0, v0);
    apply(cfg.lambda_spec, lambda_spec);
    apply(cfg.xmin, xmin);
    apply(cfg.xmax, xmax);
    apply(cfg.n, n);
    apply(cfg.t_final, t_final);
    apply(cfg.cfl, cfl);
    apply(cfg.output_stride, output_stride);
    apply(cfg.lambda_min, lambda_min);
    apply(cfg.lambda_max, lambda_max);
    apply(cfg.steps, steps);
    apply(cfg.samples, samples);
    if (emit_plots) cfg.emit_plots = true;
    if (per_frame) cfg.per_frame = true;
    if (output_dir) {
        cfg.output_dir = *output_dir;
    } else if (!dir_from_file) {
        if (const char* env = std::getenv("FHD_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
    }
    return {cfg, kExitOk};
}

inline int main(int argc, const char* const* argv) {
    auto parsed = parse_args(argc, argv);
    if (!parsed.config) return parsed.exit_code;
    return run(*parsed.config);
}

}  // namespace fhd::cli
