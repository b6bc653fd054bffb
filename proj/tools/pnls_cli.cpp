#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pnls/errors.hpp"
#include "pnls/groundstate.hpp"
#include "pnls/io.hpp"
#include "pnls/selfcheck.hpp"
#include "pnls/stability.hpp"

namespace fs = std::filesystem;
using namespace pnls;

namespace {

enum Exit { ok = 0, selfcheck_failed = 1, solver_failed = 2, bad_parameters = 3 };

struct RunConfig {
  double alpha = 0.0;
  double p = std::nan("");
  double omega = std::nan("");
  double omega_min = std::nan("");
  double omega_max = std::nan("");
  int points = 20;
  int grid_n = 4096;
  double grid_r = 40.0;
  std::string out_dir = ".";
  bool emit_svg = false;
  double k0_perturbation = 0.0;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

template <class Fn>
void write_stream(const fs::path& path, Fn&& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  fn(os);
}

void require_p(const RunConfig& cfg) {
  if (std::isnan(cfg.p)) throw ParameterError("--p is required");
}

GridPtr grid_of(const RunConfig& cfg) {
  if (cfg.grid_n < 16) throw ParameterError("--grid-n must be at least 16");
  return make_grid(cfg.grid_n, cfg.grid_r);
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path d(cfg.out_dir);
  fs::create_directories(d);
  return d;
}

int cmd_selfcheck(const RunConfig& cfg) {
  SelfcheckOptions so;
  so.grid_n = cfg.grid_n;
  so.grid_r = cfg.grid_r;
  so.k0_perturbation = cfg.k0_perturbation;
  const auto t0 = std::chrono::steady_clock::now();
  const auto lines = run_selfcheck(so);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool all = true;
  for (const auto& l : lines) {
    std::printf("%s  %-58s measured %.3e  tol %.1e%s%s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.measured,
                l.tolerance, l.detail.empty() ? "" : "  ", l.detail.c_str());
    all = all && l.pass;
  }
  std::printf("grid n = %d, R = %g, %.2f s\n", cfg.grid_n, cfg.grid_r, secs);
  return all ? ok : selfcheck_failed;
}

int cmd_classic(const RunConfig& cfg) {
  require_p(cfg);
  const GridPtr grid = grid_of(cfg);
  if (!(cfg.p > 1.0 && cfg.p <= 8.0)) throw ParameterError("p must lie in (1, 8]");
  const ClassicProfile cp = solve_classic(cfg.p, grid);
  const fs::path dir = out_dir(cfg);
  const std::string stem = classic_file_stem(cfg.p);
  write_stream(dir / (stem + ".csv"), [&](std::ostream& os) { write_classic_csv(os, cp); });
  write_file(dir / (stem + ".json"), classic_json(cp));
  std::printf("p = %g  u0 = %.12f  mass = %.12f  action = %.12f  pohozaev = %.2e\n", cfg.p, cp.u0, cp.mass,
              cp.action_infty, cp.pohozaev_residual);
  return ok;
}

int cmd_solve(const RunConfig& cfg) {
  require_p(cfg);
  if (std::isnan(cfg.omega)) throw ParameterError("--omega is required");
  check_admissible(cfg.alpha, cfg.p, cfg.omega);
  const GridPtr grid = grid_of(cfg);
  const GroundState gs = solve_ground(cfg.alpha, cfg.p, cfg.omega, grid);
  const fs::path dir = out_dir(cfg);
  const std::string stem = ground_file_stem(cfg.alpha, cfg.p, cfg.omega);
  write_stream(dir / (stem + ".csv"), [&](std::ostream& os) { write_ground_csv(os, gs); });
  write_file(dir / (stem + ".json"), ground_json(gs));
  std::printf("omega = %g  beta = %.6f  f0 = %.10f  action = %.10f  mass = %.10f  nehari = %.2e  pohozaev = %.2e  "
              "iters = %d\n",
              cfg.omega, gs.profile.beta, gs.profile.f0, gs.action, gs.mass_physical, gs.nehari_residual,
              gs.pohozaev_residual, gs.newton_iters);
  return ok;
}

int cmd_sweep(const RunConfig& cfg) {
  require_p(cfg);
  if (std::isnan(cfg.omega_min) || std::isnan(cfg.omega_max))
    throw ParameterError("--omega-min and --omega-max are required");
  if (!(cfg.omega_max > cfg.omega_min)) throw ParameterError("--omega-max must exceed --omega-min");
  if (cfg.points < 3) throw ParameterError("--points must be at least 3");
  check_admissible(cfg.alpha, cfg.p, cfg.omega_min);
  check_admissible(cfg.alpha, cfg.p, cfg.omega_max);
  const GridPtr grid = grid_of(cfg);

  std::vector<double> omegas(cfg.points);
  const double la = std::log(cfg.omega_min), lb = std::log(cfg.omega_max);
  for (int k = 0; k < cfg.points; ++k) omegas[k] = std::exp(la + (lb - la) * k / (cfg.points - 1));
  omegas.front() = cfg.omega_min;
  omegas.back() = cfg.omega_max;

  const auto sweep = continue_sweep(cfg.alpha, cfg.p, omegas, grid);
  const fs::path dir = out_dir(cfg);
  std::vector<GroundState> states;
  for (const auto& pt : sweep) {
    if (pt.state) {
      states.push_back(*pt.state);
      write_file(dir / (ground_file_stem(cfg.alpha, cfg.p, pt.omega) + ".json"), ground_json(*pt.state));
    } else {
      std::fprintf(stderr, "omega = %g failed: %s\n", pt.omega, pt.error.c_str());
    }
  }
  if (states.size() < 3) throw ConvergenceError("fewer than 3 converged points; no mass curve");
  const MassCurve curve = mass_curve(states);
  const std::string stem = sweep_file_stem(cfg.alpha, cfg.p);
  write_stream(dir / (stem + ".csv"), [&](std::ostream& os) { write_mass_curve_csv(os, curve, sweep); });
  if (cfg.emit_svg) write_file(dir / (stem + ".svg"), mass_curve_svg(curve));

  std::printf("%14s %10s %16s %12s %12s  %s\n", "omega", "beta", "mass", "dmass", "asymptotic", "class");
  for (size_t k = 0; k < curve.omegas.size(); ++k)
    std::printf("%14.6g %10.6f %16.10g %12.4e %12.4e  %s\n", curve.omegas[k], curve.beta[k], curve.mass[k],
                curve.dmass[k], curve.dmass_asymptotic[k], to_string(curve.classification[k]).c_str());
  const auto changes = sign_changes(curve);
  if (changes.empty()) std::printf("no sign change of dmass\n");
  for (const auto& [a, b] : changes) std::printf("dmass sign change in (%.10g, %.10g)\n", a, b);
  const Vec ratio = domega_f0_ratio(states);
  if (!ratio.empty()) {
    double lo = ratio[0], hi = ratio[0];
    for (double r : ratio) lo = std::min(lo, r), hi = std::max(hi, r);
    std::printf("omega beta^1.5 df0/domega in [%.4e, %.4e]\n", lo, hi);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states of the 2D NLS with a point interaction"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1, 1);

  RunConfig cfg;
  app.add_option("--alpha", cfg.alpha, "interaction strength");
  app.add_option("--p", cfg.p, "nonlinearity power, 1 < p <= 8");
  app.add_option("--omega", cfg.omega, "frequency for solve");
  app.add_option("--omega-min,--omega_min", cfg.omega_min, "sweep lower end");
  app.add_option("--omega-max,--omega_max", cfg.omega_max, "sweep upper end");
  app.add_option("--points", cfg.points, "sweep size (log-spaced)");
  app.add_option("--grid-n,--grid_n", cfg.grid_n, "radial nodes");
  app.add_option("--grid-r,--grid_r", cfg.grid_r, "truncation radius");
  app.add_option("--out-dir,--out_dir", cfg.out_dir, "output directory");
  app.add_flag("--emit-svg,--emit_svg", cfg.emit_svg, "write the mass curve as SVG");
  app.add_option("--inject-k0-perturbation", cfg.k0_perturbation)->group("");

  auto* sc = app.add_subcommand("selfcheck", "identity suite");
  auto* cl = app.add_subcommand("classic", "classical ground state (no point interaction)");
  auto* so = app.add_subcommand("solve", "single ground state");
  auto* sw = app.add_subcommand("sweep", "omega sweep and mass-curve classification");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bad_parameters;
  }

  try {
    if (*sc) return cmd_selfcheck(cfg);
    if (*cl) return cmd_classic(cfg);
    if (*so) return cmd_solve(cfg);
    if (*sw) return cmd_sweep(cfg);
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return bad_parameters;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return bad_parameters;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return solver_failed;
  }
  return bad_parameters;
}
