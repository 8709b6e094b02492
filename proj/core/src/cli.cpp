#include "thermoflow/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "thermoflow/config.hpp"
#include "thermoflow/io.hpp"
#include "thermoflow/mms.hpp"

namespace thermoflow {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

int cmd_run(const std::string& path, std::ostream& out) {
  const Config cfg = parse_config(path);
  const Scenario scenario = make_scenario(cfg.run.scenario);
  if (scenario.model) out << "note: scenario '" << scenario.name << "' uses its own constitutive model\n";
  auto mesh = make_mesh(cfg.run);
  if (!cfg.run.mesh_file.empty() && !mesh_quality(*mesh).is_acute) {
    out << "warning: mesh is not acute; temperature positivity is not guaranteed\n";
  }
  TimeStepper stepper(make_discretization(mesh), cfg.run, scenario);
  const Trajectory traj = run(stepper, cfg.run, stepper.initialize());

  std::filesystem::create_directories(cfg.output_dir);
  const std::filesystem::path dir(cfg.output_dir);
  if (cfg.write_csv) write_diagnostics_csv(traj, (dir / "diagnostics.csv").string());
  if (cfg.write_vtk) {
    for (std::size_t j = 0; j < traj.states().size(); ++j) {
      char name[32];
      std::snprintf(name, sizeof name, "fields_%04zu.vtk", j);
      write_fields_vtk(traj.states()[j], (dir / name).string());
    }
  }
  const auto& last = traj.records().back();
  double worst_energy = 0.0, min_theta = last.min_theta;
  for (const auto& r : traj.records()) {
    worst_energy = std::max(worst_energy, std::abs(r.energy_residual));
    min_theta = std::min(min_theta, r.min_theta);
  }
  out << "steps " << traj.states().size() - 1 << ", t = " << last.t << "\n"
      << "kinetic " << fmt("%.10e", last.kinetic) << ", internal " << fmt("%.10e", last.internal) << "\n"
      << "max |energy residual| " << fmt("%.3e", worst_energy) << ", min theta " << fmt("%.12g", min_theta)
      << "\n";
  return 0;
}

int cmd_mms(const std::string& name, int levels, const std::string& study, int first, double T,
            double tau0, std::ostream& out) {
  const MmsCase mms = mms_case(name);
  ConvergenceOptions opt;
  std::vector<ConvergenceLevel> lv;
  if (study == "space") {
    opt.T = T > 0 ? T : 0.0625;
    lv = space_study_levels(first, levels, tau0 > 0 ? tau0 : 1.0 / 32.0);
  } else if (study == "time") {
    opt.T = T > 0 ? T : 1.0;
    std::vector<double> taus;
    for (int i = 0; i < levels; ++i) taus.push_back((tau0 > 0 ? tau0 : 0.1) / std::pow(2.0, i));
    lv = time_study_levels(first, taus);
  } else {
    throw ValidationError("--study must be 'space' or 'time'");
  }
  const ConvergenceTable table = run_convergence(mms, lv, opt);
  out << "case " << table.case_name << " (" << study << " study, T = " << opt.T << ")\n";
  out << "level        h          tau   steps     |u-uh|      |D(u-uh)|   |th-thh|   picard\n";
  for (const auto& r : table.rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%5d %10.4e %10.4e %6d %11.4e %11.4e %11.4e %6d\n", r.mesh_level, r.h,
                  r.tau, r.steps, r.err_u_l2, r.err_du_l2, r.err_theta_l2, r.max_picard_iters);
    out << buf;
  }
  out << "observed orders (u L2, Du L2, theta L2)\n";
  for (const auto& o : table.orders) {
    char buf[32];
    out << " ";
    for (double v : o) {
      if (std::isfinite(v)) {
        std::snprintf(buf, sizeof buf, " %7.3f", v);
      } else {
        std::snprintf(buf, sizeof buf, " %7s", "n/a");
      }
      out << buf;
    }
    out << "\n";
  }
  return 0;
}

int cmd_wsu(const std::string& path, double eps, std::ostream& out) {
  const Config cfg = parse_config(path);
  const WsuResult r = run_wsu_experiment(make_scenario(cfg.run.scenario), eps, cfg.run);
  out << "t,relative_energy\n";
  for (std::size_t j = 0; j < r.times.size(); ++j) {
    out << fmt("%.17g", r.times[j]) << ',' << fmt("%.17g", r.relative_energy[j]) << '\n';
  }
  out << "E0 = " << fmt("%.10e", r.E0) << "\n";
  if (r.fit.uniqueness_violation) {
    out << "uniqueness violation: E0 = 0 but the perturbed run departs\n";
  } else {
    out << "C_est = " << fmt("%.6g", r.fit.C_est) << "\n";
  }
  out << "bound E_j <= E0 exp(C_est t_j): " << (r.bound_holds ? "holds" : "violated") << "\n";
  return 0;
}

int cmd_check_model(const std::string& path, std::ostream& out) {
  const Config cfg = parse_config(path);
  const ConstitutiveModel& m = cfg.run.model;
  const int n = cfg.check_samples;
  const auto seed = cfg.check_seed;
  out << "model " << to_string(m.kind) << ", r = " << m.r << ", samples " << n << ", seed " << seed << "\n";
  const auto mono = check_monotonicity(m, n, seed);
  out << "monotonicity: min pairing " << fmt("%.6e", mono.min_pairing) << ", strong-monotonicity estimate "
      << fmt("%.6e", mono.strong_mono_constant_est) << "\n";
  const auto gc = check_growth_coercivity(m, n, seed);
  out << "growth constant estimate " << fmt("%.6e", gc.growth_c_est) << ", coercivity constant estimate "
      << fmt("%.6e", gc.coercivity_c_est) << " (offset g = " << gc.offset_g << ")\n";
  const auto lip = check_theta_lipschitz(m, 0.1, 10.0, n, seed);
  out << "theta-Lipschitz estimate " << fmt("%.6e", lip.C_est) << "\n";
  const auto& k = cfg.run.conductivity;
  out << "conductivity " << to_string(k.kind) << ": bounds [" << k.c1 << ", " << k.upper_bound() << "]\n";
  return 0;
}

int cmd_infsup(int levels, int first, std::ostream& out) {
  if (levels < 1) throw ValidationError("--levels must be at least 1");
  for (int l = first; l < first + levels; ++l) {
    auto mesh = std::make_shared<const Mesh>(unit_square_mesh(l));
    const auto d = make_discretization(mesh);
    const InfSupResult r = inf_sup_constant(*d.velocity, *d.pressure);
    out << "level " << l << " (" << (1 << l) << "x" << (1 << l) << "): beta_h = " << fmt("%.6f", r.constant) << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat-conducting non-Newtonian flow simulator", "thermoflow"};
  app.require_subcommand(1);

  std::string run_cfg;
  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a config file");
  run_cmd->add_option("config", run_cfg, "config file")->required();

  std::string mms_name, study = "space";
  int mms_levels = 3, mms_first = 3;
  double mms_T = 0.0, mms_tau0 = 0.0;
  auto* mms_cmd = app.add_subcommand("mms", "Manufactured-solution convergence study");
  mms_cmd->add_option("case", mms_name, "stokes_heat | carreau_heat | rest_state")->required();
  mms_cmd->add_option("--levels", mms_levels, "number of levels")->check(CLI::Range(1, 8));
  mms_cmd->add_option("--study", study, "space (tau ~ h^2) or time (fixed mesh)");
  mms_cmd->add_option("--first", mms_first, "first mesh level (time study: the mesh level)")->check(CLI::Range(0, 7));
  mms_cmd->add_option("--T", mms_T, "final time");
  mms_cmd->add_option("--tau0", mms_tau0, "time step on the first level");

  std::string wsu_cfg;
  double eps = 1e-2;
  auto* wsu_cmd = app.add_subcommand("wsu", "Relative-energy perturbation experiment");
  wsu_cmd->add_option("config", wsu_cfg, "config file")->required();
  wsu_cmd->add_option("--eps", eps, "perturbation amplitude");

  std::string check_cfg;
  auto* check_cmd = app.add_subcommand("check-model", "Sample constitutive-law properties");
  check_cmd->add_option("config", check_cfg, "config file")->required();

  int is_levels = 3, is_first = 3;
  auto* infsup_cmd = app.add_subcommand("infsup", "Discrete inf-sup constants");
  infsup_cmd->add_option("--levels", is_levels, "number of levels")->check(CLI::Range(1, 4));
  infsup_cmd->add_option("--first", is_first, "first mesh level")->check(CLI::Range(1, 5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (*run_cmd) return cmd_run(run_cfg, out);
    if (*mms_cmd) {
      if (mms_levels < 3) throw ValidationError("a convergence study needs --levels >= 3");
      return cmd_mms(mms_name, mms_levels, study, mms_first, mms_T, mms_tau0, out);
    }
    if (*wsu_cmd) return cmd_wsu(wsu_cfg, eps, out);
    if (*check_cmd) return cmd_check_model(check_cfg, out);
    if (*infsup_cmd) return cmd_infsup(is_levels, is_first, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 1;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace thermoflow
