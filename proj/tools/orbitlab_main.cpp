/**
 * @file orbitlab_main.cpp
 * @brief Command-line front end: certify scenarios, run catalog demos, scan
 *        omega, and validate comparison functions.
 *
 * Exit codes follow the certificate verdict: 0 certified, 1 hypothesis
 * failed, 2 violation (a should-never-happen inequality breach), 3 input
 * error.
 */
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitlab/certify.hpp"
#include "orbitlab/interp.hpp"
#include "orbitlab/scenario.hpp"

namespace {

using namespace orbitlab;

struct CommonFlags {
  std::string mode = "both";
  std::string out_dir;
  double tail_tol = 1e-8;
  double ineq_tol = 1e-9;
  int grid_points = 2000;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_mode = true) {
  if (with_mode)
    cmd->add_option("--mode", flags.mode, "landau | kato | both")
        ->check(CLI::IsMember({"landau", "kato", "both"}));
  cmd->add_option("--out", flags.out_dir, "directory for certificates and curves");
  cmd->add_option("--tail-tol", flags.tail_tol, "orbit horizon tail tolerance");
  cmd->add_option("--ineq-tol", flags.ineq_tol, "inequality slack scale");
  cmd->add_option("--grid-points", flags.grid_points, "points per scan grid")
      ->check(CLI::PositiveNumber);
}

RunOptions to_options(const CommonFlags& flags) {
  RunOptions opt;
  opt.mode = certify_mode_from_string(flags.mode);
  opt.tail_tol = flags.tail_tol;
  opt.ineq_tol = flags.ineq_tol;
  opt.grid_points = flags.grid_points;
  return opt;
}

int run_and_report(const Scenario& scenario, const CommonFlags& flags) {
  const Certificate cert = run_certify(scenario, to_options(flags));
  std::cout << render_summary(cert);
  if (!flags.out_dir.empty()) {
    const auto path = write_certificate(cert, flags.out_dir);
    std::cout << "certificate: " << path.string() << "\n";
  }
  return exit_code_for(cert.verdict);
}

std::vector<double> parse_omega_list(const std::string& csv) {
  std::vector<double> omegas;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    omegas.push_back(std::stod(item));
  }
  return omegas;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitlab: semigroup orbit decay certificates and operator-norm "
               "inequality margins"};
  app.require_subcommand(1);

  // certify <scenario-file>
  std::string scenario_file;
  std::uint64_t certify_seed = 0;
  CommonFlags certify_flags;
  auto* certify_cmd = app.add_subcommand("certify", "certify a scenario file");
  certify_cmd->add_option("scenario", scenario_file, "scenario JSON file")->required();
  auto* certify_seed_opt = certify_cmd->add_option(
      "--seed", certify_seed, "override the seed of a randomized scenario");
  add_common(certify_cmd, certify_flags);

  // demo <catalog-name>
  std::string demo_name;
  std::uint64_t demo_seed = 0;
  CommonFlags demo_flags;
  auto* demo_cmd = app.add_subcommand("demo", "run a catalog scenario");
  demo_cmd->add_option("name", demo_name, "catalog scenario name")->required();
  auto* demo_seed_opt =
      demo_cmd->add_option("--seed", demo_seed, "override the seed of a randomized scenario");
  add_common(demo_cmd, demo_flags);

  // scan-omega <scenario-file> --omegas ...
  std::string scan_file;
  std::string scan_omegas;
  CommonFlags scan_flags;
  auto* scan_cmd =
      app.add_subcommand("scan-omega", "tabulate bounds for weakened decay rates");
  scan_cmd->add_option("scenario", scan_file, "scenario JSON file")->required();
  scan_cmd->add_option("--omegas", scan_omegas, "comma-separated list, each <= scenario omega")
      ->required();
  add_common(scan_cmd, scan_flags, /*with_mode=*/false);

  // phi-check <name>
  std::string phi_name;
  double phi_tmax = 100.0;
  int phi_points = 1001;
  auto* phi_cmd = app.add_subcommand("phi-check", "validate a comparison function");
  phi_cmd->add_option("phi", phi_name, "exp | quad | custom:PATH")->required();
  phi_cmd->add_option("--tmax", phi_tmax, "validation grid end");
  phi_cmd->add_option("--points", phi_points, "validation grid size")
      ->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list", "print the scenario catalog");

  CLI11_PARSE(app, argc, argv);

  auto reseed = [](Scenario& scenario, std::uint64_t seed) {
    if (!scenario.seed) {
      std::cerr << "error: scenario '" << scenario.name << "' is not randomized\n";
      return false;
    }
    scenario.generator =
        random_skew_dissipative(scenario.generator.dim(), scenario.omega, seed);
    scenario.f = random_state(scenario.generator.dim(), seed + 1);
    scenario.generator_spec["seed"] = seed;
    scenario.seed = seed;
    return true;
  };

  try {
    if (certify_cmd->parsed()) {
      Scenario scenario = parse_scenario(scenario_file);
      if (certify_seed_opt->count() > 0 && !reseed(scenario, certify_seed))
        return exit_code_for(Verdict::input_error);
      return run_and_report(scenario, certify_flags);
    }

    if (demo_cmd->parsed()) {
      Scenario scenario = catalog_scenario(demo_name);
      if (demo_seed_opt->count() > 0 && !reseed(scenario, demo_seed))
        return exit_code_for(Verdict::input_error);
      return run_and_report(scenario, demo_flags);
    }

    if (scan_cmd->parsed()) {
      const Scenario scenario = parse_scenario(scan_file);
      const std::vector<double> omegas = parse_omega_list(scan_omegas);
      if (omegas.empty()) {
        std::cerr << "error: --omegas list is empty\n";
        return exit_code_for(Verdict::input_error);
      }
      for (double w : omegas) {
        if (w > scenario.omega) {
          std::cerr << "error: omega " << w << " exceeds the scenario omega "
                    << scenario.omega << " (larger rates strengthen the hypothesis)\n";
          return exit_code_for(Verdict::input_error);
        }
      }
      const auto rows =
          omega_scan(scenario.generator, scenario.f, scenario.norm, omegas);
      const std::string csv = omega_scan_csv(rows);
      std::cout << csv;
      if (!scan_flags.out_dir.empty()) {
        std::filesystem::create_directories(scan_flags.out_dir);
        const auto path = std::filesystem::path(scan_flags.out_dir) /
                          (scenario.name + "_omega_scan.csv");
        std::ofstream out(path, std::ios::binary);
        out << csv;
        std::cout << "table: " << path.string() << "\n";
      }
      return 0;
    }

    if (phi_cmd->parsed()) {
      const ComparisonFunction phi = ComparisonFunction::from_name(phi_name);
      const double t_max = std::min(phi_tmax, phi.max_t());
      const AdmissibilityReport r = validate_phi(phi, uniform_grid(t_max, phi_points));
      auto line = [](const char* what, const ConditionCheck& c) {
        std::printf("  %-14s %s (worst %.3g at t=%.6g)\n", what,
                    c.pass ? "pass" : "FAIL", c.worst, c.at_t);
      };
      if (phi.kind() == PhiKind::custom_sampled)
        std::printf("phi: %s (%s), validated on its %zu-sample grid\n",
                    phi.name().c_str(), std::string(to_string(phi.kind())).c_str(),
                    phi.samples().size());
      else
        std::printf("phi: %s (%s), grid [0, %g] with %d points\n", phi.name().c_str(),
                    std::string(to_string(phi.kind())).c_str(), t_max, phi_points);
      line("value_at_zero", r.value_at_zero);
      line("slope_at_zero", r.slope_at_zero);
      line("decreasing", r.decreasing);
      line("convex", r.convex);
      line("majorized", r.majorized);
      line("positive", r.positive);
      std::printf("admissible: %s\n", r.pass ? "yes" : "NO");
      return r.pass ? 0 : exit_code_for(Verdict::hypothesis_failed);
    }

    if (list_cmd->parsed()) {
      for (const auto& s : catalog()) {
        std::printf("%-28s n=%-3zu phi=%-5s omega=%-10.6g expected=%s%s\n",
                    s.name.c_str(), s.generator.dim(), s.phi_name.c_str(), s.omega,
                    s.expected.c_str(),
                    s.seed ? (" seed=" + std::to_string(*s.seed)).c_str() : "");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(Verdict::input_error);
  }
  return 0;
}
