// arcfreq: natural frequencies of cracked, stepped nonlocal nano-arches.
//
// Exit codes: 0 success, 1 a comparison ran and failed, 2 bad input or
// configuration, 3 solver failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arcfreq/config.hpp"
#include "arcfreq/sweep.hpp"
#include "arcfreq/tables.hpp"

namespace {

using namespace arcfreq;
using namespace arcfreq::cli;

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct CommonFlags {
  std::optional<int> modes;
  std::string free_edge;
  std::string compliance_model;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_modes = true) {
  if (with_modes) cmd->add_option("--modes", f.modes, "number of modes")->check(CLI::PositiveNumber);
  cmd->add_option("--free-edge", f.free_edge, "free-edge moment condition")
      ->check(CLI::IsMember({"consistent", "paper_literal"}));
  cmd->add_option("--compliance-model", f.compliance_model, "crack compliance scaling")
      ->check(CLI::IsMember({"paper", "dimarogonas"}));
}

void apply(const CommonFlags& f, Scenario& s) {
  if (f.modes) s.modes = *f.modes;
  if (!f.free_edge.empty()) s.options.free_edge = parse_free_edge(f.free_edge);
  if (!f.compliance_model.empty()) s.options.compliance = parse_compliance_model(f.compliance_model);
}

ModelOptions options_from(const CommonFlags& f) {
  Scenario s;
  apply(f, s);
  return s.options;
}

std::filesystem::path prepare_out(const std::string& dir) {
  std::filesystem::path p(dir.empty() ? "." : dir);
  std::filesystem::create_directories(p);
  return p;
}

void print_checks(const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.label << ": " << c.detail << '\n';
  }
}

int run_solve(const std::string& path, const CommonFlags& flags, const std::string& out_dir) {
  Config cfg = load_config(path);
  apply(flags, cfg.scenario);
  const ResolvedScenario r = resolve(cfg.scenario);
  const DimensionlessProblem problem = make_problem(cfg.scenario);
  const ModeSet set = modes(problem, cfg.scenario.modes, cfg.scenario.solve);

  std::cout << "eta_bar = " << format_number(problem.eta_bar)
            << ", h0/R = " << format_number(problem.slenderness) << '\n';
  for (const Crack& c : problem.cracks) {
    std::cout << "crack at " << format_number(c.angle) << " rad, s = " << format_number(c.depth_ratio)
              << ", kappa = " << format_number(c.kappa) << '\n';
  }
  std::cout << "mode  Omega            omega [rad/s]     kind           multiplicity\n";
  for (const ModeResult& m : set.modes) {
    std::printf("%-5d %-16s %-17s %-14s %d\n", m.index, format_number(m.omega).c_str(),
                format_number(to_rad_per_s(m.omega, cfg.scenario.material, r.geometry)).c_str(),
                to_string(m.kind), m.multiplicity);
  }
  for (const auto& d : set.diagnostics) std::cerr << "note: " << d << '\n';

  if (!out_dir.empty()) {
    const auto dir = prepare_out(out_dir);
    std::ofstream modes_csv(dir / "modes.csv", std::ios::binary);
    modes_csv << "mode_index,omega_dimensionless,omega_rad_per_s,root_kind,multiplicity\n";
    std::ofstream shapes_csv(dir / "mode_shapes.csv", std::ios::binary);
    shapes_csv << "mode_index,angle_rad,displacement\n";
    for (const ModeResult& m : set.modes) {
      modes_csv << m.index << ',' << format_number(m.omega) << ','
                << format_number(to_rad_per_s(m.omega, cfg.scenario.material, r.geometry)) << ','
                << to_string(m.kind) << ',' << m.multiplicity << '\n';
      for (std::size_t i = 0; i < m.shape_angle.size(); ++i) {
        shapes_csv << m.index << ',' << format_number(m.shape_angle[i]) << ','
                   << format_number(m.shape_value[i]) << '\n';
      }
    }
  }
  if (!set.complete) {
    std::cerr << "error: found " << set.modes.size() << " of " << cfg.scenario.modes << " modes\n";
    return kExitSolver;
  }
  return 0;
}

int run_sweeps(const std::string& path, const CommonFlags& flags, const std::string& out_dir,
               bool serial) {
  Config cfg = load_config(path);
  apply(flags, cfg.scenario);
  if (cfg.sweeps.empty()) throw ConfigError("config defines no sweeps", "/sweeps");
  const auto dir = prepare_out(out_dir);
  int status = 0;
  for (SweepSpec sweep : cfg.sweeps) {
    if (flags.modes) sweep.modes = *flags.modes;
    const SweepOutcome result =
        run_sweep(cfg.scenario, sweep, serial ? Execution::Serial : Execution::Parallel);
    const auto file = dir / (sweep.name + ".csv");
    std::ofstream csv(file, std::ios::binary);
    write_sweep_csv(csv, result.rows);
    std::cout << sweep.name << ": " << result.rows.size() << " rows -> " << file.string() << '\n';
    for (const SweepFailure& f : result.failures) {
      std::cerr << "error: " << describe_point(sweep.name, sweep.parameter, f.swept_value,
                                               sweep.family_parameter, f.family_value)
                << ": " << f.message << '\n';
      status = kExitSolver;
    }
  }
  return status;
}

int run_tables(const std::string& which, const CommonFlags& flags) {
  const ModelOptions options = options_from(flags);
  std::vector<Check> checks;
  if (which == "table1") {
    const Table1Result t = compute_table1(options);
    std::cout << "Clamped-free arch, beta = 30 deg, R = 110 nm, h0 = 5 nm\n" << format_table1(t);
    checks = table1_checks(t);
  } else {
    const Table2Result t = compute_table2(options);
    std::cout << "Ring, R = 110 nm, h0 = 5 nm; defect: s = 0.5 at phi = pi\n" << format_table2(t);
    checks = table2_checks(t);
  }
  print_checks(checks);
  return 0;
}

int run_oracle(const std::string& path, const CommonFlags& flags, std::size_t nodes, bool negate) {
  Config cfg = load_config(path);
  apply(flags, cfg.scenario);
  const DimensionlessProblem problem = make_problem(cfg.scenario);
  const int k = flags.modes.value_or(3);
  const OracleCheckReport report = oracle_check(problem, nodes, k, negate);
  std::cout << format_oracle_check(report);
  return report.pass ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural frequencies of cracked, stepped nonlocal nano-arches and rings"};
  app.require_subcommand(1);

  CommonFlags solve_flags;
  std::string solve_config;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve", "first k natural frequencies and mode shapes");
  solve->add_option("config", solve_config, "JSON configuration")->required();
  solve->add_option("--out", solve_out, "directory for modes.csv and mode_shapes.csv");
  add_common(solve, solve_flags);

  CommonFlags sweep_flags;
  std::string sweep_config;
  std::string sweep_out = ".";
  bool sweep_serial = false;
  auto* sweep = app.add_subcommand("sweep", "run every sweep of a configuration to CSV");
  sweep->add_option("config", sweep_config, "JSON configuration")->required();
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_flag("--serial", sweep_serial, "solve sweep points one at a time");
  add_common(sweep, sweep_flags);

  CommonFlags table_flags;
  std::string which;
  auto* table = app.add_subcommand("table-compare", "recompute the published tables and compare ratios");
  table->add_option("--which", which, "table1 or table2")->required()->check(CLI::IsMember({"table1", "table2"}));
  add_common(table, table_flags, false);

  CommonFlags oracle_flags;
  std::string oracle_config;
  std::size_t nodes = 4000;
  bool negate = false;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare determinant roots with the finite-difference solver");
  oracle_cmd->add_option("config", oracle_config, "JSON configuration")->required();
  oracle_cmd->add_option("--nodes", nodes, "finite-difference intervals");
  oracle_cmd->add_flag("--negate-kappa", negate)->group("");  // negative control
  add_common(oracle_cmd, oracle_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*solve) return run_solve(solve_config, solve_flags, solve_out);
    if (*sweep) return run_sweeps(sweep_config, sweep_flags, sweep_out, sweep_serial);
    if (*table) return run_tables(which, table_flags);
    if (*oracle_cmd) return run_oracle(oracle_config, oracle_flags, nodes, negate);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ModelError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
