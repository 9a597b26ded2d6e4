// Copyright 2026 The lsechain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Exit codes: 0 success, 1 validation failure,
// 2 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lse/bethe/roots.hpp"
#include "lse/bethe/solver.hpp"
#include "lse/errors.hpp"
#include "lse/liouvillian.hpp"
#include "lse/observables.hpp"
#include "lse/scenario/config.hpp"
#include "lse/scenario/runner.hpp"
#include "lse/spectra.hpp"

namespace {

struct ModelArgs {
  std::string bc = "obc";
  int L = 8;
  int M = -1;
  double phi = 0.5;
  double J = 1.0;
  double deltaL = 0.0;
  double deltaR = 0.0;
};

void add_model_options(CLI::App* app, ModelArgs& a) {
  app->add_option("--bc", a.bc, "Boundary mode: pbc, obc or gbc")->required();
  app->add_option("--L", a.L, "Number of sites")->required();
  app->add_option("--M", a.M, "Number of up spins (default L/2)");
  app->add_option("--phi", a.phi, "Hopping asymmetry");
  app->add_option("--J", a.J, "Hopping scale");
  app->add_option("--deltaL", a.deltaL, "Counter-flow boundary coupling (gbc)");
  app->add_option("--deltaR", a.deltaR, "Co-flow boundary coupling (gbc)");
}

lse::ModelParams to_params(const ModelArgs& a) {
  lse::ModelParams p;
  p.bc = lse::parse_boundary(a.bc);
  p.L = a.L;
  p.M = a.M < 0 ? a.L / 2 : a.M;
  p.J = a.J;
  p.phi = a.phi;
  if (p.bc == lse::Boundary::Generalized || a.deltaL != 0.0 || a.deltaR != 0.0) {
    p.delta_L = a.deltaL;
    p.delta_R = a.deltaR;
  }
  p.validate();
  return p;
}

int report_run(const lse::scenario::RunReport& r) {
  if (!r.error_json.empty()) {
    std::cerr << r.error_json << '\n';
  } else {
    std::cout << "wrote " << r.output_dir.string() << '\n';
    if (r.exit_code != 0) std::cerr << "some invariant checks failed; see verify.csv\n";
  }
  return r.exit_code;
}

int cmd_verify(int L_max, const std::string& out) {
  std::string text = "scenario = verify\nL = 2";
  for (int L = 3; L <= L_max; ++L) text += ", " + std::to_string(L);
  text += "\noutput_dir = \"" + out + "\"\n";
  return report_run(lse::scenario::run_scenario(lse::scenario::parse_config_text(text)));
}

int cmd_run(const std::string& path, const std::string& out_override) {
  lse::scenario::ScenarioConfig c = lse::scenario::parse_config(path);
  if (!out_override.empty()) c.output_dir = out_override;
  return report_run(lse::scenario::run_scenario(c));
}

int cmd_bae(const ModelArgs& a, bool compare) {
  const lse::ModelParams p = to_params(a);
  const auto sol = lse::bethe::solve_sector(p);
  lse::bethe::write_roots_csv_header(std::cout);
  for (const auto& state : sol.states) lse::bethe::write_roots_rows(std::cout, state);
  std::cerr << sol.states.size() << " states (sector dimension " << sol.sector_dimension << ", seeds "
            << sol.seeds_tried << ", rejected " << sol.seeds_rejected << ")\n";
  for (const auto& n : sol.notes) std::cerr << "note: " << n << '\n';
  if (compare) {
    const auto basis = lse::build_sector(p.L, p.M);
    const auto dense = lse::dense_spectrum(lse::build_effective_liouvillian(p, basis));
    const auto cov = lse::bethe::evaluate_coverage(sol, dense, 1e-8);
    std::cerr << "matched " << cov.matched << "/" << cov.levels << " levels, max matched distance "
              << cov.max_matched_distance << ", max distance " << cov.max_distance << '\n';
  }
  return 0;
}

int cmd_steady(const ModelArgs& a, bool profile) {
  const lse::ModelParams p = to_params(a);
  const auto basis = lse::build_sector(p.L, p.M);
  const auto s = lse::steady_state(p);
  if (profile) {
    lse::write_profile_csv_header(std::cout);
    lse::write_profile_rows(std::cout, p, lse::density_profile(s.probabilities, basis));
  } else {
    lse::write_steady_state_csv(std::cout, s, basis);
  }
  std::cerr << "method " << s.method << ", residual " << s.residual << '\n';
  return 0;
}

int cmd_export(const ModelArgs& a, bool full, double gauge, const std::string& out) {
  const lse::ModelParams p = to_params(a);
  lse::SparseOperator op;
  if (full) {
    op = lse::build_full_liouvillian(p);
  } else {
    const auto basis = lse::build_sector(p.L, p.M);
    op = lse::build_effective_liouvillian(p, basis);
    if (gauge != 0.0) op = lse::gauge_transform(op, basis, gauge);
  }
  if (out.empty() || out == "-") {
    lse::write_text(std::cout, op);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw lse::ArgumentError("cannot open " + out);
    lse::write_text(f, op);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative spin-chain toolkit: effective Liouvillians, spectra, steady states, Bethe roots"};
  app.require_subcommand(1);

  int L_max = 4;
  std::string verify_out = "lse-verify";
  auto* verify = app.add_subcommand("verify", "Run the structural invariant suite");
  verify->add_option("--L-max", L_max, "Largest chain length (<= 4)")->check(CLI::Range(2, 4));
  verify->add_option("--out", verify_out, "Output directory");

  std::string config_path;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run a scenario from a config file");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("--out", run_out, "Override output_dir");

  ModelArgs bae_args;
  bool compare = false;
  auto* bae = app.add_subcommand("bae", "Enumerate Bethe roots of one sector (CSV on stdout)");
  add_model_options(bae, bae_args);
  bae->add_flag("--compare", compare, "Match energies against the dense spectrum");

  ModelArgs steady_args;
  bool profile = false;
  auto* steady = app.add_subcommand("steady", "Steady state of one sector (CSV on stdout)");
  add_model_options(steady, steady_args);
  steady->add_flag("--profile", profile, "Print the density profile instead of probabilities");

  ModelArgs export_args;
  bool full = false;
  double gauge = 0.0;
  std::string export_out;
  auto* exp = app.add_subcommand("export-op", "Write an operator in 'dim nnz' / 'row col re im' text format");
  add_model_options(exp, export_args);
  exp->add_flag("--full", full, "Full double-space superoperator (L <= 6)");
  exp->add_option("--gauge", gauge, "Apply the imaginary gauge transform with this phi");
  exp->add_option("--out", export_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*verify) return cmd_verify(L_max, verify_out);
    if (*run) return cmd_run(config_path, run_out);
    if (*bae) return cmd_bae(bae_args, compare);
    if (*steady) return cmd_steady(steady_args, profile);
    if (*exp) return cmd_export(export_args, full, gauge, export_out);
  } catch (const lse::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const lse::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
