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


#include "lse/scenario/runner.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "lse/bethe/roots.hpp"
#include "lse/bethe/solver.hpp"
#include "lse/format.hpp"
#include "lse/liouvillian.hpp"
#include "lse/observables.hpp"
#include "lse/scenario/csv.hpp"
#include "lse/scenario/fit.hpp"
#include "lse/scenario/verify.hpp"
#include "lse/spectra.hpp"

namespace lse::scenario {

namespace {

using nlohmann::json;

constexpr const char* kFitHeader = "quantity,bc,phi,deltaL,deltaR,abscissa,slope,intercept,r,points\n";
constexpr const char* kSpectrumHeader = "index,re,im\n";

struct GridPoint {
  int L = 0;
  int M = 0;
  double phi = 0.0;
  double delta_L = 0.0;
  double delta_R = 0.0;
  std::size_t phi_index = 0;
  std::size_t dl_index = 0;
  std::size_t dr_index = 0;
};

/// Sample for a finite-size fit; grouped by everything except L.
struct FitSample {
  std::string quantity;
  std::string abscissa;
  ModelParams params;
  std::size_t phi_index = 0;
  std::size_t dl_index = 0;
  std::size_t dr_index = 0;
  double x = 0.0;
  double y = 0.0;
};

struct PointOutput {
  std::map<std::string, std::string> files;
  std::vector<FitSample> samples;
  json meta = json::object();
  std::vector<std::string> notes;
  std::size_t failed_checks = 0;
};

/// Where a grid point currently is; read by the error report.
struct Context {
  std::string operation = "setup";
  std::optional<ModelParams> params;
};

struct Failure {
  std::string kind;
  std::string type;
  std::string message;
  Context context;
  json extra = json::object();
};

json params_json(const ModelParams& p) {
  return {{"bc", std::string(to_string(p.bc))}, {"L", p.L},        {"M", p.M},          {"J", p.J},
          {"phi", p.phi},                      {"deltaL", p.delta_L}, {"deltaR", p.delta_R}};
}

ModelParams make_params(const ScenarioConfig& c, const GridPoint& g, Boundary bc) {
  ModelParams p;
  p.L = g.L;
  p.M = g.M;
  p.J = c.J;
  p.phi = g.phi;
  p.bc = bc;
  if (bc == Boundary::Generalized) {
    p.delta_L = g.delta_L;
    p.delta_R = g.delta_R;
  }
  return p;
}

std::string spectrum_name(const ModelParams& p, const GridPoint& g) {
  return "spectra/" + std::string(to_string(p.bc)) + "_L" + std::to_string(p.L) + "_M" + std::to_string(p.M) + "_p" +
         std::to_string(g.phi_index) + "_l" + std::to_string(g.dl_index) + "_r" + std::to_string(g.dr_index) + ".csv";
}

class PointRunner {
 public:
  PointRunner(const ScenarioConfig& c, const GridPoint& g, Context& ctx, PointOutput& out)
      : c_(c), g_(g), ctx_(ctx), out_(out) {}

  void run() {
    switch (c_.scenario) {
      case ScenarioKind::Fig2:
        fig2();
        break;
      case ScenarioKind::Fig3a:
        fig3a();
        break;
      case ScenarioKind::Fig3b:
        fig3b();
        break;
      case ScenarioKind::Fig4:
        fig4();
        break;
      case ScenarioKind::Verify:
        verify();
        break;
      case ScenarioKind::BaeScan:
        bae_scan();
        break;
      case ScenarioKind::Custom:
        custom();
        break;
    }
  }

  void flush() {
    for (auto& [name, s] : streams_) out_.files[name] = s->str();
  }

 private:
  void stage(const std::string& operation, const ModelParams& p) {
    ctx_.operation = operation;
    ctx_.params = p;
  }

  SteadyState steady(const ModelParams& p) {
    stage("steady_state", p);
    SteadyStateOptions o;
    o.tolerance = c_.steady_tolerance;
    o.max_iterations = c_.steady_max_iterations;
    o.dense_limit = c_.steady_dense_limit;
    SteadyState s = steady_state(p, o);
    out_.meta["steady_state"].push_back({{"params", params_json(p)},
                                         {"method", s.method},
                                         {"residual", s.residual},
                                         {"iterations", s.iterations}});
    return s;
  }

  SpectrumResult spectrum(const ModelParams& p, VectorRequest vectors) {
    stage("dense_spectrum", p);
    const SectorBasis basis = build_sector(p.L, p.M);
    SpectrumResult s = dense_spectrum(build_effective_liouvillian(p, basis), vectors);
    out_.meta["dense_spectrum"].push_back(
        {{"params", params_json(p)}, {"dimension", s.size()}, {"max_residual", s.max_residual}});
    return s;
  }

  std::vector<double> profile_of(const ModelParams& p, const SteadyState& s) {
    stage("density_profile", p);
    const SectorBasis basis = build_sector(p.L, p.M);
    ObservableRecord r = make_record(p, density_profile(s.probabilities, basis), "steady");
    write_profile_rows(stream("profiles.csv"), p, r.density_profile);
    return r.density_profile;
  }

  std::ostringstream& stream(const std::string& name) {
    auto it = streams_.find(name);
    if (it == streams_.end()) it = streams_.emplace(name, std::make_unique<std::ostringstream>()).first;
    return *it->second;
  }

  void scalar(const std::string& file, const ModelParams& p, const std::string& name, double value) {
    write_scalar_row(stream(file), {p, name, value});
  }

  void sample(const std::string& quantity, const std::string& abscissa, const ModelParams& p, double x, double y) {
    out_.samples.push_back({quantity, abscissa, p, g_.phi_index, g_.dl_index, g_.dr_index, x, y});
  }

  void write_spectrum(const ModelParams& p, const SpectrumResult& s) {
    std::ostringstream& o = stream(spectrum_name(p, g_));
    write_spectrum_csv(o, s);
  }

  void fig2() {
    const ModelParams p = make_params(c_, g_, Boundary::Open);
    const auto profile = profile_of(p, steady(p));
    stage("imbalance", p);
    scalar("imbalance.csv", p, "imbalance", imbalance(profile));
  }

  void fig3a() {
    const ModelParams gbc = make_params(c_, g_, Boundary::Generalized);
    const ModelParams obc = make_params(c_, g_, Boundary::Open);
    const double ig = imbalance(profile_of(gbc, steady(gbc)));
    const double io = imbalance(profile_of(obc, steady(obc)));
    const double d = ig - io;
    scalar("imbalance_deviation.csv", gbc, "imbalance", ig);
    scalar("imbalance_deviation.csv", obc, "imbalance", io);
    scalar("imbalance_deviation.csv", gbc, "delta_imbalance", d);
    scalar("imbalance_deviation.csv", gbc, "log_abs_delta_imbalance", std::log(std::abs(d)));
    if (d != 0.0) sample("log_abs_delta_imbalance", "L", gbc, gbc.L, std::log(std::abs(d)));
  }

  void fig3b() {
    const ModelParams gbc = make_params(c_, g_, Boundary::Generalized);
    const ModelParams obc = make_params(c_, g_, Boundary::Open);
    const SpectrumResult sg = spectrum(gbc, VectorRequest::None);
    const SpectrumResult so = spectrum(obc, VectorRequest::None);
    write_spectrum(gbc, sg);
    write_spectrum(obc, so);
    stage("mean_normalized_level", gbc);
    const double eg = mean_normalized_level(sg);
    stage("mean_normalized_level", obc);
    const double eo = mean_normalized_level(so);
    const double d = eg - eo;
    scalar("mean_level.csv", gbc, "mean_level", eg);
    scalar("mean_level.csv", obc, "mean_level", eo);
    scalar("mean_level.csv", gbc, "delta_mean_level", d);
    scalar("mean_level.csv", gbc, "L_times_delta_mean_level", gbc.L * d);
    sample("delta_mean_level", "inverse_L", gbc, 1.0 / gbc.L, d);
  }

  void fig4() {
    const ModelParams p = make_params(c_, g_, Boundary::Generalized);
    const auto profile = profile_of(p, steady(p));
    stage("boundary_ratio", p);
    const double log_ratio = log_boundary_ratio(profile);
    try {
      scalar("observables.csv", p, "ratio_LR", boundary_ratio(profile));
    } catch (const OverflowGuardError&) {
      out_.notes.push_back("ratio_LR not representable at " + p.describe() + "; log_ratio_LR reported");
    }
    scalar("observables.csv", p, "log_ratio_LR", log_ratio);
    scalar("observables.csv", p, "imbalance", imbalance(profile));
    const SpectrumResult s = spectrum(p, VectorRequest::RightAndLeft);
    stage("mean_imbalance", p);
    const SectorBasis basis = build_sector(p.L, p.M);
    scalar("observables.csv", p, "mean_imbalance_right", mean_imbalance(s, basis, EigenWeighting::RightAmplitude));
    scalar("observables.csv", p, "mean_imbalance_biorthogonal", mean_imbalance(s, basis, EigenWeighting::Biorthogonal));
    if (std::isfinite(log_ratio)) sample("log_ratio_LR", "L", p, p.L, log_ratio);
  }

  void verify() {
    ModelParams p = make_params(c_, g_, Boundary::Generalized);
    stage("invariant_suite", p);
    for (const CheckResult& r : invariant_suite(g_.L, g_.phi, g_.delta_L, g_.delta_R, c_.J)) {
      write_check_row(stream("verify.csv"), r);
      if (!r.passed()) ++out_.failed_checks;
    }
  }

  void bae_scan() {
    const ModelParams p = make_params(c_, g_, c_.bc);
    stage("solve_sector", p);
    bethe::SolverOptions o;
    o.roots.accept_tolerance = c_.root_tolerance;
    const bethe::SectorSolution sol = bethe::solve_sector(p, o);
    for (const auto& state : sol.states) bethe::write_roots_rows(stream("roots.csv"), state);
    scalar("coverage.csv", p, "states", static_cast<double>(sol.states.size()));
    scalar("coverage.csv", p, "sector_dimension", static_cast<double>(sol.sector_dimension));
    scalar("coverage.csv", p, "seeds_tried", static_cast<double>(sol.seeds_tried));
    scalar("coverage.csv", p, "seeds_rejected", static_cast<double>(sol.seeds_rejected));
    for (const auto& n : sol.notes) out_.notes.push_back(std::string(to_string(p.bc)) + " M=" + std::to_string(p.M) + ": " + n);
    if (sol.sector_dimension > c_.dense_cap) {
      out_.notes.push_back("coverage skipped above dense_cap at " + p.describe());
      return;
    }
    const SpectrumResult dense = spectrum(p, VectorRequest::None);
    stage("evaluate_coverage", p);
    const auto cov = bethe::evaluate_coverage(sol, dense, c_.match_tolerance);
    scalar("coverage.csv", p, "matched", static_cast<double>(cov.matched));
    scalar("coverage.csv", p, "coverage", cov.coverage);
    scalar("coverage.csv", p, "max_matched_distance", cov.max_matched_distance);
    scalar("coverage.csv", p, "max_distance", cov.max_distance);
  }

  void custom() {
    const ModelParams p = make_params(c_, g_, c_.bc);
    const auto profile = profile_of(p, steady(p));
    stage("observables", p);
    scalar("observables.csv", p, "imbalance", imbalance(profile));
    scalar("observables.csv", p, "log_ratio_LR", log_boundary_ratio(profile));
    try {
      scalar("observables.csv", p, "ratio_LR", boundary_ratio(profile));
    } catch (const OverflowGuardError&) {
      out_.notes.push_back("ratio_LR not representable at " + p.describe() + "; log_ratio_LR reported");
    }
    if (!c_.spectrum) return;
    if (binomial(p.L, p.M) > c_.dense_cap) {
      out_.notes.push_back("spectrum skipped above dense_cap at " + p.describe());
      return;
    }
    const SpectrumResult s = spectrum(p, VectorRequest::None);
    write_spectrum(p, s);
    stage("mean_normalized_level", p);
    try {
      scalar("observables.csv", p, "mean_level", mean_normalized_level(s));
    } catch (const DomainError&) {
      out_.notes.push_back("mean_level undefined (single level) at " + p.describe());
    }
  }

  const ScenarioConfig& c_;
  const GridPoint& g_;
  Context& ctx_;
  PointOutput& out_;
  std::map<std::string, std::unique_ptr<std::ostringstream>> streams_;
};

bool needs_dense(const ScenarioConfig& c) {
  return c.scenario == ScenarioKind::Fig3b || c.scenario == ScenarioKind::Fig4;
}

/// Grid points in (L, phi, deltaL, deltaR) order. Dense scenarios replace an
/// L whose sector exceeds dense_cap by the largest smaller admissible length
/// not already in the grid.
std::vector<GridPoint> resolve_grid(const ScenarioConfig& c, json& substitutions) {
  std::vector<int> lengths;
  std::set<int> taken(c.L.begin(), c.L.end());
  for (int L : c.L) {
    int used = L;
    if (needs_dense(c) && binomial(L, c.M_rule.evaluate(L)) > c.dense_cap) {
      used = -1;
      for (int cand = L - 1; cand >= 2; --cand) {
        const int M = c.M_rule.evaluate(cand);
        if (M < 0 || M > cand || taken.contains(cand) || binomial(cand, M) > c.dense_cap) continue;
        used = cand;
        break;
      }
      if (used < 0) {
        throw CapacityError("L=" + std::to_string(L) + " exceeds dense_cap=" + std::to_string(c.dense_cap) +
                            " and no smaller admissible length is free");
      }
      taken.insert(used);
      substitutions.push_back({{"requested_L", L}, {"used_L", used}, {"reason", "dense_cap"}, {"dense_cap", c.dense_cap}});
    }
    lengths.push_back(used);
  }
  std::vector<GridPoint> grid;
  for (int L : lengths) {
    for (std::size_t i = 0; i < c.phi.size(); ++i) {
      for (std::size_t a = 0; a < c.deltaL.size(); ++a) {
        for (std::size_t b = 0; b < c.deltaR.size(); ++b) {
          GridPoint g;
          g.L = L;
          g.M = c.scenario == ScenarioKind::Verify ? 0 : c.M_rule.evaluate(L);
          g.phi = c.phi[i];
          g.delta_L = c.deltaL[a].evaluate(c.J, c.phi[i]);
          g.delta_R = c.deltaR[b].evaluate(c.J, c.phi[i]);
          g.phi_index = i;
          g.dl_index = a;
          g.dr_index = b;
          grid.push_back(g);
        }
      }
    }
  }
  return grid;
}

std::string header_for(const std::string& name) {
  std::ostringstream h;
  if (name == "profiles.csv") {
    write_profile_csv_header(h);
  } else if (name == "verify.csv") {
    write_check_csv_header(h);
  } else if (name == "roots.csv") {
    bethe::write_roots_csv_header(h);
  } else if (name.starts_with("spectra/")) {
    h << kSpectrumHeader;
  } else {
    write_scalar_csv_header(h);
  }
  return h.str();
}

std::string fits_csv(const std::vector<PointOutput>& outputs) {
  using Key = std::tuple<std::string, std::string, std::size_t, std::size_t, std::size_t>;
  std::map<Key, std::vector<const FitSample*>> groups;
  for (const auto& o : outputs) {
    for (const auto& s : o.samples) groups[{s.quantity, s.abscissa, s.phi_index, s.dl_index, s.dr_index}].push_back(&s);
  }
  std::string out = kFitHeader;
  for (const auto& [key, samples] : groups) {
    std::vector<double> x;
    std::vector<double> y;
    for (const FitSample* s : samples) {
      x.push_back(s->x);
      y.push_back(s->y);
    }
    if (x.size() < 2) continue;
    const LinearFit f = linear_fit(x, y);
    const ModelParams& p = samples.front()->params;
    out += std::get<0>(key) + ',' + std::string(to_string(p.bc)) + ',' + format_double(p.phi) + ',' +
           format_double(p.delta_L) + ',' + format_double(p.delta_R) + ',' + std::get<1>(key) + ',' +
           format_double(f.slope) + ',' + format_double(f.intercept) + ',' + format_double(f.r) + ',' +
           std::to_string(f.points) + '\n';
  }
  return out;
}

json scaling_notes(const ScenarioConfig& c) {
  json notes = json::array();
  if (c.scenario == ScenarioKind::Fig2 &&
      std::any_of(c.L.begin(), c.L.end(), [](int L) { return L != 20; })) {
    notes.push_back("full-size grid is L=20, M=10; this grid is reduced (the steady-state path accepts L=20)");
  }
  if (needs_dense(c)) {
    notes.push_back("full spectra are limited to sector dimension dense_cap=" + std::to_string(c.dense_cap));
  }
  return notes;
}

Failure make_failure(const std::exception& e, const Context& ctx) {
  Failure f;
  f.context = ctx;
  f.message = e.what();
  f.kind = dynamic_cast<const ValidationError*>(&e) ? "validation" : "numeric";
  if (const auto* ce = dynamic_cast<const ConvergenceError*>(&e)) {
    f.type = "ConvergenceError";
    f.extra["achieved_residual"] = ce->achieved_residual();
  } else if (const auto* oe = dynamic_cast<const OverflowGuardError*>(&e)) {
    f.type = "OverflowGuardError";
    f.extra["log_ratio"] = oe->log_ratio();
  } else if (dynamic_cast<const RejectedRootError*>(&e)) {
    f.type = "RejectedRootError";
  } else if (dynamic_cast<const CapacityError*>(&e)) {
    f.type = "CapacityError";
  } else if (dynamic_cast<const DomainError*>(&e)) {
    f.type = "DomainError";
  } else if (dynamic_cast<const ArgumentError*>(&e)) {
    f.type = "ArgumentError";
  } else if (dynamic_cast<const NumericError*>(&e)) {
    f.type = "NumericError";
  } else {
    f.type = "InternalError";
    f.kind = "numeric";
  }
  return f;
}

std::string error_report(const ScenarioConfig& c, const Failure& f) {
  json j = {{"status", "error"},
            {"scenario", std::string(to_string(c.scenario))},
            {"error_kind", f.kind},
            {"error_type", f.type},
            {"operation", f.context.operation},
            {"message", f.message}};
  if (f.context.params) j["params"] = params_json(*f.context.params);
  for (auto& [k, v] : f.extra.items()) j[k] = v;
  return j.dump(2);
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw NumericError("cannot write " + path.string());
}

}  // namespace

int workers_from_environment() {
  const char* v = std::getenv("LSE_WORKERS");
  if (v == nullptr || *v == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) throw ArgumentError("LSE_WORKERS must be an integer in [1, 1024]");
  return static_cast<int>(n);
}

RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  RunReport report;
  report.output_dir = config.output_dir;

  json substitutions = json::array();
  std::vector<GridPoint> grid;
  try {
    if (auto errors = validate(config); !errors.empty()) throw ConfigError(std::move(errors));
    grid = resolve_grid(config, substitutions);
  } catch (const ValidationError& e) {
    Context ctx;
    ctx.operation = "validate_config";
    report.exit_code = 1;
    report.error_json = error_report(config, make_failure(e, ctx));
    return report;
  }

  const int workers = options.workers > 0 ? options.workers : workers_from_environment();
  std::vector<PointOutput> outputs(grid.size());
  std::vector<std::optional<Failure>> failures(grid.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  auto work = [&] {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      Context ctx;
      try {
        PointRunner runner(config, grid[i], ctx, outputs[i]);
        runner.run();
        runner.flush();
      } catch (const std::exception& e) {
        failures[i] = make_failure(e, ctx);
        abort.store(true);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(grid.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures) {
    if (f) {
      report.exit_code = f->kind == "validation" ? 1 : 2;
      report.error_json = error_report(config, *f);
      return report;
    }
  }

  // Single writer: concatenate point outputs in grid order.
  std::map<std::string, std::string> files;
  json points = json::array();
  json notes = scaling_notes(config);
  std::set<std::string> seen_notes;
  std::size_t failed_checks = 0;
  for (const auto& o : outputs) {
    for (const auto& [name, body] : o.files) {
      auto it = files.find(name);
      if (it == files.end()) it = files.emplace(name, header_for(name)).first;
      it->second += body;
    }
    if (!o.meta.empty()) points.push_back(o.meta);
    for (const auto& n : o.notes) {
      if (seen_notes.insert(n).second) notes.push_back(n);
    }
    failed_checks += o.failed_checks;
  }
  const bool fits = config.scenario == ScenarioKind::Fig3a || config.scenario == ScenarioKind::Fig3b ||
                    config.scenario == ScenarioKind::Fig4;
  if (fits) files["fits.csv"] = fits_csv(outputs);
  files["config.txt"] = serialize(config);

  json listing = json::array();
  for (const auto& [name, bytes] : files) {
    json entry = {{"name", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}};
    if (name.ends_with(".csv")) entry["rows"] = count_data_rows(bytes);
    listing.push_back(entry);
  }
  json manifest = {{"scenario", std::string(to_string(config.scenario))},
                   {"status", failed_checks == 0 ? "ok" : "checks_failed"},
                   {"config", "config.txt"},
                   {"grid_points", grid.size()},
                   {"files", listing},
                   {"substitutions", substitutions},
                   {"notes", notes},
                   {"solver",
                    {{"steady_tolerance", config.steady_tolerance},
                     {"steady_max_iterations", config.steady_max_iterations},
                     {"steady_dense_limit", config.steady_dense_limit},
                     {"dense_cap", config.dense_cap},
                     {"root_tolerance", config.root_tolerance},
                     {"match_tolerance", config.match_tolerance},
                     {"points", points}}}};
  if (config.scenario == ScenarioKind::Verify) manifest["failed_checks"] = failed_checks;
  report.manifest_json = manifest.dump(2) + "\n";

  namespace fs = std::filesystem;
  const fs::path target = fs::absolute(config.output_dir);
  const std::string suffix = "." + std::to_string(::getpid());
  const fs::path staging = target.parent_path() / (target.filename().string() + ".partial" + suffix);
  const fs::path retired = target.parent_path() / (target.filename().string() + ".old" + suffix);
  try {
    fs::remove_all(staging);
    fs::create_directories(staging);
    for (const auto& [name, bytes] : files) write_file(staging / name, bytes);
    write_file(staging / "manifest.json", report.manifest_json);
    if (fs::exists(target)) fs::rename(target, retired);
    fs::rename(staging, target);
    fs::remove_all(retired);
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    Context ctx;
    ctx.operation = "write_outputs";
    Failure f = make_failure(e, ctx);
    f.kind = "numeric";
    report.exit_code = 2;
    report.error_json = error_report(config, f);
    return report;
  }
  report.exit_code = failed_checks == 0 ? 0 : 2;
  return report;
}

}  // namespace lse::scenario
