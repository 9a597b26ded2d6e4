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


#include "lse/observables.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "lse/errors.hpp"
#include "lse/format.hpp"

namespace lse {

namespace {

std::vector<double> weighted_profile(const std::vector<double>& w, const SectorBasis& basis) {
  const int L = basis.sites();
  std::vector<double> prof(static_cast<std::size_t>(L), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Word c = basis[i];
    while (c != 0) {
      prof[static_cast<std::size_t>(std::countr_zero(c))] += w[i];
      c &= c - 1;
    }
  }
  return prof;
}

void check_size(std::size_t n, const SectorBasis& basis) {
  if (n != basis.size()) {
    throw ArgumentError("state of dimension " + std::to_string(n) + " does not match sector of size " +
                        std::to_string(basis.size()));
  }
}

std::string params_prefix(const ModelParams& p) {
  return std::to_string(p.L) + ',' + std::to_string(p.M) + ',' + format_double(p.phi) + ',' +
         format_double(p.delta_L) + ',' + format_double(p.delta_R) + ',' + std::string(to_string(p.bc));
}

}  // namespace

std::vector<double> density_profile(const std::vector<double>& probabilities, const SectorBasis& basis) {
  check_size(probabilities.size(), basis);
  double total = 0.0;
  for (double v : probabilities) total += v;
  if (!(total > 0.0)) throw DomainError("probability vector has non-positive total");
  std::vector<double> w(probabilities);
  for (auto& v : w) v /= total;
  return weighted_profile(w, basis);
}

std::vector<double> density_profile(const Eigen::VectorXcd& state, const SectorBasis& basis, WeightMode mode) {
  check_size(static_cast<std::size_t>(state.size()), basis);
  std::vector<double> w(basis.size());
  if (mode == WeightMode::Probability) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = state(static_cast<Eigen::Index>(i)).real();
    return density_profile(w, basis);
  }
  const double norm2 = state.squaredNorm();
  if (!(norm2 > 0.0)) throw DomainError("zero state has no density profile");
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(state(static_cast<Eigen::Index>(i))) / norm2;
  return weighted_profile(w, basis);
}

std::vector<double> biorthogonal_profile(const Eigen::RowVectorXcd& left, const Eigen::VectorXcd& right,
                                         const SectorBasis& basis) {
  check_size(static_cast<std::size_t>(left.size()), basis);
  check_size(static_cast<std::size_t>(right.size()), basis);
  std::vector<double> w(basis.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    w[i] = (left(k) * right(k)).real();
  }
  return weighted_profile(w, basis);
}

double imbalance(const std::vector<double>& profile) {
  const std::size_t L = profile.size();
  const std::size_t half = L / 2;
  double left = 0.0;
  double right = 0.0;
  for (std::size_t j = 0; j < half; ++j) left += profile[j];
  for (std::size_t j = L - half; j < L; ++j) right += profile[j];
  const double total = left + right;
  if (!(std::abs(total) > 1e-300)) throw DomainError("imbalance undefined: no particles in either half");
  return (right - left) / total;
}

double imbalance_deviation(const ModelParams& gbc, const ModelParams& obc, const SteadyStateOptions& options) {
  if (gbc.bc != Boundary::Generalized || obc.bc != Boundary::Open) {
    throw ArgumentError("imbalance_deviation expects a generalized and an open parameter set");
  }
  if (gbc.L != obc.L || gbc.M != obc.M || gbc.J != obc.J || gbc.phi != obc.phi) {
    throw ArgumentError("imbalance_deviation: L, M, J and phi must agree");
  }
  if (gbc.delta_R != 0.0) throw ArgumentError("imbalance_deviation: counter-flow boundary requires delta_R = 0");
  const SectorBasis basis = build_sector(gbc.L, gbc.M);
  const double i_gbc = imbalance(density_profile(steady_state(gbc, options).probabilities, basis));
  const double i_obc = imbalance(density_profile(steady_state(obc, options).probabilities, basis));
  return i_gbc - i_obc;
}

double mean_imbalance(const SpectrumResult& spec, const SectorBasis& basis, EigenWeighting weighting) {
  if (!spec.right_vectors) throw ArgumentError("mean_imbalance needs right eigenvectors");
  if (weighting == EigenWeighting::Biorthogonal && !spec.left_vectors) {
    throw ArgumentError("biorthogonal mean_imbalance needs left eigenvectors");
  }
  const Eigen::MatrixXcd& V = *spec.right_vectors;
  check_size(static_cast<std::size_t>(V.rows()), basis);
  double sum = 0.0;
  for (Eigen::Index n = 0; n < V.cols(); ++n) {
    const auto prof = weighting == EigenWeighting::RightAmplitude
                          ? density_profile(Eigen::VectorXcd(V.col(n)), basis, WeightMode::AmplitudeSquared)
                          : biorthogonal_profile(spec.left_vectors->row(n), V.col(n), basis);
    sum += imbalance(prof);
  }
  return sum / static_cast<double>(V.cols());
}

double log_boundary_ratio(const std::vector<double>& profile) {
  if (profile.size() < 2) throw ArgumentError("boundary ratio needs at least two sites");
  return std::log(profile.back()) - std::log(profile.front());
}

double boundary_ratio(const std::vector<double>& profile) {
  if (profile.size() < 2) throw ArgumentError("boundary ratio needs at least two sites");
  if (profile.front() < 1e-300) {
    throw OverflowGuardError("boundary ratio: left-edge density below 1e-300", log_boundary_ratio(profile));
  }
  return profile.back() / profile.front();
}

ObservableRecord make_record(const ModelParams& params, std::vector<double> profile, std::string label) {
  if (profile.size() != static_cast<std::size_t>(params.L)) throw ArgumentError("profile length differs from L");
  double total = 0.0;
  for (double v : profile) total += v;
  if (std::abs(total - params.M) > 1e-10) {
    throw NumericError("density profile sums to " + format_double(total) + ", expected M=" + std::to_string(params.M));
  }
  ObservableRecord r;
  r.params = params;
  r.label = std::move(label);
  r.imbalance = imbalance(profile);
  if (profile.front() >= 1e-300) r.ratio_LR = profile.back() / profile.front();
  r.density_profile = std::move(profile);
  return r;
}

void write_profile_csv_header(std::ostream& out) { out << "L,M,phi,deltaL,deltaR,bc,site,density\n"; }

void write_profile_rows(std::ostream& out, const ModelParams& params, const std::vector<double>& profile) {
  const std::string prefix = params_prefix(params);
  for (std::size_t j = 0; j < profile.size(); ++j) {
    out << prefix << ',' << (j + 1) << ',' << format_double(profile[j]) << '\n';
  }
}

void write_scalar_csv_header(std::ostream& out) { out << "L,M,phi,deltaL,deltaR,bc,name,value\n"; }

void write_scalar_row(std::ostream& out, const ScalarRow& row) {
  out << params_prefix(row.params) << ',' << row.name << ',' << format_double(row.value) << '\n';
}

}  // namespace lse
