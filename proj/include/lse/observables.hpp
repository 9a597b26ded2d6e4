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


#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lse/model_params.hpp"
#include "lse/sector_basis.hpp"
#include "lse/spectra.hpp"

namespace lse {

enum class WeightMode {
  /// w(c) = state(c) / sum(state); for probability vectors.
  Probability,
  /// w(c) = |state(c)|^2 / ||state||^2; for eigenvectors.
  AmplitudeSquared,
};

/// <n_j> = sum_c w(c) bit_j(c), returned for j = 1..L (index j-1).
std::vector<double> density_profile(const std::vector<double>& probabilities, const SectorBasis& basis);
std::vector<double> density_profile(const Eigen::VectorXcd& state, const SectorBasis& basis, WeightMode mode);

/// Profile with biorthogonal weights w(c) = Re(left(c) * right(c)); the
/// weights sum to 1 when left * right = 1.
std::vector<double> biorthogonal_profile(const Eigen::RowVectorXcd& left, const Eigen::VectorXcd& right,
                                         const SectorBasis& basis);

/// (N_r - N_l) / (N_r + N_l), N_l summing sites 1..floor(L/2) and N_r sites
/// L-floor(L/2)+1..L. For odd L the middle site belongs to neither half.
/// Throws DomainError when N_r + N_l vanishes (M = 0).
double imbalance(const std::vector<double>& profile);

/// I(steady state of gbc) - I(steady state of obc). Both parameter sets
/// must share L, M, J and phi; gbc must be Generalized with delta_R = 0.
double imbalance_deviation(const ModelParams& gbc, const ModelParams& obc, const SteadyStateOptions& options = {});

enum class EigenWeighting { RightAmplitude, Biorthogonal };

/// Average of the per-eigenstate imbalance over all dim eigenstates.
/// Throws ArgumentError when the required vectors are missing.
double mean_imbalance(const SpectrumResult& spec, const SectorBasis& basis,
                      EigenWeighting weighting = EigenWeighting::RightAmplitude);

/// profile[L] / profile[1]. Throws OverflowGuardError (carrying the log
/// ratio) when profile[1] < 1e-300.
double boundary_ratio(const std::vector<double>& profile);
/// log(profile[L]) - log(profile[1]); may be infinite.
double log_boundary_ratio(const std::vector<double>& profile);

/// Figure-level observables of one state.
struct ObservableRecord {
  ModelParams params;
  std::string label;
  std::vector<double> density_profile;
  double imbalance = 0.0;
  std::optional<double> mean_imbalance;
  std::optional<double> ratio_LR;
};

/// Fills profile, imbalance and ratio_LR (when representable). Checks the
/// particle-number sum rule to 1e-10 and throws NumericError otherwise.
ObservableRecord make_record(const ModelParams& params, std::vector<double> profile, std::string label);

/// A named scalar attached to a parameter set.
struct ScalarRow {
  ModelParams params;
  std::string name;
  double value = 0.0;
};

/// "L,M,phi,deltaL,deltaR,bc,site,density".
void write_profile_csv_header(std::ostream& out);
void write_profile_rows(std::ostream& out, const ModelParams& params, const std::vector<double>& profile);
/// "L,M,phi,deltaL,deltaR,bc,name,value".
void write_scalar_csv_header(std::ostream& out);
void write_scalar_row(std::ostream& out, const ScalarRow& row);

}  // namespace lse
