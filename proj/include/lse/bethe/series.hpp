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

namespace lse::bethe {

/// Truncated Fourier series of the ground-state root density,
/// sigma(lambda) = sum_{|m| <= m_max} e^{-i m phi lambda} / (2 cosh(m phi))
///               = 1/2 + sum_{m=1}^{m_max} cos(m phi lambda) / cosh(m phi).
double root_density(double lambda, double phi, int m_max);

/// g(phi) = sum_{m=1}^{m_max} (-1)^m tanh(m phi) / m. A gap closing at
/// phi_c > 0 would require g(phi_c) = 0. The alternating tail is bounded by
/// 1 / (m_max + 1).
double critical_phi_residual(double phi, int m_max);

}  // namespace lse::bethe
