// Copyright 2026 The hominv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hominv/pauli_core.hpp"

namespace hominv {

using Vector8c = Eigen::Matrix<Complex, 8, 1>;

/// Three-qubit W observable e_rst sigma_r (x) sigma_s (x) sigma_t on modes (k,l,m).
Matrix8c w_operator();

/// Cyclic HOM term. configuration 1: w_klm, 2: w_lmk, 3: w_mkl.
/// w_klm = 2 S (P- - P+) S^dagger on (k,l), sigma_z on m, S = diag(1,1,i,i).
Matrix8c w_cyclic_term(int configuration);

/// |W_0>..|W_3>; W_2, W_3 are the complex conjugates of W_0, W_1.
const std::array<Vector8c, 4>& w_states();

/// Same operator written in its eigenbasis:
/// -2 sqrt(3) (|W0><W0| + |W1><W1| - |W2><W2| - |W3><W3|).
Matrix8c w_spectral_operator();

/// Singlet projector on qubits (a, b) of three, identity elsewhere.
Matrix8c pair_singlet_projector(int a, int b);

/// Tr[W rho3]; rho3 must be a valid 8x8 density matrix.
double w_observable_direct(const Eigen::MatrixXcd& rho3);

/// rho_k (x) rho_l (x) rho_m from three Bloch vectors (|v| <= 1).
Eigen::MatrixXcd three_qubit_product_state(const std::array<Eigen::Vector3d, 3>& bloch);

/// Outcome projectors of one cyclic term (eigenvalues +2, -2, 0).
struct WPovm {
  Matrix8c plus;
  Matrix8c minus;
  Matrix8c zero;
};
const WPovm& w_povm(int configuration);

/// Detector triples that herald outcome +1 / -1 of a configuration, as
/// "D_{H|V},{k|l|m}" names. Metadata only; the simulator samples the POVM.
std::vector<std::array<std::string, 3>> detector_triples(int configuration, int outcome);

struct WCircuitEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::array<double, 3> config_means{};
  /// counts[c] = {#(+1), #(-1), #(0)} for configuration c+1.
  std::array<std::array<std::uint64_t, 3>, 3> counts{};
};

/// Sample the three cyclic configurations (n_events split evenly, Philox
/// stream = configuration) and report 2 * sum of the per-configuration means
/// of the +-1 outcomes.
WCircuitEstimate w_via_circuit(const Eigen::MatrixXcd& rho3, std::uint64_t n_events, std::uint64_t seed);

}  // namespace hominv
