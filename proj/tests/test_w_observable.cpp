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

#include "hominv/w_observable.hpp"

#include <gtest/gtest.h>

#include "hominv/errors.hpp"
#include "hominv/rng.hpp"
#include "oracles.hpp"

namespace hominv {
namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd random_rho3(std::uint64_t seed) {
  Philox4x32 g(seed, 0);
  Eigen::MatrixXcd gm(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) gm(i, j) = Complex(g.uniform() - 0.5, g.uniform() - 0.5);
  Eigen::MatrixXcd rho = gm * gm.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

Eigen::MatrixXcd xyz() {
  return oracle::kron(oracle::kron(oracle::qubit({1, 0, 0}), oracle::qubit({0, 1, 0})), oracle::qubit({0, 0, 1}));
}

TEST(WOperator, MatchesLeviCivitaAssembly) { EXPECT_LT(max_abs(w_operator() - oracle::w_levi_civita()), 1e-15); }

TEST(WOperator, SumOfCyclicTerms) {
  EXPECT_LT(max_abs(w_operator() - w_cyclic_term(1) - w_cyclic_term(2) - w_cyclic_term(3)), 1e-12);
  EXPECT_THROW(w_cyclic_term(4), RangeError);
}

TEST(WOperator, SpectralForm) {
  EXPECT_LT(max_abs(w_operator() - w_spectral_operator()), 1e-12);
  const auto& w = w_states();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(std::abs(w[a].dot(w[b])), a == b ? 1.0 : 0.0, 1e-15);
}

// With W = e_rst sigma_r sigma_s sigma_t the square is eight times the sum
// of pair singlet projectors (twelve times the W-state projector).
TEST(WOperator, SquareIsScaledPairSingletSum) {
  const Matrix8c w = w_operator();
  const Matrix8c pairs = pair_singlet_projector(0, 1) + pair_singlet_projector(0, 2) + pair_singlet_projector(1, 2);
  EXPECT_LT(max_abs(w * w - 8.0 * pairs), 1e-12);
  Matrix8c wproj = Matrix8c::Zero();
  for (const auto& v : w_states()) wproj += v * v.adjoint();
  EXPECT_LT(max_abs(w * w - 12.0 * wproj), 1e-12);
  EXPECT_GT(max_abs(w * w - pairs), 1.0);  // the unscaled relation does not hold
}

TEST(WOperator, CyclicTermSpectrum) {
  for (int c = 1; c <= 3; ++c) {
    Eigen::SelfAdjointEigenSolver<Matrix8c> es(w_cyclic_term(c));
    for (int i = 0; i < 8; ++i) {
      const double ev = es.eigenvalues()(i);
      EXPECT_NEAR(std::min({std::abs(ev - 2), std::abs(ev), std::abs(ev + 2)}), 0.0, 1e-12);
    }
  }
}

TEST(WObservable, ProductStates) {
  const Eigen::MatrixXcd hhh = three_qubit_product_state({Eigen::Vector3d(0, 0, 1), {0, 0, 1}, {0, 0, 1}});
  EXPECT_NEAR(w_observable_direct(hhh), 0.0, 1e-15);
  EXPECT_NEAR(w_observable_direct(xyz()), 1.0, 1e-12);
  EXPECT_NEAR(w_observable_direct(oracle::swap_qubits(xyz(), 0, 1)), -1.0, 1e-12);
  EXPECT_LT(max_abs(three_qubit_product_state({Eigen::Vector3d(1, 0, 0), {0, 1, 0}, {0, 0, 1}}) - xyz()), 1e-15);
}

TEST(WObservable, AntisymmetricUnderQubitSwaps) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXcd rho = random_rho3(seed);
    const double w = w_observable_direct(rho);
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}})
      EXPECT_NEAR(w_observable_direct(oracle::swap_qubits(rho, a, b)), -w, 1e-12);
  }
}

TEST(WObservable, RejectsBadInput) {
  EXPECT_THROW(w_observable_direct(Eigen::MatrixXcd::Identity(4, 4) / 4.0), ValidationError);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(8, 8) / 8.0;
  bad(0, 1) = 0.3;
  EXPECT_THROW(w_observable_direct(bad), ValidationError);
  EXPECT_THROW(three_qubit_product_state({Eigen::Vector3d(2, 0, 0), {0, 0, 0}, {0, 0, 0}}), RangeError);
}

TEST(WPovm, Completeness) {
  for (int c = 1; c <= 3; ++c) {
    const WPovm& p = w_povm(c);
    EXPECT_LT(max_abs(p.plus + p.minus + p.zero - Matrix8c::Identity()), 1e-12);
    EXPECT_LT(max_abs(2.0 * (p.plus - p.minus) - w_cyclic_term(c)), 1e-12);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Matrix8c rho = random_rho3(seed);
      const double total = (p.plus * rho).trace().real() + (p.minus * rho).trace().real() + (p.zero * rho).trace().real();
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(WCircuit, ConvergesToDirectValue) {
  const std::uint64_t n = 3'000'000;
  const WCircuitEstimate est = w_via_circuit(xyz(), n, 17);
  EXPECT_NEAR(est.value, 1.0, 3 * est.std_error);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_LT(est.std_error, 0.01);
  const WCircuitEstimate again = w_via_circuit(xyz(), n, 17);
  EXPECT_EQ(est.counts, again.counts);
  for (const auto& c : est.counts) EXPECT_EQ(c[0] + c[1] + c[2], n / 3);
}

TEST(WCircuit, RandomStatesWithinErrorBars) {
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXcd rho = random_rho3(seed);
    const WCircuitEstimate est = w_via_circuit(rho, 300000, seed);
    inside += std::abs(est.value - w_observable_direct(rho)) <= 4 * est.std_error;
  }
  EXPECT_GE(inside, 9);
}

TEST(WCircuit, DetectorTriples) {
  const auto plus = detector_triples(1, 1);
  ASSERT_EQ(plus.size(), 4u);
  EXPECT_EQ(plus[0][0], "D_V,k");
  EXPECT_EQ(plus[0][2], "D_V,m");
  EXPECT_EQ(detector_triples(2, 1)[0][0], "D_V,l");
  EXPECT_EQ(detector_triples(1, -1).size(), 4u);
  EXPECT_THROW(detector_triples(1, 0), RangeError);
  EXPECT_THROW(w_via_circuit(Eigen::MatrixXcd::Identity(8, 8) / 8.0, 2, 1), InsufficientStatisticsError);
}

}  // namespace
}  // namespace hominv
