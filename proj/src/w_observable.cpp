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

#include <cmath>
#include <numbers>

#include "hominv/errors.hpp"
#include "hominv/rng.hpp"

namespace hominv {
namespace {

int bit(int index, int qubit) { return (index >> (2 - qubit)) & 1; }

// Embed a two-qubit operator on (a, b) and a one-qubit operator on c.
Matrix8c embed(const Matrix4c& pair, int a, int b, const Matrix2c& single, int c) {
  Matrix8c out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      out(i, j) = pair(2 * bit(i, a) + bit(i, b), 2 * bit(j, a) + bit(j, b)) * single(bit(i, c), bit(j, c));
  return out;
}

std::array<int, 3> modes(int configuration) {
  switch (configuration) {
    case 1: return {0, 1, 2};
    case 2: return {1, 2, 0};
    case 3: return {2, 0, 1};
    default: throw RangeError("W configuration must be 1, 2 or 3");
  }
}

void validate_rho3(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != 8 || rho.cols() != 8)
    throw ValidationError("three-qubit state must be 8x8, got " + std::to_string(rho.rows()) + "x" +
                          std::to_string(rho.cols()));
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw ValidationError("three-qubit state is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > kTraceTol) throw ValidationError("three-qubit state trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdTol) throw ValidationError("three-qubit state is not positive semidefinite");
}

}  // namespace

Matrix8c w_operator() {
  Matrix8c w = Matrix8c::Zero();
  const int perms[6][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}, {1, 3, 2}, {3, 2, 1}, {2, 1, 3}};
  for (int p = 0; p < 6; ++p) {
    const double sign = p < 3 ? 1.0 : -1.0;
    w += sign * Eigen::kroneckerProduct(pauli(perms[p][0]),
                                        Eigen::kroneckerProduct(pauli(perms[p][1]), pauli(perms[p][2])).eval())
                    .eval();
  }
  return w;
}

Matrix8c w_cyclic_term(int configuration) {
  const auto [k, l, m] = modes(configuration);
  Vector4c psi_minus(0, 1, -1, 0), psi_plus(0, 1, 1, 0);
  psi_minus /= std::sqrt(2.0);
  psi_plus /= std::sqrt(2.0);
  Matrix4c s = Matrix4c::Zero();
  s.diagonal() << 1, 1, Complex(0, 1), Complex(0, 1);
  const Matrix4c pair =
      2.0 * s * (psi_minus * psi_minus.adjoint() - psi_plus * psi_plus.adjoint()) * s.adjoint();
  return embed(pair, k, l, pauli(3), m);
}

const std::array<Vector8c, 4>& w_states() {
  static const std::array<Vector8c, 4> states = [] {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const double n = 1.0 / std::sqrt(3.0);
    // Index = 4*k + 2*l + m with H = 0, V = 1.
    Vector8c w0 = Vector8c::Zero(), w1 = Vector8c::Zero();
    w0(0b001) = n;
    w0(0b010) = n * w;
    w0(0b100) = n * w * w;
    w1(0b110) = n;
    w1(0b101) = n * w;
    w1(0b011) = n * w * w;
    return std::array<Vector8c, 4>{w0, w1, w0.conjugate(), w1.conjugate()};
  }();
  return states;
}

Matrix8c w_spectral_operator() {
  const auto& w = w_states();
  Matrix8c out = Matrix8c::Zero();
  for (int n = 0; n < 4; ++n) out += (n < 2 ? 1.0 : -1.0) * w[n] * w[n].adjoint();
  return -2.0 * std::sqrt(3.0) * out;
}

Matrix8c pair_singlet_projector(int a, int b) {
  if (a == b || a < 0 || b < 0 || a > 2 || b > 2) throw RangeError("pair indices must be distinct in [0, 2]");
  return embed(singlet_projector(), a, b, Matrix2c::Identity(), 3 - a - b);
}

double w_observable_direct(const Eigen::MatrixXcd& rho3) {
  validate_rho3(rho3);
  return (w_operator() * rho3).trace().real();
}

Eigen::MatrixXcd three_qubit_product_state(const std::array<Eigen::Vector3d, 3>& bloch) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
  for (const auto& v : bloch) {
    if (v.norm() > 1.0 + 1e-12) throw RangeError("Bloch vector longer than 1");
    Matrix2c q = 0.5 * (pauli(0) + v.x() * pauli(1) + v.y() * pauli(2) + v.z() * pauli(3));
    out = Eigen::kroneckerProduct(out, q).eval();
  }
  return out;
}

const WPovm& w_povm(int configuration) {
  static const std::array<WPovm, 3> povms = [] {
    std::array<WPovm, 3> out;
    for (int c = 1; c <= 3; ++c) {
      Eigen::SelfAdjointEigenSolver<Matrix8c> es(w_cyclic_term(c));
      WPovm p{Matrix8c::Zero(), Matrix8c::Zero(), Matrix8c::Zero()};
      for (int i = 0; i < 8; ++i) {
        const double ev = es.eigenvalues()(i);
        const Matrix8c proj = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        (ev > 1.0 ? p.plus : ev < -1.0 ? p.minus : p.zero) += proj;
      }
      out[c - 1] = p;
    }
    return out;
  }();
  modes(configuration);
  return povms[configuration - 1];
}

std::vector<std::array<std::string, 3>> detector_triples(int configuration, int outcome) {
  const auto idx = modes(configuration);
  const char names[3] = {'k', 'l', 'm'};
  auto d = [&](char pol, int slot) { return std::string("D_") + pol + "," + names[idx[slot]]; };
  if (outcome == 1) {
    return {{d('V', 0), d('H', 0), d('V', 2)},
            {d('V', 1), d('H', 1), d('V', 2)},
            {d('V', 0), d('H', 1), d('H', 2)},
            {d('H', 0), d('V', 1), d('V', 2)}};
  }
  if (outcome == -1) {
    return {{d('V', 0), d('H', 0), d('H', 2)},
            {d('V', 1), d('H', 1), d('H', 2)},
            {d('V', 0), d('H', 1), d('V', 2)},
            {d('H', 0), d('V', 1), d('H', 2)}};
  }
  throw RangeError("W outcome must be +1 or -1");
}

WCircuitEstimate w_via_circuit(const Eigen::MatrixXcd& rho3, std::uint64_t n_events, std::uint64_t seed) {
  validate_rho3(rho3);
  if (n_events < 3) throw InsufficientStatisticsError("W circuit needs at least one event per configuration");
  const Matrix8c rho = rho3;
  WCircuitEstimate est;
  double variance = 0.0;
  for (int c = 1; c <= 3; ++c) {
    const WPovm& p = w_povm(c);
    const double pp = std::max(0.0, (p.plus * rho).trace().real());
    const double pm = std::max(0.0, (p.minus * rho).trace().real());
    const std::uint64_t n = n_events / 3 + (static_cast<std::uint64_t>(c - 1) < n_events % 3 ? 1 : 0);
    Philox4x32 rng(seed, static_cast<std::uint64_t>(c));
    auto& counts = est.counts[c - 1];
    for (std::uint64_t e = 0; e < n; ++e) {
      const double u = rng.uniform();
      ++counts[u < pp ? 0 : u < pp + pm ? 1 : 2];
    }
    const double nd = static_cast<double>(n);
    const double mean = (static_cast<double>(counts[0]) - static_cast<double>(counts[1])) / nd;
    const double second = (static_cast<double>(counts[0]) + static_cast<double>(counts[1])) / nd;
    est.config_means[c - 1] = mean;
    variance += (second - mean * mean) / nd;
  }
  // Each cyclic term has eigenvalues +-2, so its mean is twice the +-1 mean.
  est.value = 2.0 * (est.config_means[0] + est.config_means[1] + est.config_means[2]);
  est.std_error = 2.0 * std::sqrt(variance);
  return est;
}

}  // namespace hominv
