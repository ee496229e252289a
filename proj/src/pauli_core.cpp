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

#include "hominv/pauli_core.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "hominv/errors.hpp"
#include "hominv/rng.hpp"

namespace hominv {
namespace {

constexpr Complex kI{0.0, 1.0};

const std::array<Matrix2c, 4>& pauli_table() {
  static const std::array<Matrix2c, 4> table = [] {
    std::array<Matrix2c, 4> m;
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, -kI, kI, 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return table;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void check_unitary(const Matrix2c& u, const char* who) {
  const double err = (u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (!(err <= kUnitaryTol)) {
    throw ValidationError(std::string("local unitary factor ") + who +
                          " is not unitary: max|u^dag u - 1| = " + fmt(err));
  }
}

// Haar-random 2x2 unitary: QR of a complex Ginibre matrix with the phases of R
// moved into Q.
Matrix2c haar_unitary(Philox4x32& rng) {
  std::normal_distribution<double> gauss;
  Matrix2c g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix2c> qr(g);
  Matrix2c q = qr.householderQ();
  Matrix2c r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  // Re-orthonormalize to keep ||u^dag u - 1|| at the 1e-16 level.
  Eigen::HouseholderQR<Matrix2c> clean(q);
  Matrix2c out = clean.householderQ();
  Matrix2c rr = clean.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const double mag = std::abs(rr(j, j));
    if (mag > 0) out.col(j) *= rr(j, j) / mag;
  }
  return out;
}

Matrix4c hermitize(const Matrix4c& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

const Matrix2c& pauli(int mu) {
  if (mu < 0 || mu > 3) throw RangeError("pauli index must be 0..3");
  return pauli_table()[static_cast<std::size_t>(mu)];
}

const Matrix4c& singlet_projector() {
  static const Matrix4c p = [] {
    Vector4c psi;
    psi << 0, 1, -1, 0;
    psi /= std::sqrt(2.0);
    return Matrix4c(psi * psi.adjoint());
  }();
  return p;
}

DensityMatrix::DensityMatrix(const Matrix4c& entries) : entries_(entries) {
  if (!entries.allFinite()) throw ValidationError("density matrix has non-finite entries");
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw ValidationError("density matrix is not Hermitian: max|rho - rho^dag| = " + fmt(herm));
  }
  const double trace_err = std::abs(entries.trace() - Complex(1.0, 0.0));
  if (trace_err > kTraceTol) {
    throw ValidationError("density matrix does not have unit trace: |Tr rho - 1| = " +
                          fmt(trace_err));
  }
  const double smallest = eigenvalues()(0);
  if (smallest < kPsdTol) {
    throw ValidationError("density matrix is not positive semidefinite: smallest eigenvalue " +
                          fmt(smallest));
  }
}

DensityMatrix DensityMatrix::from_state_vector(const Vector4c& psi) {
  const double norm = psi.norm();
  if (!(norm > 0)) throw ValidationError("state vector has zero norm");
  const Vector4c v = psi / norm;
  return DensityMatrix(hermitize(v * v.adjoint()));
}

Eigen::Vector4d DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(hermitize(entries_), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

StateCoeffs::StateCoeffs(const Eigen::Matrix4d& t) : t_(t) {
  if (!t.allFinite()) throw ValidationError("state coefficients have non-finite entries");
  if (std::abs(t(0, 0) - 1.0) > kTraceTol) {
    throw ValidationError("state coefficients: t00 must be 1, got " + fmt(t(0, 0)));
  }
  t_(0, 0) = 1.0;
  const double biggest = t_.cwiseAbs().maxCoeff();
  if (biggest > 1.0 + kHermitianTol) {
    throw ValidationError("state coefficients: |t_mu,nu| must not exceed 1, got " + fmt(biggest));
  }
}

LocalUnitary::LocalUnitary(const Matrix2c& alice, const Matrix2c& bob) : alice_(alice), bob_(bob) {
  check_unitary(alice_, "u_a");
  check_unitary(bob_, "u_b");
}

LocalUnitary LocalUnitary::identity() { return {Matrix2c::Identity(), Matrix2c::Identity()}; }

LocalUnitary LocalUnitary::random(std::uint64_t seed) {
  Philox4x32 rng(seed, 0x4c55);
  Matrix2c a = haar_unitary(rng);
  Matrix2c b = haar_unitary(rng);
  return {a, b};
}

Matrix4c LocalUnitary::full() const { return Eigen::kroneckerProduct(alice_, bob_); }

StateCoeffs coeffs_from_density(const DensityMatrix& rho) {
  Eigen::Matrix4d t;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      // Tr[rho (s_mu x s_nu)] without forming the Kronecker product.
      Complex acc = 0;
      const Matrix2c& a = pauli(mu);
      const Matrix2c& b = pauli(nu);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const Complex op = a(j >> 1, i >> 1) * b(j & 1, i & 1);
          if (op != Complex(0.0)) acc += rho.entries()(i, j) * op;
        }
      t(mu, nu) = acc.real();
    }
  }
  return StateCoeffs(t);
}

DensityMatrix density_from_coeffs(const StateCoeffs& t) {
  Matrix4c rho = Matrix4c::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      if (t(mu, nu) == 0.0) continue;
      rho += (0.25 * t(mu, nu)) * Matrix4c(Eigen::kroneckerProduct(pauli(mu), pauli(nu)));
    }
  return DensityMatrix(rho);
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const LocalUnitary& u) {
  const Matrix4c full = u.full();
  return DensityMatrix(hermitize(full * rho.entries() * full.adjoint()));
}

double purity_alice(const StateCoeffs& t) { return 0.5 * (1.0 + t.alice_bloch().squaredNorm()); }
double purity_bob(const StateCoeffs& t) { return 0.5 * (1.0 + t.bob_bloch().squaredNorm()); }

DensityMatrix singlet_state() {
  Vector4c psi;
  psi << 0, 1, -1, 0;
  return DensityMatrix::from_state_vector(psi);
}

DensityMatrix maximally_mixed_state() { return DensityMatrix(0.25 * Matrix4c::Identity()); }

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("werner parameter p must lie in [0,1]");
  return DensityMatrix(p * singlet_projector() + (1.0 - p) * 0.25 * Matrix4c::Identity());
}

DensityMatrix random_state(std::uint64_t seed, const Ensemble& ens) {
  return std::visit(
      [seed](const auto& e) -> DensityMatrix {
        using E = std::decay_t<decltype(e)>;
        Philox4x32 rng(seed, 0x5354);
        std::normal_distribution<double> gauss;
        if constexpr (std::is_same_v<E, ensemble::Werner>) {
          return werner_state(e.p);
        } else if constexpr (std::is_same_v<E, ensemble::PureHaar>) {
          Vector4c psi;
          for (int i = 0; i < 4; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
          return DensityMatrix::from_state_vector(psi);
        } else {
          Matrix4c g;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
          Matrix4c rho = g * g.adjoint();
          rho /= rho.trace().real();
          return DensityMatrix(hermitize(rho));
        }
      },
      ens);
}

}  // namespace hominv
