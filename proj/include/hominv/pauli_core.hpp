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
#include <complex>
#include <cstdint>
#include <variant>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace hominv {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;
inline constexpr double kUnitaryTol = 1e-12;

enum class Side : std::uint8_t { A = 0, B = 1 };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
constexpr char side_char(Side s) { return s == Side::A ? 'A' : 'B'; }

/// Pauli matrix sigma_mu, mu = 0 (identity), 1 (x), 2 (y), 3 (z).
const Matrix2c& pauli(int mu);

/// |Psi-><Psi-| in the |HH>,|HV>,|VH>,|VV> basis.
const Matrix4c& singlet_projector();

/// Two-qubit density matrix; basis order |HH>,|HV>,|VH>,|VV>, H = sigma_z +1.
/// Construction validates Hermiticity, unit trace and positivity.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix4c& entries);

  static DensityMatrix from_state_vector(const Vector4c& psi);

  const Matrix4c& entries() const { return entries_; }
  Eigen::Vector4d eigenvalues() const;

 private:
  Matrix4c entries_;
};

/// The real table t(mu, nu) = Tr[rho sigma_mu (x) sigma_nu].
/// Column 0 tail is Alice's Bloch vector s, row 0 tail is Bob's p,
/// the lower-right 3x3 block is the correlation matrix beta.
class StateCoeffs {
 public:
  /// Requires |t00 - 1| <= 1e-12 (stored as exactly 1) and |t| <= 1.
  explicit StateCoeffs(const Eigen::Matrix4d& t);

  const Eigen::Matrix4d& table() const { return t_; }
  double operator()(int mu, int nu) const { return t_(mu, nu); }

  Eigen::Vector3d alice_bloch() const { return t_.block<3, 1>(1, 0); }
  Eigen::Vector3d bob_bloch() const { return t_.block<1, 3>(0, 1).transpose(); }
  Eigen::Matrix3d correlations() const { return t_.block<3, 3>(1, 1); }

 private:
  Eigen::Matrix4d t_;
};

/// u_a (x) u_b acting on Alice and Bob.
class LocalUnitary {
 public:
  LocalUnitary(const Matrix2c& alice, const Matrix2c& bob);

  static LocalUnitary identity();
  static LocalUnitary random(std::uint64_t seed);

  const Matrix2c& alice() const { return alice_; }
  const Matrix2c& bob() const { return bob_; }
  Matrix4c full() const;

 private:
  Matrix2c alice_;
  Matrix2c bob_;
};

StateCoeffs coeffs_from_density(const DensityMatrix& rho);
DensityMatrix density_from_coeffs(const StateCoeffs& t);
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const LocalUnitary& u);

/// Tr[rho_a^2] = (1 + |s|^2) / 2 and Tr[rho_b^2] = (1 + |p|^2) / 2.
double purity_alice(const StateCoeffs& t);
double purity_bob(const StateCoeffs& t);

namespace ensemble {
struct PureHaar {};
struct MixedGinibre {};
struct Werner {
  double p = 1.0;
};
}  // namespace ensemble

using Ensemble = std::variant<ensemble::PureHaar, ensemble::MixedGinibre, ensemble::Werner>;

/// Reproducible random state. Werner(p) = p |Psi-><Psi-| + (1 - p) I/4,
/// p outside [0, 1] throws RangeError.
DensityMatrix random_state(std::uint64_t seed, const Ensemble& ensemble);

DensityMatrix singlet_state();
DensityMatrix maximally_mixed_state();
DensityMatrix werner_state(double p);

}  // namespace hominv
