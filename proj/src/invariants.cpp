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

#include "hominv/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "hominv/errors.hpp"

namespace hominv {

std::string_view to_string(Family f) { return f == Family::Makhlin ? "makhlin" : "jing"; }

std::string_view to_string(Source s) {
  switch (s) {
    case Source::Direct:
      return "direct";
    case Source::Contraction:
      return "contraction";
    case Source::Estimated:
      return "estimated";
  }
  return "direct";
}

Family family_from_string(std::string_view s) {
  if (s == "makhlin") return Family::Makhlin;
  if (s == "jing") return Family::Jing;
  throw ValidationError("unknown invariant family '" + std::string(s) + "'");
}

Source source_from_string(std::string_view s) {
  if (s == "direct") return Source::Direct;
  if (s == "contraction") return Source::Contraction;
  if (s == "estimated") return Source::Estimated;
  throw ValidationError("unknown invariant source '" + std::string(s) + "'");
}

std::string_view to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent:
      return "equivalent";
    case Equivalence::Inequivalent:
      return "inequivalent";
    case Equivalence::Borderline:
      return "borderline";
  }
  return "borderline";
}

InvariantVector::InvariantVector(Family family, std::vector<double> values, Source source,
                                 std::optional<std::vector<double>> uncertainty)
    : family_(family), values_(std::move(values)), source_(source), uncertainty_(std::move(uncertainty)) {
  const std::size_t want = family == Family::Makhlin ? kMakhlinSize : kJingSize;
  if (values_.size() != want) {
    throw ValidationError(std::string(to_string(family)) + " vector must have " +
                          std::to_string(want) + " entries, got " + std::to_string(values_.size()));
  }
  if (uncertainty_ && uncertainty_->size() != want) {
    throw ValidationError("uncertainty vector length does not match values");
  }
}

double triple_product(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  Eigen::Matrix3d m;
  m.row(0) = a;
  m.row(1) = b;
  m.row(2) = c;
  return m.determinant();
}

InvariantVector makhlin_invariants(const StateCoeffs& t) {
  const Eigen::Vector3d s = t.alice_bloch();
  const Eigen::Vector3d p = t.bob_bloch();
  const Eigen::Matrix3d b = t.correlations();
  const Eigen::Matrix3d btb = b.transpose() * b;
  const Eigen::Matrix3d bbt = b * b.transpose();

  // Row-vector products s beta... written as column vectors.
  const Eigen::Vector3d s_b = b.transpose() * s;        // s beta
  const Eigen::Vector3d s_bbt = bbt * s;                // s beta beta^T
  const Eigen::Vector3d s_bbt2 = bbt * s_bbt;           // s (beta beta^T)^2
  const Eigen::Vector3d s_bbtb = b.transpose() * s_bbt; // s beta beta^T beta
  const Eigen::Vector3d b_p = b * p;                    // beta p
  const Eigen::Vector3d btb_p = btb * p;                // beta^T beta p
  const Eigen::Vector3d btb2_p = btb * btb_p;           // (beta^T beta)^2 p
  const Eigen::Vector3d bbtb_p = b * btb_p;             // beta beta^T beta p

  // e_ijk e_lmn beta_jm beta_kn = 2 cof(beta)_il
  Eigen::Matrix3d cof;
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const int m = (l + 1) % 3, n = (l + 2) % 3;
      cof(i, l) = b(j, m) * b(k, n) - b(j, n) * b(k, m);
    }

  std::vector<double> v(18);
  v[0] = b.determinant();
  v[1] = btb.trace();
  v[2] = (btb * btb).trace();
  v[3] = s.squaredNorm();
  v[4] = s_b.squaredNorm();
  v[5] = s_bbt.squaredNorm();
  v[6] = p.squaredNorm();
  v[7] = b_p.squaredNorm();
  v[8] = btb_p.squaredNorm();
  v[9] = triple_product(s, s_bbt, s_bbt2);
  v[10] = triple_product(p, btb_p, btb2_p);
  v[11] = s.dot(b_p);
  v[12] = s.dot(bbtb_p);
  v[13] = 2.0 * s.dot(cof * p);
  v[14] = triple_product(s, s_bbt, b_p);
  v[15] = triple_product(s_b, p, btb_p);
  v[16] = triple_product(s_b, s_bbtb, p);
  v[17] = triple_product(s, b_p, bbtb_p);
  return InvariantVector(Family::Makhlin, std::move(v));
}

InvariantVector jing_invariants(const StateCoeffs& t) {
  const Eigen::Vector3d s = t.alice_bloch();
  const Eigen::Vector3d p = t.bob_bloch();
  const Eigen::Matrix3d b = t.correlations();
  const Eigen::Matrix3d btb = b.transpose() * b;
  const Eigen::Matrix3d bbt = b * b.transpose();

  std::vector<double> v(12);
  v[0] = btb.trace();
  v[1] = (btb * btb).trace();
  v[2] = (btb * btb * btb).trace();
  v[3] = s.squaredNorm();
  v[4] = (b.transpose() * s).squaredNorm();
  v[5] = (bbt * s).squaredNorm();
  v[6] = p.squaredNorm();
  v[7] = (b * p).squaredNorm();
  v[8] = (btb * p).squaredNorm();
  v[9] = s.dot(b * p);
  v[10] = s.dot(b * btb * p);
  v[11] = s.dot(b * btb * btb * p);
  return InvariantVector(Family::Jing, std::move(v));
}

Equivalence equivalence_check(const DensityMatrix& rho1, const DensityMatrix& rho2, double tol) {
  if (!(tol > 0)) throw RangeError("equivalence tolerance must be positive");
  const InvariantVector a = makhlin_invariants(coeffs_from_density(rho1));
  const InvariantVector b = makhlin_invariants(coeffs_from_density(rho2));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  if (worst <= tol) return Equivalence::Equivalent;
  if (worst >= 10.0 * tol) return Equivalence::Inequivalent;
  return Equivalence::Borderline;
}

}  // namespace hominv
