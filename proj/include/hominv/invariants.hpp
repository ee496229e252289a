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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hominv/pauli_core.hpp"

namespace hominv {

enum class Family { Makhlin, Jing };
enum class Source { Direct, Contraction, Estimated };

std::string_view to_string(Family f);
std::string_view to_string(Source s);
Family family_from_string(std::string_view s);
Source source_from_string(std::string_view s);

/// Eighteen Makhlin values I1..I18 or twelve Jing values J1..J12.
class InvariantVector {
 public:
  InvariantVector(Family family, std::vector<double> values, Source source = Source::Direct,
                  std::optional<std::vector<double>> uncertainty = std::nullopt);

  Family family() const { return family_; }
  Source source() const { return source_; }
  const std::vector<double>& values() const { return values_; }
  const std::optional<std::vector<double>>& uncertainty() const { return uncertainty_; }

  /// One-based, matching the I_n / J_n naming.
  double operator[](int n) const { return values_.at(static_cast<std::size_t>(n - 1)); }
  std::size_t size() const { return values_.size(); }

  static constexpr std::size_t kMakhlinSize = 18;
  static constexpr std::size_t kJingSize = 12;

 private:
  Family family_;
  std::vector<double> values_;
  Source source_;
  std::optional<std::vector<double>> uncertainty_;
};

/// (a, b, c) = a . (b x c), evaluated as det[a; b; c].
double triple_product(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);

InvariantVector makhlin_invariants(const StateCoeffs& t);
InvariantVector jing_invariants(const StateCoeffs& t);

enum class Equivalence { Equivalent, Inequivalent, Borderline };
std::string_view to_string(Equivalence e);

inline constexpr double kDefaultEquivalenceTol = 1e-8;

/// Component-wise comparison of the Makhlin vectors: equivalent when every
/// |dI_n| <= tol, inequivalent when some |dI_n| >= 10 tol, borderline otherwise.
Equivalence equivalence_check(const DensityMatrix& rho1, const DensityMatrix& rho2,
                              double tol = kDefaultEquivalenceTol);

}  // namespace hominv
