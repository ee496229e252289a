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

#include <string>
#include <string_view>
#include <vector>

#include "hominv/diagrams.hpp"
#include "hominv/invariants.hpp"

namespace hominv {

/// An invariant written as a polynomial in singlet-projection probabilities.
/// `labels` is empty for the direct I <-> J mappings, which compare two
/// direct invariants rather than a diagram expression.
struct IdentitySpec {
  std::string name;
  std::vector<Label> labels;
  double (*direct)(const InvariantVector& makhlin, const InvariantVector& jing);
  double (*expression)(const DiagramValues& v, const InvariantVector& makhlin,
                       const InvariantVector& jing);
};

/// Diagram identities (I1..I5, I7, I8, I12, I14, I6, I9, I13, J3, J12)
/// followed by the J <-> I mappings.
const std::vector<IdentitySpec>& identity_specs();

struct IdentityResidual {
  std::string name;
  std::vector<Label> labels;
  double direct = 0.0;
  double expression = 0.0;
  double residual = 0.0;
};

struct IdentityReport {
  std::vector<IdentityResidual> rows;

  double max_residual() const;
  /// Labels used by some identity above `tol` and by no identity within it.
  std::vector<Label> suspect_labels(double tol) const;
};

/// Evaluate every identity right-hand side on `values` and compare with the
/// invariants computed directly from `t`. Missing labels throw
/// UnresolvedTermError.
IdentityReport identity_report(const StateCoeffs& t, const DiagramValues& values);

/// Right-hand side of a diagram-expressible identity ("I1", "I2", "J3", ...)
/// evaluated on diagram values alone.
double invariant_from_diagrams(std::string_view name, const DiagramValues& values);

}  // namespace hominv
