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

#include "hominv/identities.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hominv/errors.hpp"

namespace hominv {
namespace {

using L = Label;

double i1(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double l0 = v[L::l0], cb1 = v[L::cbar1], cb2 = v[L::cbar2];
  const double lb1 = v[L::lbar1], lb2 = v[L::lbar2];
  return -8.0 / 3.0 * (l0 * (l0 * (4 * l0 - 3) + 6 * (cb1 - 2 * lb1)) + 3 * lb1 - 6 * cb2 + 8 * lb2);
}

double i2(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  return 1 + 16 * v[L::l1] - 4 * (v[L::c2] + v[L::c1]);
}

double i3(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double c1 = v[L::c1], c2 = v[L::c2];
  return 1 + 256 * v[L::l2] + 16 * (c1 * c1 + c2 * c2) + 64 * v[L::c3] -
         128 * (v[L::c4] + v[L::c5]) - 8 * (c1 + c2);
}

double i4(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  return 1 - 4 * v[L::c2];
}

double i5(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double a = 1 - 4 * v[L::c2];
  return -4 * v[L::c1] + 32 * v[L::c3] - 64 * v[L::c5] + a * a;
}

double i7(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  return 1 - 4 * v[L::c1];
}

double i8(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double a = 1 - 4 * v[L::c1];
  return -4 * v[L::c2] + 32 * v[L::c3] - 64 * v[L::c4] + a * a;
}

double i12(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  return 1 + 16 * v[L::c3] - 4 * (v[L::c2] + v[L::c1]);
}

double i14(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double l0 = v[L::l0], cb1 = v[L::cbar1], cb2 = v[L::cbar2], cb3 = v[L::cbar3];
  const double lb1 = v[L::lbar1];
  return 16 * (l0 * l0 * (1 - 4 * cb1) + 2 * l0 * (4 * cb2 - cb1) - lb1 + 4 * cb1 * lb1 +
               2 * cb2 - 8 * cb3);
}

double i6(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double c1 = v[L::c1], c2 = v[L::c2], c3 = v[L::c3], c4 = v[L::c4], c5 = v[L::c5];
  return 1 - 1024 * v[L::c8] - 4 * (3 * c2 + 2 * c1) +
         16 * (3 * c2 * c2 + 4 * c3 + 2 * c2 * c1 + c1 * c1) -
         64 * (c2 * c2 * c2 + 4 * c2 * c3 + 2 * c5 + 2 * c3 * c1 + c4) +
         256 * (c3 * c3 + 2 * c2 * c5 + 2 * v[L::c6]);
}

double i9(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double c1 = v[L::c1], c2 = v[L::c2], c3 = v[L::c3], c4 = v[L::c4], c5 = v[L::c5];
  return 1 - 1024 * v[L::c7] - 4 * (2 * c2 + 3 * c1) +
         16 * (c2 * c2 + 4 * c3 + 2 * c2 * c1 + 3 * c1 * c1) -
         64 * (2 * c2 * c3 + c5 + 4 * c3 * c1 + c1 * c1 * c1 + 2 * c4) +
         256 * (c3 * c3 + 2 * v[L::c6] + 2 * c1 * c4);
}

double i13(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double c1 = v[L::c1], c2 = v[L::c2], c3 = v[L::c3];
  return 1 + 256 * v[L::c6] - 8 * (c2 + c1) + 16 * (c2 * c2 + 3 * c3 + c2 * c1 + c1 * c1) -
         64 * (v[L::c5] + c3 * (c2 + c1) + v[L::c4]);
}

double j3(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double c1 = v[L::c1], c2 = v[L::c2], c3 = v[L::c3], c4 = v[L::c4], c5 = v[L::c5];
  return 4096 * v[L::l3] - 3072 * (v[L::c7] + v[L::c8]) +
         768 * (2 * v[L::c6] + c4 * c1 + c5 * c2 + c3 * c3) -
         64 * (3 * c4 + 3 * c5 + 6 * c3 * (c1 + c2) + c1 * c1 * c1 + c2 * c2 * c2) +
         48 * (2 * c3 + c1 * c1 + c2 * c2 + c1 * c2) - 12 * (c1 + c2) + 1;
}

double j12(const DiagramValues& v, const InvariantVector&, const InvariantVector&) {
  const double c1 = v[L::c1], c2 = v[L::c2], c3 = v[L::c3], c4 = v[L::c4], c5 = v[L::c5];
  const double c6 = v[L::c6];
  return 4096 * v[L::c9] - 1024 * (v[L::c7] + v[L::c8]) - 1024 * c6 * (c1 + c2) + 768 * c6 +
         768 * c3 * c3 - 1024 * c3 * (c4 + c5) + 512 * (c1 * c4 + c2 * c5) +
         256 * (c1 * c5 + c2 * c4) - 128 * (c4 + c5) +
         256 * c3 * (c1 * c1 + c2 * c2 + c1 * c2) - 384 * c3 * (c1 + c2) + 80 * c3 -
         64 * (c1 * c1 * c1 + c2 * c2 * c2 + c1 * c1 * c2 + c1 * c2 * c2) + 64 * c1 * c2 +
         48 * (c1 * c1 + c2 * c2) - 12 * (c1 + c2) + 1;
}

template <int N>
double makhlin_at(const InvariantVector& m, const InvariantVector&) {
  return m[N];
}

template <int N>
double jing_at(const InvariantVector&, const InvariantVector& j) {
  return j[N];
}

template <int N>
double makhlin_expr(const DiagramValues&, const InvariantVector& m, const InvariantVector&) {
  return m[N];
}

double j3_from_makhlin(const DiagramValues&, const InvariantVector& m, const InvariantVector&) {
  return 0.5 * (6 * m[1] * m[1] - m[2] * m[2] * m[2] + 3 * m[2] * m[3]);
}

}  // namespace

const std::vector<IdentitySpec>& identity_specs() {
  static const std::vector<IdentitySpec> specs = {
      {"I1", {L::l0, L::cbar1, L::lbar1, L::cbar2, L::lbar2}, makhlin_at<1>, i1},
      {"I2", {L::l1, L::c1, L::c2}, makhlin_at<2>, i2},
      {"I3", {L::l2, L::c1, L::c2, L::c3, L::c4, L::c5}, makhlin_at<3>, i3},
      {"I4", {L::c2}, makhlin_at<4>, i4},
      {"I5", {L::c1, L::c2, L::c3, L::c5}, makhlin_at<5>, i5},
      {"I7", {L::c1}, makhlin_at<7>, i7},
      {"I8", {L::c1, L::c2, L::c3, L::c4}, makhlin_at<8>, i8},
      {"I12", {L::c1, L::c2, L::c3}, makhlin_at<12>, i12},
      {"I14", {L::l0, L::cbar1, L::cbar2, L::cbar3, L::lbar1}, makhlin_at<14>, i14},
      {"I6", {L::c1, L::c2, L::c3, L::c4, L::c5, L::c6, L::c8}, makhlin_at<6>, i6},
      {"I9", {L::c1, L::c2, L::c3, L::c4, L::c5, L::c6, L::c7}, makhlin_at<9>, i9},
      {"I13", {L::c1, L::c2, L::c3, L::c4, L::c5, L::c6}, makhlin_at<13>, i13},
      {"J3", {L::c1, L::c2, L::c3, L::c4, L::c5, L::c6, L::c7, L::c8, L::l3}, jing_at<3>, j3},
      {"J12", {L::c1, L::c2, L::c3, L::c4, L::c5, L::c6, L::c7, L::c8, L::c9}, jing_at<12>, j12},
      {"J1=I2", {}, jing_at<1>, makhlin_expr<2>},
      {"J2=I3", {}, jing_at<2>, makhlin_expr<3>},
      {"J3=(6I1^2-I2^3+3I2I3)/2", {}, jing_at<3>, j3_from_makhlin},
      {"J4=I4", {}, jing_at<4>, makhlin_expr<4>},
      {"J5=I5", {}, jing_at<5>, makhlin_expr<5>},
      {"J6=I6", {}, jing_at<6>, makhlin_expr<6>},
      {"J7=I7", {}, jing_at<7>, makhlin_expr<7>},
      {"J8=I8", {}, jing_at<8>, makhlin_expr<8>},
      {"J9=I9", {}, jing_at<9>, makhlin_expr<9>},
      {"J10=I12", {}, jing_at<10>, makhlin_expr<12>},
      {"J11=I13", {}, jing_at<11>, makhlin_expr<13>},
  };
  return specs;
}

double IdentityReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.residual);
  return worst;
}

std::vector<Label> IdentityReport::suspect_labels(double tol) const {
  // Greedy cover of the failing identities by labels that no passing
  // identity vouches for.
  std::set<Label> cleared;
  std::vector<const IdentityResidual*> failing;
  for (const auto& r : rows) {
    if (r.residual > tol) {
      if (!r.labels.empty()) failing.push_back(&r);
    } else {
      cleared.insert(r.labels.begin(), r.labels.end());
    }
  }
  std::vector<Label> out;
  while (!failing.empty()) {
    Label best{};
    std::size_t best_hits = 0;
    for (Label l : kAllLabels) {
      if (cleared.count(l)) continue;
      const auto hits = static_cast<std::size_t>(std::count_if(failing.begin(), failing.end(), [&](const IdentityResidual* r) {
        return std::find(r->labels.begin(), r->labels.end(), l) != r->labels.end();
      }));
      if (hits > best_hits) {
        best = l;
        best_hits = hits;
      }
    }
    if (best_hits == 0) break;
    out.push_back(best);
    std::erase_if(failing, [&](const IdentityResidual* r) {
      return std::find(r->labels.begin(), r->labels.end(), best) != r->labels.end();
    });
  }
  return out;
}

IdentityReport identity_report(const StateCoeffs& t, const DiagramValues& values) {
  const InvariantVector m = makhlin_invariants(t);
  const InvariantVector j = jing_invariants(t);
  IdentityReport report;
  for (const IdentitySpec& spec : identity_specs()) {
    IdentityResidual row;
    row.name = spec.name;
    row.labels = spec.labels;
    row.direct = spec.direct(m, j);
    row.expression = spec.expression(values, m, j);
    row.residual = std::abs(row.direct - row.expression);
    report.rows.push_back(std::move(row));
  }
  return report;
}

double invariant_from_diagrams(std::string_view name, const DiagramValues& values) {
  static const InvariantVector none_m(Family::Makhlin, std::vector<double>(InvariantVector::kMakhlinSize, 0.0));
  static const InvariantVector none_j(Family::Jing, std::vector<double>(InvariantVector::kJingSize, 0.0));
  for (const auto& spec : identity_specs())
    if (spec.name == name && !spec.labels.empty()) return spec.expression(values, none_m, none_j);
  throw ValidationError("no diagram expression for '" + std::string(name) + "'");
}

}  // namespace hominv
