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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hominv/hom_simulator.hpp"
#include "hominv/invariants.hpp"
#include "hominv/pauli_core.hpp"

namespace hominv {

enum class SpectrumMethod { Direct, FromJing, FromMakhlin };
std::string_view to_string(SpectrumMethod m);

/// Eigenvalues of R = beta beta^T, r[0] >= r[1] >= r[2] >= 0.
struct RSpectrum {
  std::array<double, 3> r{};
  SpectrumMethod method = SpectrumMethod::Direct;
  /// Set when a lenient solve had to clamp an out-of-range quantity.
  bool projected = false;
};

RSpectrum spectrum_direct(const StateCoeffs& t);

/// (J1, J2, J3) or (I1, I2, I3).
struct InvariantTriple {
  Family family = Family::Jing;
  std::array<double, 3> values{};
};

InvariantTriple jing_triple(const InvariantVector& jing);
InvariantTriple makhlin_triple(const InvariantVector& makhlin);

/// Power sums Tr R, Tr R^2, Tr R^3. Makhlin: Tr R^3 = (6 I1^2 - I2^3 + 3 I2 I3) / 2.
std::array<double, 3> power_sums(const InvariantTriple& triple);

enum class RootPolicy {
  /// Reject complex or negative roots beyond 1e-8.
  Strict,
  /// Project onto the nearest real non-negative spectrum (sampled data).
  Project,
};

/// Roots of r^3 - p1 r^2 + (p1^2 - p2)/2 r - (p1^3 - 3 p1 p2 + 2 p3)/6.
RSpectrum spectrum_from_invariants(const InvariantTriple& triple, RootPolicy policy = RootPolicy::Strict);

/// Horodecki CHSH measure r1 + r2 - 1.
double bell_M(const RSpectrum& spec);
/// Fully entangled fraction (sqrt r1 + sqrt r2 + sqrt r3 + 1) / 4.
double fef(const RSpectrum& spec);

inline constexpr double kPurityTol = 1e-9;

struct EntropicWitness {
  std::optional<double> value;
  double purity_alice = 0.0;
  double purity_bob = 0.0;
  bool applicable() const { return value.has_value(); }
};

/// (Tr R - 1) / 2 when the subsystem purities agree within `tol`.
EntropicWitness entropic_E(const RSpectrum& spec, double purity_alice, double purity_bob,
                           double tol = kPurityTol);
EntropicWitness entropic_E(const RSpectrum& spec, const StateCoeffs& t);

/// Direct, jing and makhlin paths from a known state.
struct NonlocalityReport {
  RSpectrum spectrum;
  double M = 0.0;
  double f = 0.0;
  EntropicWitness E;
};

NonlocalityReport nonlocality_from_state(const StateCoeffs& t, SpectrumMethod method);

enum class EstimationPath { Jing, Makhlin };
std::string_view to_string(EstimationPath p);

/// Tables each path reads its diagram labels from.
const std::vector<std::string>& required_configs(EstimationPath path);

/// Degeneracy the sampled spectrum is estimated with.
enum class SpectralStructure { General, DoubleRoot, TripleRoot };
std::string_view to_string(SpectralStructure s);

struct NonlocalityEstimate {
  EstimationPath path = EstimationPath::Jing;
  SpectralStructure structure = SpectralStructure::General;
  /// Bound on |r_i| and |M| shifts from a split the data could not resolve
  /// (0 for General). Not included in the standard errors.
  double split_bound = 0.0;
  InvariantTriple triple;
  std::array<double, 3> triple_se{};
  RSpectrum spectrum;
  std::array<double, 3> r_se{};
  double M = 0.0, M_se = 0.0;
  double f = 0.0, f_se = 0.0;
  EntropicWitness E;
  double E_se = 0.0;
};

/// Full sampled pipeline: counts -> labels -> invariant triple -> cubic ->
/// M, f, E. Standard errors by the delta method over the multinomial
/// pattern frequencies, with forward differences of step 1e-6. A root split
/// within 3 standard errors of zero is estimated as degenerate.
NonlocalityEstimate estimate_nonlocality(const std::vector<CountTable>& tables, EstimationPath path,
                                         const DiagramCatalog& catalog = DiagramCatalog::builtin());

struct ResourceRow {
  std::string method;
  int copies = 0;
  std::optional<int> measurements;  // nullopt = unbounded
  std::string procedure;
  bool r_eigenvalue_method = false;
  std::string pipeline;
};

/// Resource comparison of CHSH-measurement methods. Throws if any
/// R-eigenvalue row has copies x measurements != 12.
const std::vector<ResourceRow>& resource_table();
std::string resource_table_markdown();
std::string resource_table_csv();

}  // namespace hominv
