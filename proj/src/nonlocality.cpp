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

#include "hominv/nonlocality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "hominv/errors.hpp"
#include "hominv/identities.hpp"

namespace hominv {
namespace {

constexpr double kImagTol = 1e-8;
constexpr double kNegativeTol = 1e-8;
constexpr double kAcosClamp = 1e-12;
constexpr double kDoubleRootSnap = 1e-6;
constexpr double kFiniteDiffStep = 1e-6;
constexpr double kDegeneracyZ = 3.0;

std::array<double, 3> sorted_desc(std::array<double, 3> r) {
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

[[noreturn]] void unphysical(const std::string& why) { throw UnphysicalTripleError("unphysical triple: " + why); }

}  // namespace

std::string_view to_string(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::Direct: return "direct";
    case SpectrumMethod::FromJing: return "from-jing";
    case SpectrumMethod::FromMakhlin: return "from-makhlin";
  }
  return "?";
}

std::string_view to_string(EstimationPath p) { return p == EstimationPath::Jing ? "jing" : "makhlin"; }

std::string_view to_string(SpectralStructure s) {
  switch (s) {
    case SpectralStructure::General: return "general";
    case SpectralStructure::DoubleRoot: return "double-root";
    case SpectralStructure::TripleRoot: return "triple-root";
  }
  return "general";
}

RSpectrum spectrum_direct(const StateCoeffs& t) {
  const Eigen::Matrix3d b = t.correlations();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(b * b.transpose(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {sorted_desc({std::max(ev(0), 0.0), std::max(ev(1), 0.0), std::max(ev(2), 0.0)}),
          SpectrumMethod::Direct, false};
}

InvariantTriple jing_triple(const InvariantVector& j) {
  if (j.family() != Family::Jing) throw ValidationError("expected a jing invariant vector");
  return {Family::Jing, {j[1], j[2], j[3]}};
}

InvariantTriple makhlin_triple(const InvariantVector& m) {
  if (m.family() != Family::Makhlin) throw ValidationError("expected a makhlin invariant vector");
  return {Family::Makhlin, {m[1], m[2], m[3]}};
}

std::array<double, 3> power_sums(const InvariantTriple& triple) {
  const auto& v = triple.values;
  if (triple.family == Family::Jing) return {v[0], v[1], v[2]};
  // det R = I1^2 closes Newton's identities for the third power sum.
  return {v[1], v[2], 0.5 * (6.0 * v[0] * v[0] - v[1] * v[1] * v[1] + 3.0 * v[1] * v[2])};
}

RSpectrum spectrum_from_invariants(const InvariantTriple& triple, RootPolicy policy) {
  for (double x : triple.values)
    if (!std::isfinite(x)) throw ValidationError("invariant triple has a non-finite entry");
  const bool strict = policy == RootPolicy::Strict;
  const auto [p1, p2, p3] = power_sums(triple);
  const double mean = p1 / 3.0;
  // Shifted to y = r - mean: y^3 + P y + Q = 0. Both come from central
  // moments, so a triple root gives P = Q = 0 up to rounding.
  // The cancellations run in extended precision so that only the rounding
  // of the inputs themselves limits near-degenerate spectra.
  using wide = long double;
  const wide w1 = p1, w2 = p2, w3 = p3;
  const double spread = static_cast<double>(3 * w2 - w1 * w1);  // sum_{i<j} (r_i - r_j)^2
  const double P = -spread / 6.0;
  const double Q = static_cast<double>(-(w3 - w1 * w2 + 2 * w1 * w1 * w1 / 9) / 3);
  const double degenerate = 32.0 * std::numeric_limits<double>::epsilon() * (3.0 * std::abs(p2) + p1 * p1);

  RSpectrum out;
  out.method = triple.family == Family::Jing ? SpectrumMethod::FromJing : SpectrumMethod::FromMakhlin;
  std::array<double, 3> y{0.0, 0.0, 0.0};

  if (spread < -degenerate) {
    // P > 0: one real root and a complex pair.
    const double a = std::sqrt(P / 3.0);
    const double s = std::asinh(3.0 * Q / (2.0 * P) / a) / 3.0;
    const double imag = std::sqrt(3.0) * a * std::cosh(s);
    if (strict && imag > kImagTol) unphysical("complex roots (imaginary part " + std::to_string(imag) + ")");
    if (strict) {
      const double y0 = -2.0 * a * std::sinh(s);
      y = {y0, -0.5 * y0, -0.5 * y0};
    }
    out.projected = !strict;
  } else if (spread > degenerate) {
    const double a = 2.0 * std::sqrt(-P / 3.0);
    double arg = 3.0 * Q / (2.0 * P) * std::sqrt(-3.0 / P);
    // |arg| = 1 is a double root. P and Q carry absolute rounding of order
    // eps S^2 and eps S^3 (S = spectral scale), so arg is only known to
    // about |arg| eps (S^3/|Q| + 1.5 S^2/|P|). Beyond 1 by less than that is rounding,
    // not a complex pair; short of 1 by less than that (and resolvable at
    // all) is snapped to the double root, which pure states always have.
    const double scale = std::max({std::abs(p1), std::sqrt(std::abs(p2)), std::cbrt(std::abs(p3))});
    const double s2 = scale * scale;
    const double arg_err = std::max(std::abs(arg), 1.0) * std::numeric_limits<double>::epsilon() *
                           (s2 * scale / std::max(std::abs(Q), 1e-300) + 1.5 * s2 / -P);
    const double excess = std::abs(arg) - 1.0;
    if (excess <= std::max(64.0 * arg_err, kAcosClamp) && excess >= -std::min(arg_err, kDoubleRootSnap))
      arg = std::copysign(1.0, arg);
    if (std::abs(arg) > 1.0) {
      const double imag = std::sqrt(3.0) * 0.5 * a * std::sinh(std::acosh(std::abs(arg)) / 3.0);
      if (strict && imag > kImagTol) unphysical("complex roots (imaginary part " + std::to_string(imag) + ")");
      out.projected = !strict;
    }
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) y[k] = a * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
  }

  for (int k = 0; k < 3; ++k) {
    double r = y[k] + mean;
    if (r < -kNegativeTol) {
      if (strict) unphysical("negative root " + std::to_string(r));
      out.projected = true;
    }
    if (!strict && r > 1.0) {
      r = 1.0;
      out.projected = true;
    }
    out.r[k] = std::max(r, 0.0);
  }
  out.r = sorted_desc(out.r);
  return out;
}

double bell_M(const RSpectrum& spec) { return spec.r[0] + spec.r[1] - 1.0; }

double fef(const RSpectrum& spec) {
  double sum = 0.0;
  for (double r : spec.r) sum += std::sqrt(std::max(r, 0.0));
  return 0.25 * (sum + 1.0);
}

EntropicWitness entropic_E(const RSpectrum& spec, double purity_alice, double purity_bob, double tol) {
  EntropicWitness w;
  w.purity_alice = purity_alice;
  w.purity_bob = purity_bob;
  // Purity (1 + |v|^2) / 2, so |s^2 - p^2| is twice the purity gap.
  if (2.0 * std::abs(purity_alice - purity_bob) <= tol)
    w.value = 0.5 * (spec.r[0] + spec.r[1] + spec.r[2] - 1.0);
  return w;
}

EntropicWitness entropic_E(const RSpectrum& spec, const StateCoeffs& t) {
  return entropic_E(spec, purity_alice(t), purity_bob(t));
}

NonlocalityReport nonlocality_from_state(const StateCoeffs& t, SpectrumMethod method) {
  NonlocalityReport rep;
  switch (method) {
    case SpectrumMethod::Direct: rep.spectrum = spectrum_direct(t); break;
    case SpectrumMethod::FromJing: rep.spectrum = spectrum_from_invariants(jing_triple(jing_invariants(t))); break;
    case SpectrumMethod::FromMakhlin:
      rep.spectrum = spectrum_from_invariants(makhlin_triple(makhlin_invariants(t)));
      break;
  }
  rep.M = bell_M(rep.spectrum);
  rep.f = fef(rep.spectrum);
  rep.E = entropic_E(rep.spectrum, t);
  return rep;
}

const std::vector<std::string>& required_configs(EstimationPath path) {
  static const std::vector<std::string> jing = {"fig5-top", "fig5-bottom", "fig6"};
  static const std::vector<std::string> makhlin = {"fig5-top", "fig5-bottom", "fig7-l0", "fig7-lbar1",
                                                   "fig7-lbar2"};
  return path == EstimationPath::Jing ? jing : makhlin;
}

namespace {

// Shifted cubic y^3 + P y + Q = 0 of the power sums, and the acos argument
// whose value +-1 marks a double root.
struct Shifted {
  double mean, spread, arg;
};

Shifted shifted_cubic(const InvariantTriple& triple) {
  const auto [p1, p2, p3] = power_sums(triple);
  const double spread = 3.0 * p2 - p1 * p1;
  const double P = -spread / 6.0;
  const double Q = -(p3 - p1 * p2 + 2.0 * p1 * p1 * p1 / 9.0) / 3.0;
  const double arg = P < 0.0 ? 3.0 * Q / (2.0 * P) * std::sqrt(-3.0 / P) : 0.0;
  return {p1 / 3.0, spread, arg};
}

// Roots with a degeneracy imposed: the triple root is the mean; the double
// root puts the acos argument at its nearer end.
RSpectrum structured_roots(const InvariantTriple& triple, SpectralStructure structure) {
  if (structure == SpectralStructure::General) return spectrum_from_invariants(triple, RootPolicy::Project);
  const Shifted c = shifted_cubic(triple);
  RSpectrum out;
  out.method = triple.family == Family::Jing ? SpectrumMethod::FromJing : SpectrumMethod::FromMakhlin;
  std::array<double, 3> r{c.mean, c.mean, c.mean};
  if (structure == SpectralStructure::DoubleRoot && c.spread > 0.0) {
    const double a = 2.0 * std::sqrt(c.spread / 18.0);
    const double theta = c.arg >= 0.0 ? 0.0 : std::numbers::pi / 3.0;
    for (int k = 0; k < 3; ++k) r[k] = c.mean + a * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
  }
  for (double& x : r) {
    if (x < 0.0 || x > 1.0) out.projected = true;
    x = std::clamp(x, 0.0, 1.0);
  }
  out.r = sorted_desc(r);
  return out;
}

// Everything the estimate reports, as one smooth function of the frequencies
// once the spectral structure is fixed.
enum Out { kT0, kT1, kT2, kR0, kR1, kR2, kM, kF, kE, kPurityGap, kPa, kPb, kSpread, kArg, kOutCount };
using Outputs = std::array<double, kOutCount>;

struct Evaluated {
  Outputs out{};
  InvariantTriple triple;
  RSpectrum spectrum;
};

Evaluated evaluate(const std::vector<TableFrequencies>& tables, const std::vector<LabelOccurrences>& occ,
                   EstimationPath path, SpectralStructure structure) {
  const DiagramValues v = label_estimates(tables, occ);
  Evaluated e;
  if (path == EstimationPath::Jing) {
    e.triple = {Family::Jing,
                {invariant_from_diagrams("I2", v), invariant_from_diagrams("I3", v), invariant_from_diagrams("J3", v)}};
  } else {
    e.triple = {Family::Makhlin,
                {invariant_from_diagrams("I1", v), invariant_from_diagrams("I2", v), invariant_from_diagrams("I3", v)}};
  }
  e.spectrum = structured_roots(e.triple, structure);
  const Shifted c = shifted_cubic(e.triple);
  const double i4 = invariant_from_diagrams("I4", v), i7 = invariant_from_diagrams("I7", v);
  auto& o = e.out;
  o = {e.triple.values[0], e.triple.values[1], e.triple.values[2], e.spectrum.r[0], e.spectrum.r[1],
       e.spectrum.r[2], bell_M(e.spectrum), fef(e.spectrum),
       0.5 * (e.spectrum.r[0] + e.spectrum.r[1] + e.spectrum.r[2] - 1.0), i4 - i7, 0.5 * (1.0 + i4),
       0.5 * (1.0 + i7), c.spread, c.arg};
  return e;
}

// Delta method: Var F = sum_tables (g' diag(q) g - (g'q)^2) / Z.
Outputs delta_variance(const std::vector<TableFrequencies>& freqs, const std::vector<LabelOccurrences>& occ,
                       EstimationPath path, SpectralStructure structure, const Outputs& base) {
  Outputs var{};
  for (std::size_t ti = 0; ti < freqs.size(); ++ti) {
    Outputs s1{}, s2{};
    for (std::size_t m = 0; m < freqs[ti].freq.size(); ++m) {
      const double q = freqs[ti].freq[m];
      if (q == 0.0) continue;
      auto shifted = freqs;
      shifted[ti].freq[m] += kFiniteDiffStep;
      const Outputs f = evaluate(shifted, occ, path, structure).out;
      for (int k = 0; k < kOutCount; ++k) {
        const double g = (f[k] - base[k]) / kFiniteDiffStep;
        s1[k] += q * g * g;
        s2[k] += q * g;
      }
    }
    for (int k = 0; k < kOutCount; ++k)
      var[k] += std::max(0.0, s1[k] - s2[k] * s2[k]) / static_cast<double>(freqs[ti].total);
  }
  return var;
}

}  // namespace

NonlocalityEstimate estimate_nonlocality(const std::vector<CountTable>& tables, EstimationPath path,
                                         const DiagramCatalog& catalog) {
  if (tables.empty()) throw ValidationError("no count tables supplied");
  std::vector<TableFrequencies> freqs;
  std::vector<LabelOccurrences> occ;
  for (const auto& t : tables) {
    freqs.push_back(frequencies(t));
    occ.push_back(label_occurrences(*freqs.back().config, catalog));
  }
  // At a degenerate spectrum the roots are not differentiable in the data:
  // a sampled split grows like the square root of the noise. A split the
  // data cannot resolve (within kDegeneracyZ standard errors) is estimated
  // as degenerate, which keeps the estimate smooth and its errors ~ 1/sqrt(N).
  // The standard errors are then conditional on that structure; split_bound
  // carries what an unresolved split could still move the roots by.
  const Evaluated general = evaluate(freqs, occ, path, SpectralStructure::General);
  const Outputs general_var = delta_variance(freqs, occ, path, SpectralStructure::General, general.out);
  SpectralStructure structure = SpectralStructure::General;
  if (general.out[kSpread] <= kDegeneracyZ * std::sqrt(general_var[kSpread])) {
    structure = SpectralStructure::TripleRoot;
  } else if (1.0 - std::abs(general.out[kArg]) <= kDegeneracyZ * std::sqrt(general_var[kArg])) {
    structure = SpectralStructure::DoubleRoot;
  }
  // Largest root shift a split still consistent with the data could cause.
  double split_bound = 0.0;
  if (structure == SpectralStructure::TripleRoot) {
    const double s_up = std::max(general.out[kSpread], 0.0) + kDegeneracyZ * std::sqrt(general_var[kSpread]);
    split_bound = std::sqrt(2.0 * s_up / 9.0);
  } else if (structure == SpectralStructure::DoubleRoot) {
    const double delta = 1.0 - std::abs(general.out[kArg]) + kDegeneracyZ * std::sqrt(general_var[kArg]);
    const double a = 2.0 * std::sqrt(general.out[kSpread] / 18.0);
    split_bound = a * std::acos(std::max(1.0 - delta, -1.0)) / 3.0;
  }
  const Evaluated base = structure == SpectralStructure::General ? general : evaluate(freqs, occ, path, structure);
  const Outputs var = structure == SpectralStructure::General
                          ? general_var
                          : delta_variance(freqs, occ, path, structure, base.out);
  auto se = [&](int k) { return std::sqrt(var[k]); };

  NonlocalityEstimate est;
  est.path = path;
  est.triple = base.triple;
  est.triple_se = {se(kT0), se(kT1), se(kT2)};
  est.spectrum = base.spectrum;
  est.structure = structure;
  est.split_bound = split_bound;
  est.r_se = {se(kR0), se(kR1), se(kR2)};
  est.M = base.out[kM];
  est.M_se = se(kM);
  est.f = base.out[kF];
  est.f_se = se(kF);
  // Sampled purities are never exactly equal; widen the gate by the noise.
  est.E = entropic_E(est.spectrum, base.out[kPa], base.out[kPb], kPurityTol + 4.0 * se(kPurityGap));
  est.E_se = se(kE);
  return est;
}

const std::vector<ResourceRow>& resource_table() {
  static const std::vector<ResourceRow> rows = [] {
    const std::string makhlin = "nonlocality --path makhlin | estimated (fig5-top, fig5-bottom, fig7-*)";
    const std::string jing = "nonlocality --path jing | estimated (fig5-top, fig5-bottom, fig6)";
    std::vector<ResourceRow> r = {
        {"direct", 1, std::nullopt, "all CHSH inequalities", false, "-"},
        {"beta matrix", 1, 9, "local", false, "nonlocality --path direct (state access)"},
        {"R matrix", 2, 6, "local", true, "nonlocality --path direct (state access)"},
        {"I1,I2,I3", 4, 3, "nonlocal", true, makhlin},
        {"I1,I2,I3", 6, 2, "nonlocal", true, makhlin},
        {"I1,I2,I3", 12, 1, "nonlocal", true, makhlin},
        {"J1,J2,J3", 6, 2, "local", true, jing},
        {"J1,J2,J3", 12, 1, "local", true, jing},
    };
    for (const auto& row : r)
      if (row.r_eigenvalue_method && (!row.measurements || row.copies * *row.measurements != 12))
        throw std::logic_error("resource table: copies x measurements != 12 for " + row.method);
    return r;
  }();
  return rows;
}

std::string resource_table_markdown() {
  std::ostringstream os;
  os << "| method | copies | measurements | procedure | pipeline |\n|---|---|---|---|---|\n";
  for (const auto& r : resource_table())
    os << "| " << r.method << " | " << r.copies << " | "
       << (r.measurements ? std::to_string(*r.measurements) : "∞") << " | " << r.procedure << " | "
       << r.pipeline << " |\n";
  return os.str();
}

std::string resource_table_csv() {
  std::ostringstream os;
  os << "method,copies,measurements,procedure,r_eigenvalue_method,pipeline\n";
  for (const auto& r : resource_table())
    os << '"' << r.method << "\"," << r.copies << ','
       << (r.measurements ? std::to_string(*r.measurements) : "inf") << ',' << r.procedure << ','
       << (r.r_eigenvalue_method ? "true" : "false") << ",\"" << r.pipeline << "\"\n";
  return os.str();
}

}  // namespace hominv
