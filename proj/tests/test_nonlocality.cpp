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

#include <gtest/gtest.h>

#include "hominv/errors.hpp"
#include "oracles.hpp"

namespace hominv {
namespace {

StateCoeffs coeffs(const DensityMatrix& rho) { return coeffs_from_density(rho); }
StateCoeffs hh() { return coeffs(DensityMatrix::from_state_vector(Vector4c(1, 0, 0, 0))); }

// H (x) I/2: Alice pure, Bob maximally mixed.
StateCoeffs h_mixed() {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = rho(1, 1) = 0.5;
  return coeffs(DensityMatrix(rho));
}

RSpectrum via(const StateCoeffs& t, SpectrumMethod m) { return nonlocality_from_state(t, m).spectrum; }

TEST(Spectrum, Singlet) {
  for (auto m : {SpectrumMethod::Direct, SpectrumMethod::FromJing, SpectrumMethod::FromMakhlin}) {
    const NonlocalityReport rep = nonlocality_from_state(coeffs(singlet_state()), m);
    for (double r : rep.spectrum.r) EXPECT_NEAR(r, 1.0, 1e-8);
    EXPECT_NEAR(rep.M, 1.0, 1e-8);
    EXPECT_NEAR(rep.f, 1.0, 1e-8);
    ASSERT_TRUE(rep.E.applicable());
    EXPECT_NEAR(*rep.E.value, 1.0, 1e-8);
  }
}

TEST(Spectrum, ProductAndMixed) {
  const RSpectrum p = via(hh(), SpectrumMethod::Direct);
  EXPECT_NEAR(p.r[0], 1.0, 1e-12);
  EXPECT_NEAR(p.r[1], 0.0, 1e-12);
  EXPECT_NEAR(p.r[2], 0.0, 1e-12);
  EXPECT_NEAR(bell_M(p), 0.0, 1e-12);
  const NonlocalityReport m = nonlocality_from_state(coeffs(maximally_mixed_state()), SpectrumMethod::FromJing);
  for (double r : m.spectrum.r) EXPECT_NEAR(r, 0.0, 1e-12);
  EXPECT_NEAR(m.M, -1.0, 1e-12);
  EXPECT_NEAR(m.f, 0.25, 1e-12);
  EXPECT_NEAR(*m.E.value, -0.5, 1e-12);
}

TEST(Spectrum, Werner) {
  for (double p : {0.0, 0.3, 0.5, 1.0 / std::sqrt(2.0), 0.9, 1.0}) {
    for (auto m : {SpectrumMethod::Direct, SpectrumMethod::FromJing, SpectrumMethod::FromMakhlin}) {
      const NonlocalityReport rep = nonlocality_from_state(coeffs(werner_state(p)), m);
      for (double r : rep.spectrum.r) EXPECT_NEAR(r, p * p, 1e-8) << p;
      EXPECT_NEAR(rep.M, 2 * p * p - 1, 1e-8);
      EXPECT_NEAR(rep.f, (3 * p + 1) / 4, 1e-8);
      EXPECT_NEAR(*rep.E.value, (3 * p * p - 1) / 2, 1e-8);
    }
  }
}

TEST(Spectrum, InvariantRoutesMatchOracle) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const DensityMatrix rho = seed % 2 ? random_state(seed, ensemble::MixedGinibre{})
                                       : random_state(seed, ensemble::PureHaar{});
    const StateCoeffs t = coeffs(rho);
    const auto truth = oracle::r_spectrum(oracle::coeffs(rho.entries()));
    for (auto m : {SpectrumMethod::FromJing, SpectrumMethod::FromMakhlin}) {
      const RSpectrum s = via(t, m);
      EXPECT_EQ(s.method, m);
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(s.r[i] - truth[i]));
    }
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Spectrum, DescendingOrder) {
  const RSpectrum s = via(coeffs(random_state(3, ensemble::MixedGinibre{})), SpectrumMethod::FromJing);
  EXPECT_GE(s.r[0], s.r[1]);
  EXPECT_GE(s.r[1], s.r[2]);
}

TEST(Cubic, PowerSums) {
  const InvariantVector m = makhlin_invariants(coeffs(random_state(9, ensemble::MixedGinibre{})));
  const InvariantVector j = jing_invariants(coeffs(random_state(9, ensemble::MixedGinibre{})));
  const auto pm = power_sums(makhlin_triple(m));
  const auto pj = power_sums(jing_triple(j));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pm[i], pj[i], 1e-12);
  EXPECT_THROW(jing_triple(m), ValidationError);
  EXPECT_THROW(makhlin_triple(j), ValidationError);
}

TEST(Cubic, ComplexRootsRejected) {
  // Power sums (3, 1, 1): spread 3*1 - 9 < 0 has no real spectrum.
  EXPECT_THROW(spectrum_from_invariants({Family::Jing, {3, 1, 1}}), UnphysicalTripleError);
}

TEST(Cubic, NegativeRootRejectedThenProjected) {
  // Roots 1, 1, -0.5: p1 = 1.5, p2 = 2.25, p3 = 1.875.
  const InvariantTriple bad{Family::Jing, {1.5, 2.25, 1.875}};
  EXPECT_THROW(spectrum_from_invariants(bad), UnphysicalTripleError);
  const RSpectrum s = spectrum_from_invariants(bad, RootPolicy::Project);
  EXPECT_TRUE(s.projected);
  for (double r : s.r) EXPECT_GE(r, 0.0);
  EXPECT_NEAR(s.r[0], 1.0, 1e-9);
  EXPECT_THROW(spectrum_from_invariants({Family::Jing, {NAN, 0, 0}}), ValidationError);
}

TEST(Cubic, TripleRootIsExact) {
  const RSpectrum s = spectrum_from_invariants({Family::Jing, {0.75, 0.1875, 0.046875}});
  for (double r : s.r) EXPECT_NEAR(r, 0.25, 1e-12);
  EXPECT_FALSE(s.projected);
}

TEST(Measures, EntropicNotApplicableForUnequalMarginals) {
  const NonlocalityReport rep = nonlocality_from_state(h_mixed(), SpectrumMethod::Direct);
  EXPECT_FALSE(rep.E.applicable());
  EXPECT_NEAR(rep.E.purity_alice, 1.0, 1e-12);
  EXPECT_NEAR(rep.E.purity_bob, 0.5, 1e-12);
  RSpectrum s;
  EXPECT_TRUE(entropic_E(s, 0.7, 0.7 + 4e-10).applicable());
  EXPECT_FALSE(entropic_E(s, 0.7, 0.7 + 1e-6).applicable());
}

TEST(Measures, BoundsAndMonotonicity) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const NonlocalityReport rep =
        nonlocality_from_state(coeffs(random_state(seed, ensemble::MixedGinibre{})), SpectrumMethod::Direct);
    EXPECT_GE(rep.M, -1.0 - 1e-12);
    EXPECT_LE(rep.M, 1.0 + 1e-12);
    EXPECT_GE(rep.f, 0.25 - 1e-12);
    EXPECT_LE(rep.f, 1.0 + 1e-12);
  }
  double last = -2;
  for (double p = 0; p <= 1.0001; p += 0.05) {
    const double m = bell_M(via(coeffs(werner_state(std::min(p, 1.0))), SpectrumMethod::Direct));
    EXPECT_GT(m, last);
    last = m;
  }
}

TEST(Estimate, BothPathsRecoverWerner) {
  const StateCoeffs t = coeffs(werner_state(0.9));
  for (auto path : {EstimationPath::Jing, EstimationPath::Makhlin}) {
    std::vector<CountTable> tables;
    std::uint64_t k = 0;
    for (const auto& name : required_configs(path))
      tables.push_back(sample_events(interferometer_config(name), t, 400000, 50 + k++));
    const NonlocalityEstimate est = estimate_nonlocality(tables, path);
    EXPECT_EQ(est.path, path);
    EXPECT_GT(est.M_se, 0.0);
    EXPECT_NEAR(est.M, 0.62, 5 * est.M_se) << to_string(path);
    EXPECT_NEAR(est.f, 0.925, 5 * est.f_se + 1e-9);
  }
}

std::vector<CountTable> sample_path(const StateCoeffs& t, EstimationPath path, std::uint64_t n, std::uint64_t seed) {
  std::vector<CountTable> tables;
  for (const auto& name : required_configs(path))
    tables.push_back(sample_events(interferometer_config(name), t, n, seed * 17 + tables.size()));
  return tables;
}

TEST(Estimate, DegenerateSpectrumIsDetected) {
  const NonlocalityEstimate est =
      estimate_nonlocality(sample_path(coeffs(werner_state(0.9)), EstimationPath::Jing, 200000, 3), EstimationPath::Jing);
  EXPECT_EQ(est.structure, SpectralStructure::TripleRoot);
  EXPECT_DOUBLE_EQ(est.spectrum.r[0], est.spectrum.r[2]);
  EXPECT_NEAR(est.M, 2.0 * est.triple.values[0] / 3.0 - 1.0, 1e-12);
  EXPECT_GT(est.split_bound, 0.0);
}

// Off the degenerate manifold: calibrated once the split bound is included,
// and the general solve takes over when the data resolve the spectrum.
TEST(Estimate, NonDegenerateCoverage) {
  // Bell-diagonal, R spectrum (0.36, 0.0625, 0.01).
  const StateCoeffs t(Eigen::Vector4d(1, -0.6, 0.25, -0.1).asDiagonal().toDenseMatrix());
  const double truth = nonlocality_from_state(t, SpectrumMethod::Direct).M;
  for (auto path : {EstimationPath::Jing, EstimationPath::Makhlin}) {
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const NonlocalityEstimate est = estimate_nonlocality(sample_path(t, path, 200000, seed), path);
      EXPECT_EQ(est.split_bound > 0, est.structure != SpectralStructure::General);
      inside += std::abs(est.M - truth) <= 4 * est.M_se + est.split_bound;
    }
    EXPECT_GE(inside, 9) << to_string(path);
  }
  const NonlocalityEstimate big =
      estimate_nonlocality(sample_path(t, EstimationPath::Makhlin, 10'000'000, 1), EstimationPath::Makhlin);
  EXPECT_EQ(big.structure, SpectralStructure::General);
  EXPECT_NEAR(big.M, truth, 4 * big.M_se);
}

TEST(Estimate, MissingTableIsUnresolved) {
  const StateCoeffs t = coeffs(werner_state(0.5));
  const std::vector<CountTable> only_top{sample_events(interferometer_config("fig5-top"), t, 1000, 1)};
  EXPECT_THROW(estimate_nonlocality(only_top, EstimationPath::Jing), UnresolvedTermError);
  EXPECT_THROW(estimate_nonlocality(only_top, EstimationPath::Makhlin), UnresolvedTermError);
  EXPECT_THROW(estimate_nonlocality({}, EstimationPath::Jing), ValidationError);
}

TEST(Resources, TableShape) {
  const auto& rows = resource_table();
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_FALSE(rows[0].measurements.has_value());
  int r_rows = 0;
  for (const auto& r : rows) {
    if (!r.r_eigenvalue_method) continue;
    ++r_rows;
    ASSERT_TRUE(r.measurements.has_value());
    EXPECT_EQ(r.copies * *r.measurements, 12) << r.method;
  }
  EXPECT_EQ(r_rows, 6);
  EXPECT_NE(resource_table_markdown().find("| "), std::string::npos);
  const std::string csv = resource_table_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

}  // namespace
}  // namespace hominv
