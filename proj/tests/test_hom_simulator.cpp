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

#include "hominv/hom_simulator.hpp"

#include <gtest/gtest.h>

#include "hominv/errors.hpp"

namespace hominv {
namespace {

StateCoeffs mixed(std::uint64_t seed) { return coeffs_from_density(random_state(seed, ensemble::MixedGinibre{})); }
StateCoeffs coeffs(const DensityMatrix& rho) { return coeffs_from_density(rho); }

TEST(Configs, PairsMatchEdges) {
  ASSERT_EQ(interferometer_configs().size(), 6u);
  for (const auto& c : interferometer_configs()) {
    EXPECT_EQ(c.detector_pairs.size(), c.diagram.edge_count()) << c.name;
    EXPECT_EQ(&interferometer_config(c.name), &c);
  }
  EXPECT_THROW(interferometer_config("fig9"), ValidationError);
}

TEST(Configs, LoopLabels) {
  const auto& cat = DiagramCatalog::builtin();
  EXPECT_EQ(cat.identify(interferometer_config("fig5-top").diagram), Label::l1);
  EXPECT_EQ(cat.identify(interferometer_config("fig5-bottom").diagram), Label::l2);
  EXPECT_EQ(cat.identify(interferometer_config("fig6").diagram), Label::l3);
  EXPECT_EQ(cat.identify(interferometer_config("fig7-l0").diagram), Label::l0);
  EXPECT_EQ(cat.identify(interferometer_config("fig7-lbar1").diagram), Label::lbar1);
  EXPECT_EQ(cat.identify(interferometer_config("fig7-lbar2").diagram), Label::lbar2);
}

TEST(Sample, IntraCopyEdgeOnMaximallyMixed) {
  const std::uint64_t n = 1'000'000;
  const CountTable t = sample_events(interferometer_config("fig7-l0"), coeffs(maximally_mixed_state()), n, 1);
  EXPECT_EQ(t.total, n);
  const double freq = static_cast<double>(t.counts[1]) / n;
  EXPECT_NEAR(freq, 0.25, 3 * std::sqrt(0.25 * 0.75 / n));
}

TEST(Sample, SingletAlwaysAnticoalesces) {
  const CountTable t = sample_events(interferometer_config("fig7-l0"), coeffs(singlet_state()), 100000, 4);
  EXPECT_EQ(t.counts[1], 100000u);
  EXPECT_EQ(t.counts[0], 0u);
}

TEST(Sample, ProductStateNeverFiresBothLoopPairs) {
  const auto hh = coeffs(DensityMatrix::from_state_vector(Vector4c(1, 0, 0, 0)));
  const CountTable t = sample_events(interferometer_config("fig5-top"), hh, 100000, 2);
  EXPECT_EQ(t.counts[0b11], 0u);
}

TEST(Sample, ReproducibleAcrossBlocks) {
  const auto& cfg = interferometer_config("fig6");
  const StateCoeffs s = coeffs(werner_state(0.8));
  const std::uint64_t n = 3 * kEventsPerBlock + 17;
  const CountTable a = sample_events(cfg, s, n, 99), b = sample_events(cfg, s, n, 99);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.counts, sample_events(cfg, s, n, 100).counts);
  std::uint64_t sum = 0;
  for (auto c : a.counts) sum += c;
  EXPECT_EQ(sum, n);
  EXPECT_EQ(a.counts.size(), 64u);
}

TEST(Sample, MarginalSumsSupersets) {
  CountTable t{"fig5-top", 0, 10, {1, 2, 3, 4}};
  EXPECT_EQ(t.marginal(0), 10u);
  EXPECT_EQ(t.marginal(0b01), 6u);
  EXPECT_EQ(t.marginal(0b11), 4u);
}

TEST(Estimate, LoopFromFig5Top) {
  const StateCoeffs s = mixed(5);
  const CountTable t = sample_events(interferometer_config("fig5-top"), s, 200000, 8);
  const EstimatedValues est = estimate_diagram_values({t});
  EXPECT_DOUBLE_EQ(est.values[Label::l1], static_cast<double>(t.counts[0b11]) / t.total);
  EXPECT_DOUBLE_EQ(est.values[Label::c1], static_cast<double>(t.marginal(0b10)) / t.total);
}

TEST(Estimate, IntraCopyLoopFromFig7) {
  const CountTable t = sample_events(interferometer_config("fig7-l0"), mixed(2), 50000, 1);
  EXPECT_DOUBLE_EQ(estimate_diagram_values({t}).values[Label::l0], static_cast<double>(t.counts[1]) / t.total);
}

TEST(Estimate, MaximallyMixedChain) {
  const std::uint64_t n = 1'000'000;
  const CountTable t = sample_events(interferometer_config("fig5-top"), coeffs(maximally_mixed_state()), n, 3);
  const EstimatedValues est = estimate_diagram_values({t});
  EXPECT_NEAR(est.values[Label::c2], 0.25, 3 * std::sqrt(0.25 * 0.75 / n));
  EXPECT_NEAR(est.std_errors.at(Label::c2), std::sqrt(0.25 * 0.75 / n), 1e-5);
}

TEST(Estimate, ZeroEventTableIsInsufficient) {
  CountTable t{"fig5-top", 0, 0, {0, 0, 0, 0}};
  EXPECT_THROW(estimate_diagram_values({t}), InsufficientStatisticsError);
}

TEST(Estimate, MismatchedTotalIsRejected) {
  CountTable t{"fig5-top", 0, 5, {1, 1, 1, 1}};
  EXPECT_THROW(estimate_diagram_values({t}), ValidationError);
}

TEST(Estimate, ConsistentWithContraction) {
  const auto& cat = DiagramCatalog::builtin();
  int inside = 0, total = 0;
  for (const auto& cfg : interferometer_configs()) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const StateCoeffs s = mixed(100 + k);
      const EstimatedValues est = estimate_diagram_values({sample_events(cfg, s, 100000, 7 * k + 1)});
      for (const auto& [l, v] : est.values.entries()) {
        const double truth = contract(cat.diagram(l), s);
        const double sigma = std::sqrt(std::max(truth * (1 - truth), 1e-12) / est.trials.at(l));
        inside += std::abs(v - truth) <= 4 * sigma;
        ++total;
      }
    }
  }
  EXPECT_GE(inside, 0.99 * total) << inside << " / " << total;
}

TEST(Tables, PatternInterpretation) {
  const auto& bottom = interferometer_config("fig5-bottom");
  EXPECT_EQ(interpret_pattern(bottom, 0), "1");
  EXPECT_EQ(interpret_pattern(bottom, 0b1100), "c1^2");
  EXPECT_EQ(interpret_pattern(bottom, 0b1110), "c4");
  EXPECT_EQ(interpret_pattern(bottom, 0b1111), "l2");
  EXPECT_EQ(pattern_string(bottom, 0b0101), "asas");
}

TEST(Tables, FiguresFiveAndSevenAgreeWithReference) {
  for (const char* name : {"fig5-top", "fig5-bottom", "fig7-l0", "fig7-lbar1", "fig7-lbar2"}) {
    for (const auto& row : compare_with_reference(interferometer_config(name)))
      EXPECT_TRUE(row.agrees) << name << " " << row.pattern << ": " << row.derived << " vs " << row.reference;
  }
}

// The six-copy reference table cannot be matched by any single assignment
// of detector pairs to beam splitters; the rows that disagree are flagged.
TEST(Tables, SixCopyDisagreementsAreFlagged) {
  const auto rows = compare_with_reference(interferometer_config("fig6"));
  ASSERT_EQ(rows.size(), 64u);
  int flagged = 0;
  for (const auto& row : rows) {
    EXPECT_FALSE(row.reference.empty()) << row.pattern;
    if (row.agrees) continue;
    ++flagged;
    EXPECT_NE(row.derived, row.reference) << row.pattern;
  }
  EXPECT_EQ(flagged, 14);
}

}  // namespace
}  // namespace hominv
