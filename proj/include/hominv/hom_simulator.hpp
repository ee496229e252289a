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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hominv/diagrams.hpp"

namespace hominv {

/// One interferometer: a diagram whose edges are beam splitters, each watched
/// by a detector pair. `detector_pairs[i]` names the pair behind edge i.
struct InterferometerConfig {
  std::string name;
  Diagram diagram;
  std::vector<std::string> detector_pairs;
};

/// fig5-top (l1), fig5-bottom (l2), fig6 (l3), fig7-l0, fig7-lbar1, fig7-lbar2.
const std::vector<InterferometerConfig>& interferometer_configs();
const InterferometerConfig& interferometer_config(std::string_view name);

/// Tallies of joint detector-pair outcomes. `counts[mask]` counts events
/// where pair i anticoalesced iff bit i of `mask` is set.
struct CountTable {
  std::string config;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> counts;

  /// Events where every pair in `anti` anticoalesced, others unconstrained.
  std::uint64_t marginal(std::uint32_t anti) const;

  friend bool operator==(const CountTable&, const CountTable&) = default;
};

inline constexpr std::uint64_t kEventsPerBlock = 1u << 16;

/// Draw `n_events` i.i.d. outcome patterns. Block b of kEventsPerBlock
/// events uses Philox stream b, so the table depends only on the seed.
CountTable sample_events(const InterferometerConfig& config, const StateCoeffs& t,
                         std::uint64_t n_events, std::uint64_t seed);

/// Label estimates with binomial standard errors.
struct EstimatedValues {
  DiagramValues values;
  std::map<Label, double> std_errors;
  std::map<Label, std::uint64_t> trials;
};

/// Each label is read from the marginals where exactly its sub-diagram
/// anticoalesces (all other pairs summed). Occurrences within a table are
/// averaged; tables are pooled by event count. Zero-event tables throw
/// InsufficientStatisticsError.
EstimatedValues estimate_diagram_values(const std::vector<CountTable>& tables,
                                        const DiagramCatalog& catalog = DiagramCatalog::builtin());

/// Observed frequencies as a dense vector over masks.
struct TableFrequencies {
  const InterferometerConfig* config = nullptr;
  std::uint64_t total = 0;
  std::vector<double> freq;
};

TableFrequencies frequencies(const CountTable& table);

/// Anti-subsets (edge masks) of a config whose sub-diagram is one catalogued label.
using LabelOccurrences = std::vector<std::pair<std::uint32_t, Label>>;
LabelOccurrences label_occurrences(const InterferometerConfig& config,
                                   const DiagramCatalog& catalog = DiagramCatalog::builtin());

/// Label estimates from relative frequencies (the smooth map the estimator
/// and its error propagation share). `occurrences[i]` belongs to `tables[i]`.
DiagramValues label_estimates(const std::vector<TableFrequencies>& tables,
                              const std::vector<LabelOccurrences>& occurrences);
DiagramValues label_estimates(const std::vector<TableFrequencies>& tables,
                              const DiagramCatalog& catalog = DiagramCatalog::builtin());

/// Product of catalog labels for the sub-diagram where the pairs in `anti`
/// anticoalesce and the rest are summed, e.g. "c1^2*c3"; "1" when empty.
std::string interpret_pattern(const InterferometerConfig& config, std::uint32_t anti,
                              const DiagramCatalog& catalog = DiagramCatalog::builtin());

/// Pattern string over detector pairs, 'a' (anticoalescence) or 's' (summed).
std::string pattern_string(const InterferometerConfig& config, std::uint32_t anti);

struct TableRowCheck {
  std::string pattern;
  std::string derived;
  std::string reference;
  bool agrees = false;
};

/// Compare every a/s row derived from the config's own diagram against the
/// reference interpretation table; disagreeing rows are flagged, not forced.
std::vector<TableRowCheck> compare_with_reference(const InterferometerConfig& config,
                                                  const DiagramCatalog& catalog = DiagramCatalog::builtin());

/// Reference rows: pattern over the config's detector pairs -> product.
const std::vector<std::pair<std::string, std::string>>& reference_rows(std::string_view config);

}  // namespace hominv
