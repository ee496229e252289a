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

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "hominv/errors.hpp"
#include "hominv/rng.hpp"

namespace hominv {
namespace {

Edge edge(int c1, Side s1, int c2, Side s2) { return {{c1 - 1, s1}, {c2 - 1, s2}}; }

std::vector<InterferometerConfig> make_configs() {
  constexpr Side A = Side::A, B = Side::B;
  std::vector<InterferometerConfig> out;
  out.push_back({"fig5-top", Diagram(2, {edge(1, A, 2, A), edge(1, B, 2, B)}), {"D_a1", "D_b1"}});
  out.push_back({"fig5-bottom",
                 Diagram(4, {edge(1, A, 2, A), edge(3, A, 4, A), edge(2, B, 3, B), edge(4, B, 1, B)}),
                 {"D_a2", "D_a3", "D_b2", "D_b3"}});
  // Alice pairs close copies (1,2),(3,4),(5,6); Bob pairs (2,3),(4,5),(6,1).
  out.push_back({"fig6",
                 Diagram(6, {edge(1, A, 2, A), edge(3, A, 4, A), edge(5, A, 6, A), edge(2, B, 3, B),
                             edge(4, B, 5, B), edge(6, B, 1, B)}),
                 {"D_a1", "D_a2", "D_a3", "D_b1", "D_b2", "D_b3"}});
  out.push_back({"fig7-l0", Diagram(1, {edge(1, A, 1, B)}), {"D_01"}});
  out.push_back({"fig7-lbar1", Diagram(2, {edge(1, A, 2, B), edge(1, B, 2, A)}), {"D_11", "D_12"}});
  out.push_back({"fig7-lbar2",
                 Diagram(3, {edge(1, A, 2, B), edge(2, A, 3, B), edge(3, A, 1, B)}),
                 {"D_21", "D_22", "D_23"}});
  return out;
}

const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>&
reference_data() {
  static const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
      data = {
#include "reference_tables.inc"
      };
  return data;
}

std::string product_string(const std::vector<Label>& labels) {
  std::map<Label, int> power;
  for (Label l : labels) ++power[l];
  std::string out;
  for (const auto& [l, k] : power) {
    if (!out.empty()) out += '*';
    out += to_string(l);
    if (k > 1) out += '^' + std::to_string(k);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

const std::vector<InterferometerConfig>& interferometer_configs() {
  static const std::vector<InterferometerConfig> configs = make_configs();
  return configs;
}

const InterferometerConfig& interferometer_config(std::string_view name) {
  for (const auto& c : interferometer_configs())
    if (c.name == name) return c;
  throw ValidationError("unknown interferometer config '" + std::string(name) + "'");
}

std::uint64_t CountTable::marginal(std::uint32_t anti) const {
  std::uint64_t sum = 0;
  for (std::uint32_t m = 0; m < counts.size(); ++m)
    if ((m & anti) == anti) sum += counts[m];
  return sum;
}

CountTable sample_events(const InterferometerConfig& config, const StateCoeffs& t,
                         std::uint64_t n_events, std::uint64_t seed) {
  std::vector<double> p = pattern_distribution(config.diagram, t);
  // Exact probabilities can dip below zero by rounding only.
  double norm = 0.0;
  for (double& x : p) norm += (x = std::max(x, 0.0));
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = (acc += p[i] / norm);
  cdf.back() = 1.0;

  const std::uint64_t n_blocks = (n_events + kEventsPerBlock - 1) / kEventsPerBlock;
  const unsigned n_threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(n_blocks, 1)));
  std::vector<std::vector<std::uint64_t>> partial(n_threads, std::vector<std::uint64_t>(p.size(), 0));

  auto worker = [&](unsigned tid) {
    auto& local = partial[tid];
    for (std::uint64_t b = tid; b < n_blocks; b += n_threads) {
      Philox4x32 rng(seed, b);
      const std::uint64_t len = std::min(kEventsPerBlock, n_events - b * kEventsPerBlock);
      for (std::uint64_t e = 0; e < len; ++e) {
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), rng.uniform());
        ++local[std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1)];
      }
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned tid = 0; tid < n_threads; ++tid) pool.emplace_back(worker, tid);
  }

  CountTable table{config.name, seed, n_events, std::vector<std::uint64_t>(p.size(), 0)};
  for (const auto& local : partial)
    for (std::size_t i = 0; i < local.size(); ++i) table.counts[i] += local[i];
  return table;
}

TableFrequencies frequencies(const CountTable& table) {
  const InterferometerConfig& config = interferometer_config(table.config);
  const std::size_t expected = std::size_t{1} << config.diagram.edge_count();
  if (table.counts.size() != expected) {
    throw ValidationError("count table for " + table.config + " has " + std::to_string(table.counts.size()) +
                          " patterns, expected " + std::to_string(expected));
  }
  std::uint64_t sum = 0;
  for (auto c : table.counts) sum += c;
  if (sum != table.total) throw ValidationError("count table total does not match its counts");
  if (table.total == 0) throw InsufficientStatisticsError("count table for " + table.config + " has zero events");
  TableFrequencies f{&config, table.total, std::vector<double>(expected)};
  for (std::size_t i = 0; i < expected; ++i) f.freq[i] = static_cast<double>(table.counts[i]) / table.total;
  return f;
}

namespace {

double marginal(const std::vector<double>& freq, std::uint32_t anti) {
  double sum = 0.0;
  for (std::uint32_t m = 0; m < freq.size(); ++m)
    if ((m & anti) == anti) sum += freq[m];
  return sum;
}

struct Pooled {
  double weighted = 0.0;
  std::uint64_t trials = 0;
};

std::map<Label, Pooled> pool(const std::vector<TableFrequencies>& tables,
                             const std::vector<LabelOccurrences>& occurrences) {
  if (occurrences.size() != tables.size()) throw ValidationError("one occurrence list per table required");
  std::map<Label, Pooled> acc;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    std::map<Label, std::pair<double, int>> within;
    for (const auto& [s, l] : occurrences[i]) {
      auto& w = within[l];
      w.first += marginal(t.freq, s);
      ++w.second;
    }
    for (const auto& [l, w] : within) {
      acc[l].weighted += static_cast<double>(t.total) * w.first / w.second;
      acc[l].trials += t.total;
    }
  }
  return acc;
}

std::vector<LabelOccurrences> occurrences_for(const std::vector<TableFrequencies>& tables,
                                              const DiagramCatalog& catalog) {
  std::vector<LabelOccurrences> out;
  for (const auto& t : tables) out.push_back(label_occurrences(*t.config, catalog));
  return out;
}

}  // namespace

LabelOccurrences label_occurrences(const InterferometerConfig& config, const DiagramCatalog& catalog) {
  LabelOccurrences out;
  const std::uint32_t n = 1u << config.diagram.edge_count();
  for (std::uint32_t s = 1; s < n; ++s) {
    const auto comps = config.diagram.sub_diagram(s).components();
    if (comps.size() != 1) continue;
    if (auto l = catalog.identify(comps.front())) out.emplace_back(s, *l);
  }
  return out;
}

DiagramValues label_estimates(const std::vector<TableFrequencies>& tables,
                              const std::vector<LabelOccurrences>& occurrences) {
  DiagramValues v;
  for (const auto& [l, p] : pool(tables, occurrences)) v.set(l, p.weighted / static_cast<double>(p.trials));
  return v;
}

DiagramValues label_estimates(const std::vector<TableFrequencies>& tables, const DiagramCatalog& catalog) {
  return label_estimates(tables, occurrences_for(tables, catalog));
}

EstimatedValues estimate_diagram_values(const std::vector<CountTable>& tables, const DiagramCatalog& catalog) {
  std::vector<TableFrequencies> freqs;
  for (const auto& t : tables) freqs.push_back(frequencies(t));
  EstimatedValues out;
  for (const auto& [l, p] : pool(freqs, occurrences_for(freqs, catalog))) {
    const double v = p.weighted / static_cast<double>(p.trials);
    out.values.set(l, v);
    // Averaging correlated occurrences never increases variance, so the
    // single-occurrence binomial error is a conservative bound.
    out.std_errors[l] = std::sqrt(v * (1.0 - v) / static_cast<double>(p.trials));
    out.trials[l] = p.trials;
  }
  return out;
}

std::string pattern_string(const InterferometerConfig& config, std::uint32_t anti) {
  std::string s(config.diagram.edge_count(), 's');
  for (std::size_t i = 0; i < s.size(); ++i)
    if (anti & (1u << i)) s[i] = 'a';
  return s;
}

std::string interpret_pattern(const InterferometerConfig& config, std::uint32_t anti,
                              const DiagramCatalog& catalog) {
  std::vector<Label> labels;
  for (const auto& comp : config.diagram.sub_diagram(anti).components()) {
    auto l = catalog.identify(comp);
    if (!l) throw UnresolvedTermError("<" + comp.signature() + ">");
    labels.push_back(*l);
  }
  return product_string(labels);
}

const std::vector<std::pair<std::string, std::string>>& reference_rows(std::string_view config) {
  for (const auto& [name, rows] : reference_data())
    if (name == config) return rows;
  throw ValidationError("no reference table for '" + std::string(config) + "'");
}

std::vector<TableRowCheck> compare_with_reference(const InterferometerConfig& config,
                                                  const DiagramCatalog& catalog) {
  std::map<std::string, std::string> ref;
  for (const auto& [p, e] : reference_rows(config.name)) ref[p] = e;
  std::vector<TableRowCheck> out;
  const std::uint32_t n = 1u << config.diagram.edge_count();
  for (std::uint32_t s = 0; s < n; ++s) {
    TableRowCheck row;
    row.pattern = pattern_string(config, s);
    row.derived = interpret_pattern(config, s, catalog);
    auto it = ref.find(row.pattern);
    row.reference = it == ref.end() ? "" : it->second;
    row.agrees = row.reference == row.derived;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace hominv
