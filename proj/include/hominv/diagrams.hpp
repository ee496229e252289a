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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hominv/pauli_core.hpp"

namespace hominv {

/// Names of the singlet-projection probabilities: chained c1..c9, looped
/// l0..l3, nonlocal chained cbar1..cbar3 and looped lbar1, lbar2.
enum class Label : std::uint8_t {
  c1, c2, c3, c4, c5, c6, c7, c8, c9,
  l0, l1, l2, l3,
  cbar1, cbar2, cbar3,
  lbar1, lbar2,
};

inline constexpr std::array<Label, 18> kAllLabels = {
    Label::c1, Label::c2, Label::c3, Label::c4, Label::c5, Label::c6,
    Label::c7, Label::c8, Label::c9, Label::l0, Label::l1, Label::l2,
    Label::l3, Label::cbar1, Label::cbar2, Label::cbar3, Label::lbar1, Label::lbar2};

std::string_view to_string(Label l);
Label label_from_string(std::string_view s);
bool is_local_label(Label l);

/// One qubit of one copy. `copy` is zero-based in code and one-based on disk.
struct Endpoint {
  int copy = 0;
  Side side = Side::A;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

/// A singlet projection between two qubits.
struct Edge {
  Endpoint first;
  Endpoint second;
  bool crosses_sides() const { return first.side != second.side; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Singlet projections over n copies of a two-qubit state. Qubits not covered
/// by an edge are traced out. Construction rejects overlapping edges.
class Diagram {
 public:
  static constexpr int kMaxCopies = 7;

  Diagram(int n_copies, std::vector<Edge> edges);

  int n_copies() const { return n_copies_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool is_local() const;

  /// Same copies, only the edges whose bit is set in `mask`.
  Diagram sub_diagram(std::uint32_t mask) const;

  /// Connected components over copies; isolated copies are omitted.
  std::vector<Diagram> components() const;

  /// Canonical structural key for a connected diagram, invariant under copy
  /// relabelling and walk direction. Disconnected diagrams get the sorted
  /// component keys joined by '*'.
  std::string signature() const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.n_copies_ == b.n_copies_ && a.edges_ == b.edges_;
  }

 private:
  int n_copies_;
  std::vector<Edge> edges_;
};

/// Build a path (`closed == false`) or loop over consecutive copies from the
/// side on which the walk enters each copy.
Diagram diagram_from_walk(const std::vector<Side>& entry_sides, bool closed);

/// Tr[(prod_edges P-) rho^{(x)n}] by sequential elimination of Pauli indices
/// along each chain or loop. Throws if the result leaves [-1e-12, 1+1e-12].
double contract(const Diagram& diagram, const StateCoeffs& t);

enum class Outcome : std::uint8_t { Anti, Coal };

/// Probability of the per-edge anticoalescence/coalescence pattern, where
/// Anti is the singlet projector and Coal its complement.
double pattern_probability(const Diagram& diagram, const StateCoeffs& t,
                           const std::vector<Outcome>& outcome_mask);

/// All 2^k pattern probabilities indexed by mask (bit i set = edge i Anti).
std::vector<double> pattern_distribution(const Diagram& diagram, const StateCoeffs& t);

/// Dense trace over rho^{(x)n} with explicit embedded projectors; n <= 4.
double dense_oracle(const Diagram& diagram, const DensityMatrix& rho);

inline constexpr int kDenseOracleMaxCopies = 4;

/// Map label -> probability.
class DiagramValues {
 public:
  DiagramValues() = default;

  void set(Label l, double v) { values_[l] = v; }
  bool contains(Label l) const { return values_.count(l) != 0; }
  /// Throws UnresolvedTermError naming the label when absent.
  double operator[](Label l) const;
  const std::map<Label, double>& entries() const { return values_; }

 private:
  std::map<Label, double> values_;
};

struct CatalogEntry {
  Label label;
  Diagram diagram;
  std::string provenance;
};

class DiagramCatalog {
 public:
  static constexpr int kVersion = 1;

  DiagramCatalog() = default;
  explicit DiagramCatalog(std::vector<CatalogEntry> entries);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(Label l) const;
  const Diagram& diagram(Label l) const;

  /// Label of a connected diagram by structural signature.
  std::optional<Label> identify(const Diagram& connected) const;

  /// Evaluate every catalog diagram on one state.
  DiagramValues evaluate(const StateCoeffs& t) const;

  /// The frozen catalog shipped with the library (data/catalog.json).
  static const DiagramCatalog& builtin();

 private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, Label> by_signature_;
};

/// One label that could not be pinned to a single topology.
struct CatalogAmbiguity {
  Label label;
  std::vector<Diagram> candidates;
  bool contraction_equivalent = false;
};

struct CatalogResolution {
  DiagramCatalog catalog;
  std::vector<CatalogAmbiguity> ambiguities;
  double max_residual = 0.0;
};

inline constexpr double kCatalogTol = 1e-9;
inline constexpr std::size_t kMinValidationStates = 50;

/// Enumerate chain and loop topologies up to seven copies and keep, label by
/// label, the ones under which every identity holds on all validation states.
/// Throws CatalogError ("catalog unresolved") with the best residual per label
/// when some label has no consistent candidate.
CatalogResolution resolve_catalog(const std::vector<StateCoeffs>& validation_states);

}  // namespace hominv
