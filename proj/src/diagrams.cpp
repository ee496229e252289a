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

#include "hominv/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <numeric>

#include "hominv/errors.hpp"

namespace hominv {
namespace {

int qubit_index(const Endpoint& e) { return 2 * e.copy + static_cast<int>(e.side); }

Endpoint endpoint_of(int q) { return {q / 2, static_cast<Side>(q % 2)}; }

// One connected piece of a diagram traversed copy by copy. `entries` holds
// the side on which the walk enters each copy; `closed` marks a loop.
struct Walk {
  std::vector<int> copies;
  std::vector<Side> entries;
  bool closed = false;
};

std::vector<int> partner_table(const Diagram& d) {
  std::vector<int> partner(static_cast<std::size_t>(2 * d.n_copies()), -1);
  for (const Edge& e : d.edges()) {
    partner[qubit_index(e.first)] = qubit_index(e.second);
    partner[qubit_index(e.second)] = qubit_index(e.first);
  }
  return partner;
}

std::vector<Walk> walks(const Diagram& d) {
  const std::vector<int> partner = partner_table(d);
  std::vector<bool> seen(static_cast<std::size_t>(d.n_copies()), false);
  std::vector<Walk> out;

  auto trace_from = [&](int copy, Side entry) {
    Walk w;
    const int start = 2 * copy + static_cast<int>(entry);
    int q = start;
    while (true) {
      const Endpoint at = endpoint_of(q);
      w.copies.push_back(at.copy);
      w.entries.push_back(at.side);
      seen[at.copy] = true;
      const int exit = 2 * at.copy + static_cast<int>(other(at.side));
      const int next = partner[exit];
      if (next < 0) break;
      if (next == start) {
        w.closed = true;
        break;
      }
      q = next;
    }
    out.push_back(std::move(w));
  };

  for (int c = 0; c < d.n_copies(); ++c) {
    if (seen[c]) continue;
    if (partner[2 * c] < 0) {
      trace_from(c, Side::A);
    } else if (partner[2 * c + 1] < 0) {
      trace_from(c, Side::B);
    }
  }
  for (int c = 0; c < d.n_copies(); ++c) {
    if (!seen[c]) trace_from(c, Side::A);
  }
  return out;
}

std::string side_string(const std::vector<Side>& s) {
  std::string out;
  for (Side x : s) out.push_back(side_char(x));
  return out;
}

std::string reversed_complement(const std::string& s) {
  std::string r(s.rbegin(), s.rend());
  for (char& ch : r) ch = ch == 'A' ? 'B' : 'A';
  return r;
}

// Canonical entry-side sequence: the lexicographic maximum over walk
// direction and, for loops, the starting copy.
std::string canonical_sequence(const Walk& w) {
  const std::string fwd = side_string(w.entries);
  const std::string rev = reversed_complement(fwd);
  if (!w.closed) return std::max(fwd, rev);
  std::string best;
  for (const std::string& base : {fwd, rev}) {
    for (std::size_t k = 0; k < base.size(); ++k) {
      std::string rot = base.substr(k) + base.substr(0, k);
      best = std::max(best, rot);
    }
  }
  return best;
}

std::string walk_signature(const Walk& w) {
  return (w.closed ? "C" : "P") + canonical_sequence(w);
}

Edge normalized(Edge e) {
  if (e.second < e.first) std::swap(e.first, e.second);
  return e;
}

void check_range(double v) {
  if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
    throw ValidationError("contraction left [0,1] (value " + std::to_string(v) +
                          "); state coefficients are not a physical state");
  }
}

}  // namespace

std::string_view to_string(Label l) {
  static constexpr std::array<std::string_view, 18> names = {
      "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9",
      "l0", "l1", "l2", "l3", "cbar1", "cbar2", "cbar3", "lbar1", "lbar2"};
  return names[static_cast<std::size_t>(l)];
}

Label label_from_string(std::string_view s) {
  for (Label l : kAllLabels)
    if (to_string(l) == s) return l;
  throw ValidationError("unknown diagram label '" + std::string(s) + "'");
}

bool is_local_label(Label l) {
  switch (l) {
    case Label::l0:
    case Label::cbar1:
    case Label::cbar2:
    case Label::cbar3:
    case Label::lbar1:
    case Label::lbar2:
      return false;
    default:
      return true;
  }
}

Diagram::Diagram(int n_copies, std::vector<Edge> edges) : n_copies_(n_copies), edges_(std::move(edges)) {
  if (n_copies_ < 1 || n_copies_ > kMaxCopies) {
    throw StructuralError("diagram must have between 1 and " + std::to_string(kMaxCopies) +
                          " copies, got " + std::to_string(n_copies_));
  }
  std::vector<bool> used(static_cast<std::size_t>(2 * n_copies_), false);
  for (const Edge& e : edges_) {
    for (const Endpoint& p : {e.first, e.second}) {
      if (p.copy < 0 || p.copy >= n_copies_) {
        throw StructuralError("edge endpoint refers to copy " + std::to_string(p.copy + 1) +
                              " outside 1.." + std::to_string(n_copies_));
      }
    }
    if (e.first == e.second) throw StructuralError("edge joins a qubit to itself");
    for (const Endpoint& p : {e.first, e.second}) {
      const int q = qubit_index(p);
      if (used[q]) {
        throw StructuralError("overlapping edges: qubit (" + std::to_string(p.copy + 1) + "," +
                              side_char(p.side) + ") appears in more than one edge");
      }
      used[q] = true;
    }
  }
}

bool Diagram::is_local() const {
  return std::none_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.crosses_sides(); });
}

Diagram Diagram::sub_diagram(std::uint32_t mask) const {
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (mask & (1u << i)) kept.push_back(edges_[i]);
  return Diagram(n_copies_, std::move(kept));
}

std::vector<Diagram> Diagram::components() const {
  std::vector<Diagram> out;
  const std::vector<int> partner = partner_table(*this);
  for (const Walk& w : walks(*this)) {
    if (w.copies.size() == 1 && !w.closed) continue;
    std::vector<int> local(static_cast<std::size_t>(n_copies_), -1);
    for (std::size_t i = 0; i < w.copies.size(); ++i) local[w.copies[i]] = static_cast<int>(i);
    std::vector<Edge> es;
    for (const Edge& e : edges_) {
      if (local[e.first.copy] < 0) continue;
      es.push_back(normalized({{local[e.first.copy], e.first.side}, {local[e.second.copy], e.second.side}}));
    }
    out.emplace_back(static_cast<int>(w.copies.size()), std::move(es));
  }
  return out;
}

std::string Diagram::signature() const {
  std::vector<std::string> keys;
  for (const Walk& w : walks(*this)) {
    if (w.copies.size() == 1 && !w.closed) continue;
    keys.push_back(walk_signature(w));
  }
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out += '*';
    out += keys[i];
  }
  return out;
}

Diagram diagram_from_walk(const std::vector<Side>& entry, bool closed) {
  const int m = static_cast<int>(entry.size());
  if (m == 0) throw StructuralError("walk needs at least one copy");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < m; ++i) {
    edges.push_back(normalized({{i, other(entry[i])}, {i + 1, entry[i + 1]}}));
  }
  if (closed) edges.push_back(normalized({{m - 1, other(entry[m - 1])}, {0, entry[0]}}));
  return Diagram(m, std::move(edges));
}

double contract(const Diagram& diagram, const StateCoeffs& coeffs) {
  const Eigen::Matrix4d& t = coeffs.table();
  const Eigen::Matrix4d tt = t.transpose();
  const Eigen::Vector4d eta(1.0, -1.0, -1.0, -1.0);

  double value = std::pow(0.25, diagram.n_copies());
  for (const Walk& w : walks(diagram)) {
    if (w.closed) {
      Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
      for (Side x : w.entries) {
        m = m * (x == Side::A ? t : tt);
        m = m * eta.asDiagonal();
      }
      value *= m.trace();
    } else {
      // Open ends are traced out: a factor 2 delta_{mu,0} each.
      Eigen::RowVector4d v(2.0, 0.0, 0.0, 0.0);
      for (std::size_t i = 0; i < w.entries.size(); ++i) {
        v = v * (w.entries[i] == Side::A ? t : tt);
        if (i + 1 < w.entries.size()) v = v.cwiseProduct(eta.transpose());
      }
      value *= 2.0 * v(0);
    }
  }
  check_range(value);
  return std::clamp(value, 0.0, 1.0);
}

std::vector<double> pattern_distribution(const Diagram& diagram, const StateCoeffs& t) {
  const std::size_t k = diagram.edge_count();
  if (k > 16) throw StructuralError("too many edges for a pattern distribution");
  const std::uint32_t n = 1u << k;
  std::vector<double> f(n);
  for (std::uint32_t mask = 0; mask < n; ++mask) f[mask] = contract(diagram.sub_diagram(mask), t);
  // Coal = 1 - P-: superset Moebius inversion turns "these edges anti, others
  // unconstrained" into exact patterns.
  for (std::size_t bit = 0; bit < k; ++bit) {
    const std::uint32_t b = 1u << bit;
    for (std::uint32_t mask = 0; mask < n; ++mask)
      if (!(mask & b)) f[mask] -= f[mask | b];
  }
  return f;
}

double pattern_probability(const Diagram& diagram, const StateCoeffs& t,
                           const std::vector<Outcome>& outcome_mask) {
  if (outcome_mask.size() != diagram.edge_count()) {
    throw ValidationError("outcome mask has " + std::to_string(outcome_mask.size()) +
                          " entries, diagram has " + std::to_string(diagram.edge_count()) + " edges");
  }
  std::uint32_t anti = 0, coal = 0;
  for (std::size_t i = 0; i < outcome_mask.size(); ++i)
    (outcome_mask[i] == Outcome::Anti ? anti : coal) |= 1u << i;
  // Inclusion-exclusion over the coalescence edges only.
  double total = 0.0;
  for (std::uint32_t sub = coal;; sub = (sub - 1) & coal) {
    const double sign = (std::popcount(sub) % 2) ? -1.0 : 1.0;
    total += sign * contract(diagram.sub_diagram(anti | sub), t);
    if (sub == 0) break;
  }
  return total;
}

double dense_oracle(const Diagram& diagram, const DensityMatrix& rho) {
  const int n = diagram.n_copies();
  if (n > kDenseOracleMaxCopies) {
    throw CapacityError("dense oracle holds at most " + std::to_string(kDenseOracleMaxCopies) +
                        " copies (Hilbert dimension 256); use contract() for " +
                        std::to_string(n) + " copies");
  }
  const int qubits = 2 * n;
  const Eigen::Index dim = Eigen::Index{1} << qubits;

  Eigen::MatrixXcd state = rho.entries();
  for (int c = 1; c < n; ++c) {
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(state, rho.entries());
    state = std::move(next);
  }

  const Matrix4c& proj = singlet_projector();
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Edge& e : diagram.edges()) {
    const int s1 = qubits - 1 - qubit_index(e.first);
    const int s2 = qubits - 1 - qubit_index(e.second);
    const Eigen::Index rest = ~((Eigen::Index{1} << s1) | (Eigen::Index{1} << s2));
    Eigen::MatrixXcd embedded = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        if ((i & rest) != (j & rest)) continue;
        const int r = static_cast<int>(((i >> s1) & 1) << 1 | ((i >> s2) & 1));
        const int c = static_cast<int>(((j >> s1) & 1) << 1 | ((j >> s2) & 1));
        embedded(i, j) = proj(r, c);
      }
    }
    op = op * embedded;
  }
  return (op * state).trace().real();
}

double DiagramValues::operator[](Label l) const {
  auto it = values_.find(l);
  if (it == values_.end()) throw UnresolvedTermError(std::string(to_string(l)));
  return it->second;
}

}  // namespace hominv
