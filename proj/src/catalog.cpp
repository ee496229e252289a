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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "hominv/diagrams.hpp"
#include "hominv/errors.hpp"
#include "hominv/identities.hpp"

namespace hominv {
namespace {

struct Shape {
  bool closed;
  int copies;
  bool local;
};

Shape shape_of(Label l) {
  switch (l) {
    case Label::c1:
    case Label::c2:
      return {false, 2, true};
    case Label::c3:
      return {false, 3, true};
    case Label::c4:
    case Label::c5:
      return {false, 4, true};
    case Label::c6:
      return {false, 5, true};
    case Label::c7:
    case Label::c8:
      return {false, 6, true};
    case Label::c9:
      return {false, 7, true};
    case Label::l0:
      return {true, 1, false};
    case Label::l1:
      return {true, 2, true};
    case Label::l2:
      return {true, 4, true};
    case Label::l3:
      return {true, 6, true};
    case Label::cbar1:
      return {false, 2, false};
    case Label::cbar2:
      return {false, 3, false};
    case Label::cbar3:
      return {false, 4, false};
    case Label::lbar1:
      return {true, 2, false};
    case Label::lbar2:
      return {true, 3, false};
  }
  return {false, 2, true};
}

std::vector<Side> sides_from(const std::string& s) {
  std::vector<Side> out;
  for (char ch : s) out.push_back(ch == 'A' ? Side::A : Side::B);
  return out;
}

// Every topology of the given shape, one representative per signature,
// built from the canonical entry sequence.
std::vector<Diagram> candidates(const Shape& shape) {
  std::set<std::string> seen;
  std::vector<std::string> keys;
  const std::uint32_t n = 1u << shape.copies;
  for (std::uint32_t bits = 0; bits < n; ++bits) {
    std::vector<Side> seq;
    for (int i = 0; i < shape.copies; ++i) seq.push_back((bits >> i) & 1 ? Side::B : Side::A);
    const Diagram d = diagram_from_walk(seq, shape.closed);
    if (d.is_local() != shape.local) continue;
    const std::string sig = d.signature();
    if (seen.insert(sig).second) keys.push_back(sig);
  }
  std::sort(keys.rbegin(), keys.rend());
  std::vector<Diagram> out;
  for (const std::string& sig : keys) out.push_back(diagram_from_walk(sides_from(sig.substr(1)), shape.closed));
  return out;
}

struct LabelCandidates {
  std::vector<Diagram> diagrams;
  std::vector<std::vector<double>> values;  // per diagram, per state
  std::vector<std::vector<std::size_t>> classes;  // contraction-equivalent groups
  std::vector<std::size_t> alive;  // surviving class indices
};

std::string identities_using(Label l) {
  std::string out;
  for (const IdentitySpec& spec : identity_specs()) {
    if (std::find(spec.labels.begin(), spec.labels.end(), l) == spec.labels.end()) continue;
    if (!out.empty()) out += ",";
    out += spec.name;
  }
  return out;
}

}  // namespace

DiagramCatalog::DiagramCatalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.label < b.label; });
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
    if (entries_[i].label == entries_[i + 1].label) {
      throw CatalogError("catalog lists label " + std::string(to_string(entries_[i].label)) + " twice");
    }
  }
  for (const CatalogEntry& e : entries_) {
    const std::string sig = e.diagram.signature();
    if (sig.empty() || sig.find('*') != std::string::npos) {
      throw CatalogError("catalog entry " + std::string(to_string(e.label)) + " is not a connected diagram");
    }
    by_signature_.emplace(sig, e.label);
  }
}

const CatalogEntry* DiagramCatalog::find(Label l) const {
  for (const CatalogEntry& e : entries_)
    if (e.label == l) return &e;
  return nullptr;
}

const Diagram& DiagramCatalog::diagram(Label l) const {
  const CatalogEntry* e = find(l);
  if (!e) throw UnresolvedTermError(std::string(to_string(l)));
  return e->diagram;
}

std::optional<Label> DiagramCatalog::identify(const Diagram& connected) const {
  auto it = by_signature_.find(connected.signature());
  if (it == by_signature_.end()) return std::nullopt;
  return it->second;
}

DiagramValues DiagramCatalog::evaluate(const StateCoeffs& t) const {
  DiagramValues v;
  for (const CatalogEntry& e : entries_) v.set(e.label, contract(e.diagram, t));
  return v;
}

const DiagramCatalog& DiagramCatalog::builtin() {
  // Frozen output of resolve_catalog; canonical entry-side sequences.
  struct Frozen {
    Label label;
    bool closed;
    const char* entries;
  };
  static const DiagramCatalog catalog = [] {
    static constexpr Frozen frozen[] = {
#include "catalog_frozen.inc"
    };
    std::vector<CatalogEntry> entries;
    for (const Frozen& f : frozen) {
      entries.push_back({f.label, diagram_from_walk(sides_from(f.entries), f.closed),
                         "identity-matched (" + identities_using(f.label) + ")"});
    }
    return DiagramCatalog(std::move(entries));
  }();
  return catalog;
}

CatalogResolution resolve_catalog(const std::vector<StateCoeffs>& states) {
  if (states.size() < kMinValidationStates) {
    throw ValidationError("catalog resolution needs at least " + std::to_string(kMinValidationStates) +
                          " validation states, got " + std::to_string(states.size()));
  }

  std::vector<InvariantVector> makhlin, jing;
  for (const StateCoeffs& t : states) {
    makhlin.push_back(makhlin_invariants(t));
    jing.push_back(jing_invariants(t));
  }

  std::map<Label, LabelCandidates> pool;
  for (Label l : kAllLabels) {
    LabelCandidates& lc = pool[l];
    lc.diagrams = candidates(shape_of(l));
    for (const Diagram& d : lc.diagrams) {
      std::vector<double> vals;
      for (const StateCoeffs& t : states) vals.push_back(contract(d, t));
      lc.values.push_back(std::move(vals));
    }
    for (std::size_t i = 0; i < lc.diagrams.size(); ++i) {
      bool placed = false;
      for (auto& cls : lc.classes) {
        const auto& ref = lc.values[cls.front()];
        bool same = true;
        for (std::size_t s = 0; s < states.size() && same; ++s)
          same = std::abs(ref[s] - lc.values[i][s]) <= 1e-12;
        if (same) {
          cls.push_back(i);
          placed = true;
          break;
        }
      }
      if (!placed) lc.classes.push_back({i});
    }
    for (std::size_t c = 0; c < lc.classes.size(); ++c) lc.alive.push_back(c);
  }

  // Arc-consistency sweep: an identity keeps, for each of its labels, only
  // the classes that appear in some assignment satisfying it on every state.
  std::map<Label, double> best_residual;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const IdentitySpec& spec : identity_specs()) {
      if (spec.labels.empty()) continue;
      const std::size_t k = spec.labels.size();
      std::vector<std::set<std::size_t>> keep(k);
      std::vector<std::size_t> pick(k, 0);
      double best = std::numeric_limits<double>::infinity();
      while (true) {
        double worst = 0.0;
        for (std::size_t s = 0; s < states.size() && worst <= kCatalogTol; ++s) {
          DiagramValues v;
          for (std::size_t i = 0; i < k; ++i) {
            const LabelCandidates& lc = pool[spec.labels[i]];
            v.set(spec.labels[i], lc.values[lc.classes[lc.alive[pick[i]]].front()][s]);
          }
          worst = std::max(worst, std::abs(spec.direct(makhlin[s], jing[s]) -
                                           spec.expression(v, makhlin[s], jing[s])));
        }
        best = std::min(best, worst);
        if (worst <= kCatalogTol) {
          for (std::size_t i = 0; i < k; ++i) keep[i].insert(pool[spec.labels[i]].alive[pick[i]]);
        }
        std::size_t i = 0;
        while (i < k && ++pick[i] == pool[spec.labels[i]].alive.size()) pick[i++] = 0;
        if (i == k) break;
      }
      for (std::size_t i = 0; i < k; ++i) {
        double& br = best_residual.try_emplace(spec.labels[i], best).first->second;
        br = std::min(br, best);
      }
      bool empty = false;
      for (std::size_t i = 0; i < k; ++i) empty = empty || keep[i].empty();
      if (empty) {
        std::ostringstream os;
        os << "catalog unresolved: identity " << spec.name << " has no consistent assignment;"
           << " best residual per label:";
        for (Label l : spec.labels) os << ' ' << to_string(l) << '=' << best_residual[l];
        throw CatalogError(os.str());
      }
      for (std::size_t i = 0; i < k; ++i) {
        LabelCandidates& lc = pool[spec.labels[i]];
        std::vector<std::size_t> next(keep[i].begin(), keep[i].end());
        if (next != lc.alive) {
          lc.alive = std::move(next);
          changed = true;
        }
      }
    }
  }

  CatalogResolution out;
  std::vector<CatalogEntry> entries;
  for (Label l : kAllLabels) {
    const LabelCandidates& lc = pool[l];
    const auto& cls = lc.classes[lc.alive.front()];
    entries.push_back({l, lc.diagrams[cls.front()], "identity-matched (" + identities_using(l) + ")"});
    if (lc.alive.size() > 1 || cls.size() > 1) {
      CatalogAmbiguity amb{l, {}, lc.alive.size() == 1};
      for (std::size_t c : lc.alive)
        for (std::size_t i : lc.classes[c]) amb.candidates.push_back(lc.diagrams[i]);
      out.ambiguities.push_back(std::move(amb));
    }
  }
  out.catalog = DiagramCatalog(std::move(entries));

  for (const StateCoeffs& t : states) {
    out.max_residual = std::max(out.max_residual, identity_report(t, out.catalog.evaluate(t)).max_residual());
  }
  return out;
}

}  // namespace hominv
