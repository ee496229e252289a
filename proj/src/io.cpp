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

#include "hominv/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hominv/errors.hpp"

namespace hominv::io {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + " entries must be numbers");
  return j.get<double>();
}

const json& rows4(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) throw ValidationError(std::string(what) + " must be a 4x4 array");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != 4) throw ValidationError(std::string(what) + " must be a 4x4 array");
  return j;
}

ordered spectrum_json(const RSpectrum& s) {
  return ordered{{"method", to_string(s.method)}, {"r", s.r}, {"projected", s.projected}};
}

ordered witness_json(const EntropicWitness& w) {
  ordered j;
  if (w.value) j["value"] = *w.value;
  else j["value"] = "not-applicable";
  j["purity_alice"] = w.purity_alice;
  j["purity_bob"] = w.purity_bob;
  return j;
}

std::string invariant_name(Family f) { return f == Family::Makhlin ? "I" : "J"; }

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

DensityMatrix parse_state_json(std::string_view text) {
  const json j = parse(text, "state");
  if (!j.is_object()) throw ValidationError("state JSON must be an object");
  if (j.contains("rho")) {
    const json& rows = rows4(j["rho"], "rho");
    Matrix4c m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const json& e = rows[r][c];
        if (e.is_number()) {
          m(r, c) = Complex(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2) {
          m(r, c) = Complex(number(e[0], "rho"), number(e[1], "rho"));
        } else {
          throw ValidationError("rho entries must be [re, im] pairs");
        }
      }
    return DensityMatrix(m);
  }
  if (j.contains("t")) {
    const json& rows = rows4(j["t"], "t");
    Eigen::Matrix4d t;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t(r, c) = number(rows[r][c], "t");
    return density_from_coeffs(StateCoeffs(t));
  }
  throw ValidationError("state JSON needs a \"rho\" or \"t\" field");
}

std::string state_to_json(const DensityMatrix& rho) {
  ordered j;
  json r = json::array(), t = json::array();
  const Eigen::Matrix4d tc = coeffs_from_density(rho).table();
  for (int a = 0; a < 4; ++a) {
    json rr = json::array(), tr = json::array();
    for (int b = 0; b < 4; ++b) {
      rr.push_back({rho.entries()(a, b).real(), rho.entries()(a, b).imag()});
      tr.push_back(tc(a, b));
    }
    r.push_back(rr);
    t.push_back(tr);
  }
  j["rho"] = r;
  j["t"] = t;
  return j.dump(2) + "\n";
}

std::string invariant_vector_to_json(const InvariantVector& v) {
  ordered j{{"family", to_string(v.family())}, {"values", v.values()}, {"source", to_string(v.source())}};
  if (v.uncertainty()) j["uncertainty"] = *v.uncertainty();
  return j.dump(2) + "\n";
}

InvariantVector invariant_vector_from_json(std::string_view text) {
  const json j = parse(text, "invariant vector");
  try {
    std::optional<std::vector<double>> unc;
    if (j.contains("uncertainty")) unc = j.at("uncertainty").get<std::vector<double>>();
    return InvariantVector(family_from_string(j.at("family").get<std::string>()),
                           j.at("values").get<std::vector<double>>(),
                           source_from_string(j.at("source").get<std::string>()), std::move(unc));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid invariant vector: ") + e.what());
  }
}

std::string invariants_csv_header(Family family) {
  const std::size_t n = family == Family::Makhlin ? InvariantVector::kMakhlinSize : InvariantVector::kJingSize;
  std::string s = "state_id,family,source";
  for (std::size_t i = 1; i <= n; ++i) s += "," + invariant_name(family) + std::to_string(i);
  return s + "\n";
}

std::string invariants_csv_row(std::string_view state_id, const InvariantVector& v) {
  std::ostringstream os;
  os.precision(17);
  os << state_id << ',' << to_string(v.family()) << ',' << to_string(v.source());
  for (double x : v.values()) os << ',' << x;
  os << '\n';
  return os.str();
}

std::string catalog_to_json(const DiagramCatalog& catalog) {
  // One entry per line block, edges compact: easy to diff and hand-edit.
  std::ostringstream os;
  os << "{\n  \"version\": " << DiagramCatalog::kVersion << ",\n  \"entries\": [";
  bool first = true;
  for (Label l : kAllLabels) {
    const CatalogEntry* e = catalog.find(l);
    if (!e) continue;
    json edges = json::array();
    for (const Edge& ed : e->diagram.edges()) {
      edges.push_back({{ed.first.copy + 1, std::string(1, side_char(ed.first.side))},
                       {ed.second.copy + 1, std::string(1, side_char(ed.second.side))}});
    }
    os << (first ? "\n" : ",\n") << "    {\"label\": " << json(std::string(to_string(l))).dump()
       << ", \"n_copies\": " << e->diagram.n_copies() << ",\n     \"edges\": " << edges.dump()
       << ",\n     \"provenance\": " << json(e->provenance).dump() << "}";
    first = false;
  }
  os << "\n  ]\n}\n";
  return os.str();
}

DiagramCatalog catalog_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CatalogError(std::string("malformed catalog JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw CatalogError("catalog JSON needs an \"entries\" array");
  if (j.value("version", -1) != DiagramCatalog::kVersion)
    throw CatalogError("unsupported catalog version (expected " + std::to_string(DiagramCatalog::kVersion) + ")");
  std::vector<CatalogEntry> entries;
  std::set<Label> seen;
  for (const json& e : j["entries"]) {
    std::string name = e.value("label", std::string("?"));
    try {
      const Label l = label_from_string(name);
      if (!seen.insert(l).second) throw CatalogError("duplicate entry");
      std::vector<Edge> edges;
      for (const json& ed : e.at("edges")) {
        auto endpoint = [](const json& p) {
          const std::string side = p.at(1).get<std::string>();
          if (side != "A" && side != "B") throw CatalogError("side must be \"A\" or \"B\"");
          return Endpoint{p.at(0).get<int>() - 1, side == "A" ? Side::A : Side::B};
        };
        edges.push_back({endpoint(ed.at(0)), endpoint(ed.at(1))});
      }
      Diagram d(e.at("n_copies").get<int>(), std::move(edges));
      entries.push_back({l, std::move(d), e.value("provenance", std::string())});
    } catch (const std::exception& ex) {
      throw CatalogError("catalog entry '" + name + "': " + ex.what());
    }
  }
  return DiagramCatalog(std::move(entries));
}

DiagramCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot read catalog " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return catalog_from_json(os.str());
}

std::string count_table_to_csv(const CountTable& table, std::string_view manifest_json) {
  const InterferometerConfig& config = interferometer_config(table.config);
  std::ostringstream os;
  os << "# config=" << table.config << "\n# Z=" << table.total << "\n# seed=" << table.seed << "\n";
  if (!manifest_json.empty()) os << "# manifest=" << manifest_json << "\n";
  for (const auto& pair : config.detector_pairs) os << pair << ',';
  os << "count\n";
  for (std::uint32_t m = 0; m < table.counts.size(); ++m) {
    for (std::size_t i = 0; i < config.detector_pairs.size(); ++i) os << ((m >> i) & 1 ? 'a' : 'c') << ',';
    os << table.counts[m] << '\n';
  }
  return os.str();
}

CountTable count_table_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CountTable t;
  std::optional<std::uint64_t> z;
  const InterferometerConfig* config = nullptr;
  bool header_seen = false;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ValidationError("count table line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      try {
        if (key == "config") {
          config = &interferometer_config(value);
          t.config = value;
          t.counts.assign(std::size_t{1} << config->diagram.edge_count(), 0);
        } else if (key == "Z") {
          z = std::stoull(value);
        } else if (key == "seed") {
          t.seed = std::stoull(value);
        }
      } catch (const std::logic_error&) {
        fail("bad value for " + key);
      }
      continue;
    }
    if (!config) fail("missing '# config=' header");
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() != config->detector_pairs.size() + 1) fail("expected " + std::to_string(config->detector_pairs.size() + 1) + " columns");
    if (!header_seen) {
      header_seen = true;
      if (cells.back() == "count") continue;
    }
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      if (cells[i] == "a") mask |= 1u << i;
      else if (cells[i] != "c") fail("outcome must be 'a' or 'c'");
    }
    const std::string& cell = cells.back();
    if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos) fail("bad count '" + cell + "'");
    try {
      t.counts[mask] += std::stoull(cell);
    } catch (const std::out_of_range&) {
      fail("count out of range");
    }
  }
  if (!config) throw ValidationError("count table has no '# config=' header");
  std::uint64_t sum = 0;
  for (auto c : t.counts) sum += c;
  if (z && *z != sum) throw ValidationError("count table Z=" + std::to_string(*z) + " but counts sum to " + std::to_string(sum));
  t.total = sum;
  return t;
}

std::string manifest_to_json(const RunManifest& m) {
  ordered j{{"command", m.command}, {"inputs", m.inputs}};
  if (m.seed) j["seed"] = *m.seed;
  if (m.events) j["events"] = *m.events;
  j["catalog_version"] = m.catalog_version;
  if (!m.catalog_path.empty()) j["catalog"] = m.catalog_path;
  j["outputs"] = m.outputs;
  if (m.wall_clock_seconds) j["wall_clock_seconds"] = *m.wall_clock_seconds;
  return j.dump();
}

std::string nonlocality_report_json(std::string_view state_id, const NonlocalityReport& rep,
                                    const RunManifest& manifest) {
  ordered j{{"state_id", state_id},
            {"method", to_string(rep.spectrum.method)},
            {"r", rep.spectrum.r},
            {"M", rep.M},
            {"f", rep.f},
            {"E", witness_json(rep.E)},
            {"uncertainties", nullptr},
            {"manifest", ordered::parse(manifest_to_json(manifest))}};
  return j.dump(2) + "\n";
}

std::string nonlocality_estimate_json(std::string_view state_id, const NonlocalityEstimate& est,
                                      const RunManifest& manifest) {
  ordered j{{"state_id", state_id},
            {"method", std::string("estimated-") + std::string(to_string(est.path))},
            {"triple", ordered{{"family", to_string(est.triple.family)}, {"values", est.triple.values}}},
            {"spectrum", spectrum_json(est.spectrum)},
            {"structure", to_string(est.structure)},
            {"split_bound", est.split_bound},
            {"r", est.spectrum.r},
            {"M", est.M},
            {"f", est.f},
            {"E", witness_json(est.E)},
            {"uncertainties",
             ordered{{"triple", est.triple_se}, {"r", est.r_se}, {"M", est.M_se}, {"f", est.f_se}, {"E", est.E_se}}},
            {"manifest", ordered::parse(manifest_to_json(manifest))}};
  return j.dump(2) + "\n";
}

}  // namespace hominv::io
