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

// hominv: invariants, HOM simulation and nonlocality from the command line.
//
// Exit codes: 0 success, 2 input/usage, 3 insufficient statistics,
// 4 verification failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hominv/diagrams.hpp"
#include "hominv/errors.hpp"
#include "hominv/hom_simulator.hpp"
#include "hominv/identities.hpp"
#include "hominv/invariants.hpp"
#include "hominv/io.hpp"
#include "hominv/nonlocality.hpp"
#include "hominv/rng.hpp"
#include "hominv/w_observable.hpp"

namespace fs = std::filesystem;
using namespace hominv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitStatistics = 3;
constexpr int kExitVerify = 4;

struct Options {
  std::string state;
  std::string family;
  std::string config;
  std::uint64_t events = 1'000'000;
  std::uint64_t seed = 1;
  std::string path = "direct";
  std::string out;
  std::string catalog;
  std::vector<std::string> counts;
  std::size_t n_states = 200;
  std::string format = "markdown";
  bool resolve = false;
  std::string emit_inc;
};

using Clock = std::chrono::steady_clock;

// --catalog beats HOMINV_CATALOG beats the compiled-in catalog.
std::pair<DiagramCatalog, std::string> select_catalog(const Options& o) {
  std::string path = o.catalog;
  if (path.empty())
    if (const char* env = std::getenv("HOMINV_CATALOG")) path = env;
  if (path.empty()) return {DiagramCatalog::builtin(), "builtin"};
  if (!fs::exists(path)) throw ValidationError("catalog file not found: " + path);
  return {io::load_catalog(path), path};
}

// A state file, or builtin:{singlet,hh,mixed,werner:P,random:SEED}.
DensityMatrix load_state(const std::string& spec) {
  if (spec.empty()) throw ValidationError("--state is required");
  if (spec.rfind("builtin:", 0) == 0) {
    const std::string name = spec.substr(8);
    if (name == "singlet") return singlet_state();
    if (name == "mixed") return maximally_mixed_state();
    if (name == "hh") return DensityMatrix::from_state_vector(Vector4c(1, 0, 0, 0));
    try {
      if (name.rfind("werner:", 0) == 0) return werner_state(std::stod(name.substr(7)));
      if (name.rfind("random:", 0) == 0) return random_state(std::stoull(name.substr(7)), ensemble::MixedGinibre{});
    } catch (const std::logic_error&) {
    }
    throw ValidationError("unknown builtin state '" + name + "'");
  }
  return io::parse_state_json(io::read_text(spec));
}

std::string state_id(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return spec;
  return fs::path(spec).stem().string();
}

// The embedded manifest holds only deterministic fields; the sidecar adds
// outputs and wall-clock.
void finish(const std::string& out, std::string_view text, io::RunManifest manifest, Clock::time_point start) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  io::write_text(out, text);
  manifest.outputs.push_back(out);
  manifest.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  io::write_text(out + ".manifest.json", io::manifest_to_json(manifest) + "\n");
}

io::RunManifest base_manifest(const std::string& command, const Options& o) {
  io::RunManifest m;
  m.command = command;
  if (!o.state.empty()) m.inputs.push_back(o.state);
  for (const auto& c : o.counts) m.inputs.push_back(c);
  return m;
}

int cmd_invariants(const Options& o) {
  const auto start = Clock::now();
  const DensityMatrix rho = load_state(o.state);
  const StateCoeffs t = coeffs_from_density(rho);
  const std::string family = o.family.empty() ? "makhlin" : o.family;
  std::vector<InvariantVector> vecs;
  if (family == "makhlin" || family == "both") vecs.push_back(makhlin_invariants(t));
  if (family == "jing" || family == "both") vecs.push_back(jing_invariants(t));
  if (vecs.empty()) throw ValidationError("--family must be makhlin, jing or both");

  io::RunManifest manifest = base_manifest("invariants", o);
  const std::string manifest_json = io::manifest_to_json(manifest);
  std::ostringstream js;
  js << "{\n  \"state_id\": \"" << state_id(o.state) << "\",\n  \"manifest\": " << manifest_json
     << ",\n  \"vectors\": [\n";
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    std::string v = io::invariant_vector_to_json(vecs[i]);
    while (!v.empty() && v.back() == '\n') v.pop_back();
    std::string indented;
    for (char c : v) indented += c == '\n' ? std::string("\n    ") : std::string(1, c);
    js << "    " << indented << (i + 1 < vecs.size() ? ",\n" : "\n");
  }
  js << "  ]\n}\n";

  if (o.out.empty()) {
    std::cout << js.str();
    return kExitOk;
  }
  const fs::path json_path = o.out + ".json";
  finish(json_path.string(), js.str(), manifest, start);
  for (const auto& v : vecs) {
    const std::string csv_path = o.out + "_" + std::string(to_string(v.family())) + ".csv";
    const std::string csv = "# manifest=" + manifest_json + "\n" + io::invariants_csv_header(v.family()) +
                            io::invariants_csv_row(state_id(o.state), v);
    finish(csv_path, csv, manifest, start);
  }
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  const auto start = Clock::now();
  if (o.events == 0) throw ValidationError("--events must be at least 1");
  const InterferometerConfig& config = interferometer_config(o.config);
  const StateCoeffs t = coeffs_from_density(load_state(o.state));
  const CountTable table = sample_events(config, t, o.events, o.seed);
  io::RunManifest manifest = base_manifest("simulate --config " + o.config, o);
  manifest.seed = o.seed;
  manifest.events = o.events;
  finish(o.out, io::count_table_to_csv(table, io::manifest_to_json(manifest)), manifest, start);
  return kExitOk;
}

int cmd_nonlocality(const Options& o) {
  const auto start = Clock::now();
  io::RunManifest manifest = base_manifest("nonlocality --path " + o.path, o);
  if (o.path == "estimated") {
    if (o.counts.empty()) throw ValidationError("--path estimated needs --counts files");
    const auto [catalog, catalog_path] = select_catalog(o);
    manifest.catalog_path = catalog_path;
    std::vector<CountTable> tables;
    std::set<std::string> configs;
    for (const auto& f : o.counts) {
      tables.push_back(io::count_table_from_csv(io::read_text(f)));
      configs.insert(tables.back().config);
    }
    EstimationPath path;
    if (o.family == "jing") path = EstimationPath::Jing;
    else if (o.family == "makhlin") path = EstimationPath::Makhlin;
    else if (o.family.empty() || o.family == "auto")
      path = configs.count("fig7-l0") ? EstimationPath::Makhlin : EstimationPath::Jing;
    else throw ValidationError("--family must be auto, makhlin or jing for the estimated path");
    const NonlocalityEstimate est = estimate_nonlocality(tables, path, catalog);
    const std::string id = o.state.empty() ? "counts" : state_id(o.state);
    finish(o.out, io::nonlocality_estimate_json(id, est, manifest), manifest, start);
    return kExitOk;
  }
  SpectrumMethod method;
  if (o.path == "direct") method = SpectrumMethod::Direct;
  else if (o.path == "jing") method = SpectrumMethod::FromJing;
  else if (o.path == "makhlin") method = SpectrumMethod::FromMakhlin;
  else throw ValidationError("--path must be direct, jing, makhlin or estimated");
  const StateCoeffs t = coeffs_from_density(load_state(o.state));
  finish(o.out, io::nonlocality_report_json(state_id(o.state), nonlocality_from_state(t, method), manifest),
         manifest, start);
  return kExitOk;
}

struct CheckLine {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool gating = true;
  bool pass() const { return value <= tol; }
};

int cmd_verify(const Options& o) {
  if (o.n_states == 0) throw ValidationError("--n-states must be at least 1");
  std::pair<DiagramCatalog, std::string> selected;
  try {
    selected = select_catalog(o);
  } catch (const CatalogError& e) {
    std::cout << "FAIL catalog: " << e.what() << "\n";
    return kExitVerify;
  }
  const DiagramCatalog& catalog = selected.first;

  std::vector<StateCoeffs> states;
  for (std::size_t i = 0; i < o.n_states; ++i)
    states.push_back(coeffs_from_density(random_state(derive_seed(o.seed, i), ensemble::MixedGinibre{})));

  std::vector<CheckLine> lines;
  std::map<std::string, double> identity_max;
  std::set<Label> suspects;
  std::string unresolved;
  for (const auto& t : states) {
    try {
      const IdentityReport rep = identity_report(t, catalog.evaluate(t));
      for (const auto& row : rep.rows) identity_max[row.name] = std::max(identity_max[row.name], row.residual);
      for (Label l : rep.suspect_labels(1e-9)) suspects.insert(l);
    } catch (const UnresolvedTermError& e) {
      unresolved = e.label();
      break;
    }
  }
  for (const auto& spec : identity_specs())
    if (identity_max.count(spec.name)) lines.push_back({"identity " + spec.name, identity_max[spec.name], 1e-9});

  double oracle = 0.0;
  const std::size_t n_oracle = std::min<std::size_t>(states.size(), 100);
  for (const auto& e : catalog.entries()) {
    if (e.diagram.n_copies() > kDenseOracleMaxCopies) continue;
    for (std::size_t i = 0; i < n_oracle; ++i)
      oracle = std::max(oracle, std::abs(contract(e.diagram, states[i]) -
                                         dense_oracle(e.diagram, density_from_coeffs(states[i]))));
  }
  lines.push_back({"contract vs dense oracle", oracle, 1e-10});

  double lu = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const DensityMatrix rho = density_from_coeffs(states[i]);
    const StateCoeffs u = coeffs_from_density(apply_local_unitary(rho, LocalUnitary::random(derive_seed(~o.seed, i))));
    for (auto [a, b] : {std::pair{makhlin_invariants(states[i]), makhlin_invariants(u)},
                        std::pair{jing_invariants(states[i]), jing_invariants(u)}})
      for (std::size_t k = 0; k < a.size(); ++k) lu = std::max(lu, std::abs(a.values()[k] - b.values()[k]));
  }
  lines.push_back({"local-unitary invariance", lu, 1e-10});

  const Matrix8c w = w_operator();
  const Matrix8c pairs = pair_singlet_projector(0, 1) + pair_singlet_projector(0, 2) + pair_singlet_projector(1, 2);
  lines.push_back({"W = sum of cyclic w terms",
                   (w - w_cyclic_term(1) - w_cyclic_term(2) - w_cyclic_term(3)).cwiseAbs().maxCoeff(), 1e-12});
  lines.push_back({"W spectral form", (w - w_spectral_operator()).cwiseAbs().maxCoeff(), 1e-12});
  lines.push_back({"W^2 = 8 (P_kl + P_km + P_lm)", (w * w - 8.0 * pairs).cwiseAbs().maxCoeff(), 1e-12});
  lines.push_back({"W^2 = P_kl + P_km + P_lm (as published)", (w * w - pairs).cwiseAbs().maxCoeff(), 1e-12, false});

  bool ok = unresolved.empty();
  std::cout << "verify seed=" << o.seed << " n_states=" << o.n_states << " catalog=" << selected.second << "\n";
  for (const auto& l : lines) {
    const char* verdict = l.pass() ? "PASS" : (l.gating ? "FAIL" : "INFO");
    std::cout << std::left << std::setw(44) << l.name << " max=" << std::scientific << std::setprecision(3)
              << l.value << " tol=" << l.tol << "  " << verdict << "\n";
    if (l.gating && !l.pass()) ok = false;
  }
  if (!unresolved.empty()) std::cout << "FAIL unresolved term: " << unresolved << "\n";
  if (!suspects.empty()) {
    std::cout << "suspect labels:";
    for (Label l : suspects) std::cout << ' ' << to_string(l);
    std::cout << "\n";
  }
  std::cout << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
  return ok ? kExitOk : kExitVerify;
}

int cmd_catalog(const Options& o) {
  const auto start = Clock::now();
  io::RunManifest manifest = base_manifest("catalog", o);
  if (!o.resolve) {
    const auto [catalog, path] = select_catalog(o);
    finish(o.out, io::catalog_to_json(catalog), manifest, start);
    return kExitOk;
  }
  if (o.n_states < kMinValidationStates)
    throw ValidationError("--n-states must be at least " + std::to_string(kMinValidationStates));
  std::vector<StateCoeffs> states;
  for (std::size_t i = 0; i < o.n_states; ++i)
    states.push_back(coeffs_from_density(random_state(derive_seed(o.seed, i), ensemble::MixedGinibre{})));
  const CatalogResolution res = resolve_catalog(states);
  std::cerr << "resolved " << res.catalog.entries().size() << " labels, max identity residual "
            << res.max_residual << "\n";
  for (const auto& a : res.ambiguities) {
    std::cerr << "ambiguity " << to_string(a.label) << ": " << a.candidates.size() << " candidates"
              << (a.contraction_equivalent ? " (contraction-equivalent)" : "") << "\n";
    for (const auto& d : a.candidates) std::cerr << "  " << d.signature() << "\n";
  }
  if (!o.emit_inc.empty()) {
    std::ostringstream inc;
    inc << "// Resolved label topologies as walk entry sides (see diagram_from_walk).\n"
        << "// Regenerate with: hominv catalog --resolve\n";
    for (const auto& e : res.catalog.entries()) {
      const std::string sig = e.diagram.signature();
      inc << "{Label::" << to_string(e.label) << ", " << (sig[0] == 'C' ? "true" : "false") << ", \""
          << sig.substr(1) << "\"},\n";
    }
    io::write_text(o.emit_inc, inc.str());
  }
  manifest.seed = o.seed;
  finish(o.out, io::catalog_to_json(res.catalog), manifest, start);
  return kExitOk;
}

int cmd_resources(const Options& o) {
  if (o.format == "markdown") std::cout << resource_table_markdown();
  else if (o.format == "csv") std::cout << resource_table_csv();
  else throw ValidationError("--format must be markdown or csv");
  return kExitOk;
}

int cmd_tables(const Options& o) {
  const auto [catalog, path] = select_catalog(o);
  const InterferometerConfig& config = interferometer_config(o.config);
  int disagreements = 0;
  for (const auto& p : config.detector_pairs) std::cout << p << ' ';
  std::cout << "| derived | reference\n";
  for (const auto& row : compare_with_reference(config, catalog)) {
    std::string cells;
    for (char c : row.pattern) (cells += c) += "    ";
    std::cout << cells << "| " << row.derived << " | " << row.reference << (row.agrees ? "" : "   <-- differs")
              << "\n";
    disagreements += !row.agrees;
  }
  std::cout << disagreements << " of " << (1u << config.diagram.edge_count()) << " rows differ\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hominv: two-qubit invariants, HOM interferometer simulation and CHSH nonlocality"};
  app.require_subcommand(1);
  Options o;

  auto* inv = app.add_subcommand("invariants", "Makhlin / Jing invariants of a state");
  inv->add_option("--state", o.state, "State JSON file or builtin:{singlet,hh,mixed,werner:P,random:SEED}")->required();
  inv->add_option("--family", o.family, "makhlin, jing or both")->check(CLI::IsMember({"makhlin", "jing", "both"}));
  inv->add_option("--out", o.out, "Output prefix (<out>.json, <out>_<family>.csv)");

  auto* sim = app.add_subcommand("simulate", "Sample detector-pair counts for one interferometer");
  sim->add_option("--state", o.state, "State JSON file or builtin:...")->required();
  sim->add_option("--config", o.config, "fig5-top, fig5-bottom, fig6, fig7-l0, fig7-lbar1, fig7-lbar2")->required();
  sim->add_option("--events", o.events, "Number of events");
  sim->add_option("--seed", o.seed, "RNG seed");
  sim->add_option("--out", o.out, "Output CSV (stdout if omitted)");

  auto* nl = app.add_subcommand("nonlocality", "Spectrum of R, M, f and E");
  nl->add_option("--state", o.state, "State JSON file or builtin:...");
  nl->add_option("--path", o.path, "direct, jing, makhlin or estimated")
      ->check(CLI::IsMember({"direct", "jing", "makhlin", "estimated"}));
  nl->add_option("--counts", o.counts, "Count-table CSVs (estimated path)");
  nl->add_option("--family", o.family, "auto, makhlin or jing (estimated path; auto = makhlin when fig7 tables are given)");
  nl->add_option("--catalog", o.catalog, "Catalog JSON (overrides HOMINV_CATALOG)");
  nl->add_option("--out", o.out, "Output JSON (stdout if omitted)");

  auto* ver = app.add_subcommand("verify", "Run the identity, oracle, invariance and W checks");
  ver->add_option("--seed", o.seed, "RNG seed");
  ver->add_option("--n-states", o.n_states, "Number of random states");
  ver->add_option("--catalog", o.catalog, "Catalog JSON (overrides HOMINV_CATALOG)");

  auto* cat = app.add_subcommand("catalog", "Print or re-resolve the diagram catalog");
  cat->add_flag("--resolve", o.resolve, "Re-derive topologies from the identities");
  cat->add_option("--seed", o.seed, "RNG seed for validation states");
  cat->add_option("--n-states", o.n_states, "Validation states");
  cat->add_option("--catalog", o.catalog, "Catalog JSON to print");
  cat->add_option("--emit-inc", o.emit_inc, "Also write the compiled-in table");
  cat->add_option("--out", o.out, "Output JSON (stdout if omitted)");

  auto* res = app.add_subcommand("resources", "Resource comparison of CHSH measurement methods");
  res->add_option("--format", o.format, "markdown or csv");

  auto* tab = app.add_subcommand("tables", "Derived detection-event interpretation vs reference table");
  tab->add_option("--config", o.config, "Interferometer config")->required();
  tab->add_option("--catalog", o.catalog, "Catalog JSON (overrides HOMINV_CATALOG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*inv) return cmd_invariants(o);
    if (*sim) return cmd_simulate(o);
    if (*nl) return cmd_nonlocality(o);
    if (*ver) return cmd_verify(o);
    if (*cat) return cmd_catalog(o);
    if (*res) return cmd_resources(o);
    if (*tab) return cmd_tables(o);
  } catch (const InsufficientStatisticsError& e) {
    std::cerr << "insufficient statistics: " << e.what() << "\n";
    return kExitStatistics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
