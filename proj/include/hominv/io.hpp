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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hominv/diagrams.hpp"
#include "hominv/hom_simulator.hpp"
#include "hominv/invariants.hpp"
#include "hominv/nonlocality.hpp"
#include "hominv/pauli_core.hpp"

namespace hominv::io {

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// {"rho": [[[re, im] x4] x4]} or {"t": [[r x4] x4]}; the writer emits both.
DensityMatrix parse_state_json(std::string_view text);
std::string state_to_json(const DensityMatrix& rho);

/// {"family", "values", "source"[, "uncertainty"]}.
std::string invariant_vector_to_json(const InvariantVector& v);
InvariantVector invariant_vector_from_json(std::string_view text);

/// One row per state: state_id,family,source,<name>_1..<name>_n.
std::string invariants_csv_header(Family family);
std::string invariants_csv_row(std::string_view state_id, const InvariantVector& v);

/// {"version", "entries": [{label, n_copies, edges: [[[copy, side], [copy, side]], ...], provenance}]}
/// with 1-based copies, in label order.
std::string catalog_to_json(const DiagramCatalog& catalog);
/// Structural problems are reported as CatalogError naming the label.
DiagramCatalog catalog_from_json(std::string_view text);
DiagramCatalog load_catalog(const std::filesystem::path& path);

/// CSV with '#' header lines (config, Z, seed, optional manifest), then one
/// row per outcome mask: a/c per detector pair, count.
std::string count_table_to_csv(const CountTable& table, std::string_view manifest_json = {});
CountTable count_table_from_csv(std::string_view text);

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> events;
  int catalog_version = DiagramCatalog::kVersion;
  std::string catalog_path;
  std::vector<std::string> outputs;
  std::optional<double> wall_clock_seconds;
};

/// Compact single-line JSON. Wall-clock is omitted when unset, so outputs
/// that embed the manifest stay byte-identical across reruns.
std::string manifest_to_json(const RunManifest& m);

std::string nonlocality_report_json(std::string_view state_id, const NonlocalityReport& rep,
                                    const RunManifest& manifest);
std::string nonlocality_estimate_json(std::string_view state_id, const NonlocalityEstimate& est,
                                      const RunManifest& manifest);

}  // namespace hominv::io
