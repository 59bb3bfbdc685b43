// Copyright 2026 The HyperDP Authors
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

#ifndef HYPERDP_IO_H_
#define HYPERDP_IO_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hyperdp/hypergraph.h"
#include "json.hpp"

namespace hyperdp {

// {"n": int, "h": int, "edges": [[v0, ..., v(h-1)], ...]} with each edge
// sorted ascending and the edge list sorted lexicographically.
nlohmann::ordered_json HypergraphToJson(const Hypergraph& graph);
absl::StatusOr<Hypergraph> HypergraphFromJson(const nlohmann::json& json);

// {"n": int, "labels": [+1/-1, ...]}
nlohmann::ordered_json LabelingToJson(const Labeling& sigma);
absl::StatusOr<Labeling> LabelingFromJson(const nlohmann::json& json);

// Canonical text: compact JSON followed by a newline.
std::string SerializeHypergraph(const Hypergraph& graph);
std::string SerializeLabeling(const Labeling& sigma);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::StatusOr<nlohmann::json> ReadJsonFile(const std::string& path);
// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
absl::Status WriteFileAtomic(const std::string& path,
                             const std::string& contents);

}  // namespace hyperdp

#endif  // HYPERDP_IO_H_
