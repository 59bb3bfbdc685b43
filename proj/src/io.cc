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

#include "hyperdp/io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "absl/strings/str_cat.h"
#include "hyperdp/status_macros.h"

namespace hyperdp {

nlohmann::ordered_json HypergraphToJson(const Hypergraph& graph) {
  nlohmann::ordered_json json;
  json["n"] = graph.n();
  json["h"] = graph.h();
  json["edges"] = graph.SortedEdges();
  return json;
}

absl::StatusOr<Hypergraph> HypergraphFromJson(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("n") || !json.contains("h") ||
      !json.contains("edges")) {
    return absl::InvalidArgumentError(
        "hypergraph JSON must be an object with keys n, h, edges");
  }
  if (!json["n"].is_number_integer() || !json["h"].is_number_integer() ||
      !json["edges"].is_array()) {
    return absl::InvalidArgumentError(
        "hypergraph JSON: n and h must be integers and edges an array");
  }
  int n = json["n"].get<int>();
  int h = json["h"].get<int>();
  HYPERDP_ASSIGN_OR_RETURN(Hypergraph graph, Hypergraph::Create(n, h));
  for (const auto& edge : json["edges"]) {
    if (!edge.is_array()) {
      return absl::InvalidArgumentError("hypergraph JSON: edge is not an array");
    }
    std::vector<int> vertices;
    for (const auto& v : edge) {
      if (!v.is_number_integer()) {
        return absl::InvalidArgumentError(
            "hypergraph JSON: vertex ids must be integers");
      }
      vertices.push_back(v.get<int>());
    }
    HYPERDP_ASSIGN_OR_RETURN(uint64_t rank,
                             graph.codec().RankChecked(vertices));
    if (graph.Contains(rank)) {
      return absl::InvalidArgumentError(
          "hypergraph JSON: duplicate hyperedge");
    }
    HYPERDP_RETURN_IF_ERROR(graph.AddRank(rank));
  }
  return graph;
}

nlohmann::ordered_json LabelingToJson(const Labeling& sigma) {
  nlohmann::ordered_json json;
  json["n"] = sigma.size();
  json["labels"] = sigma.ToVector();
  return json;
}

absl::StatusOr<Labeling> LabelingFromJson(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("labels") ||
      !json["labels"].is_array()) {
    return absl::InvalidArgumentError(
        "labeling JSON must be an object with a labels array");
  }
  std::vector<int> labels;
  for (const auto& v : json["labels"]) {
    if (!v.is_number_integer()) {
      return absl::InvalidArgumentError("labeling JSON: labels must be +1/-1");
    }
    labels.push_back(v.get<int>());
  }
  if (json.contains("n") &&
      (!json["n"].is_number_integer() ||
       json["n"].get<int64_t>() != static_cast<int64_t>(labels.size()))) {
    return absl::InvalidArgumentError(
        "labeling JSON: n does not match the number of labels");
  }
  return Labeling::Create(labels);
}

std::string SerializeHypergraph(const Hypergraph& graph) {
  return HypergraphToJson(graph).dump() + "\n";
}

std::string SerializeLabeling(const Labeling& sigma) {
  return LabelingToJson(sigma).dump() + "\n";
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("read failed: ", path));
  return buffer.str();
}

absl::StatusOr<nlohmann::json> ReadJsonFile(const std::string& path) {
  HYPERDP_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  nlohmann::json json = nlohmann::json::parse(text, nullptr, false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat("malformed JSON in ", path));
  }
  return json;
}

absl::Status WriteFileAtomic(const std::string& path,
                             const std::string& contents) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::UnavailableError(absl::StrCat("cannot write ", tmp));
    }
    out << contents;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      return absl::DataLossError(absl::StrCat("write failed: ", tmp));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    return absl::UnavailableError(
        absl::StrCat("cannot rename ", tmp, " to ", path, ": ", ec.message()));
  }
  return absl::OkStatus();
}

}  // namespace hyperdp
