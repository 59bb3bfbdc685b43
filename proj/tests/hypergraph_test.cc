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

#include "hyperdp/hypergraph.h"

#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hyperdp/io.h"
#include "hyperdp/random.h"

namespace hyperdp {
namespace {

Labeling MakeLabeling(const std::vector<int>& labels) {
  return *Labeling::Create(labels);
}

Hypergraph RandomGraph(int n, int h, double density, uint64_t seed) {
  Rng rng(seed);
  Hypergraph graph = *Hypergraph::Create(n, h);
  for (uint64_t r = 0; r < graph.universe_size(); ++r) {
    if (rng.Bernoulli(density)) EXPECT_TRUE(graph.AddRank(r).ok());
  }
  return graph;
}

Labeling RandomLabeling(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<int> labels(n);
  for (int& l : labels) l = rng.Bernoulli(0.5) ? 1 : -1;
  return MakeLabeling(labels);
}

TEST(CountCrossClusterTest, DocumentedValues) {
  auto graph = Hypergraph::FromEdges(4, 3, {{0, 1, 2}, {0, 1, 3}});
  ASSERT_TRUE(graph.ok());
  EXPECT_EQ(*CountCrossCluster(*graph, MakeLabeling({1, 1, -1, -1})), 2u);

  auto empty = Hypergraph::Create(6, 3);
  EXPECT_EQ(*CountCrossCluster(*empty, MakeLabeling({1, -1, 1, -1, 1, -1})),
            0u);

  auto complete = Hypergraph::Complete(6, 3);
  ASSERT_EQ(complete->num_edges(), 20u);
  EXPECT_EQ(*CountCrossCluster(*complete, MakeLabeling({1, 1, 1, -1, -1, -1})),
            18u);
}

TEST(CountCrossClusterTest, LengthMismatchIsAnError) {
  auto graph = Hypergraph::Create(6, 3);
  EXPECT_FALSE(CountCrossCluster(*graph, MakeLabeling({1, -1})).ok());
}

TEST(CountCrossClusterTest, GlobalSignInvariance) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Hypergraph graph = RandomGraph(9, 3, 0.3, seed);
    Labeling sigma = RandomLabeling(9, seed + 1000);
    EXPECT_EQ(*CountCrossCluster(graph, sigma),
              *CountCrossCluster(graph, sigma.Negated()));
  }
}

TEST(CountCrossClusterTest, SensitivityIsOne) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Hypergraph graph = RandomGraph(8, 3, 0.4, seed);
    Labeling sigma = RandomLabeling(8, seed + 7);
    const uint64_t base = *CountCrossCluster(graph, sigma);
    for (uint64_t r = 0; r < graph.universe_size(); ++r) {
      Hypergraph neighbor = graph;
      ASSERT_TRUE(neighbor.ToggleRank(r).ok());
      const uint64_t other = *CountCrossCluster(neighbor, sigma);
      const uint64_t diff = other > base ? other - base : base - other;
      EXPECT_LE(diff, 1u);
    }
  }
}

TEST(CountCrossClusterTest, CrossPlusMonochromaticIsEdgeCount) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Hypergraph graph = RandomGraph(10, 4, 0.2, seed);
    Labeling sigma = RandomLabeling(10, seed + 99);
    uint64_t mono = 0;
    for (const auto& edge : graph.SortedEdges()) {
      bool same = true;
      for (int v : edge) same = same && sigma[v] == sigma[edge[0]];
      mono += same;
    }
    EXPECT_EQ(*CountCrossCluster(graph, sigma) + mono, graph.num_edges());
  }
}

TEST(MonochromaticCapacityTest, DocumentedValues) {
  EXPECT_EQ(*MonochromaticCapacity(3, 3, 3), 2u);
  EXPECT_EQ(*MonochromaticCapacity(2, 2, 3), 0u);
  EXPECT_EQ(*MonochromaticCapacity(50, 50, 3), 39200u);
}

TEST(SymmetricDifferenceTest, DocumentedValues) {
  Hypergraph graph = RandomGraph(6, 3, 0.5, 3);
  EXPECT_EQ(*SymmetricDifferenceSize(graph, graph), 0u);
  Hypergraph plus_one = graph;
  for (uint64_t r = 0; r < graph.universe_size(); ++r) {
    if (!graph.Contains(r)) {
      ASSERT_TRUE(plus_one.AddRank(r).ok());
      break;
    }
  }
  EXPECT_EQ(*SymmetricDifferenceSize(graph, plus_one), 1u);
}

TEST(SymmetricDifferenceTest, MatchesNaiveSetOracle) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Hypergraph x = RandomGraph(6, 3, 0.5, seed);
    Hypergraph y = RandomGraph(6, 3, 0.5, seed + 500);
    std::set<std::vector<int>> a, b;
    for (const auto& e : x.SortedEdges()) a.insert(e);
    for (const auto& e : y.SortedEdges()) b.insert(e);
    uint64_t expected = 0;
    for (const auto& e : a) expected += !b.count(e);
    for (const auto& e : b) expected += !a.count(e);
    EXPECT_EQ(*SymmetricDifferenceSize(x, y), expected);
  }
}

TEST(SymmetricDifferenceTest, ShapeMismatchIsAnError) {
  EXPECT_FALSE(
      SymmetricDifferenceSize(*Hypergraph::Create(6, 3),
                              *Hypergraph::Create(7, 3))
          .ok());
}

TEST(HypergraphTest, RejectsInvalidEdges) {
  auto graph = Hypergraph::Create(6, 3);
  ASSERT_TRUE(graph.ok());
  EXPECT_FALSE(graph->AddEdge({0, 1}).ok());
  EXPECT_FALSE(graph->AddEdge({2, 1, 0}).ok());
  EXPECT_FALSE(graph->AddEdge({0, 1, 9}).ok());
  EXPECT_FALSE(graph->AddRank(20).ok());
  EXPECT_FALSE(Hypergraph::Create(2, 3).ok());
  EXPECT_FALSE(Hypergraph::Create(5, 1).ok());
}

TEST(LabelingTest, Basics) {
  EXPECT_FALSE(Labeling::Create({1, 0, -1}).ok());
  Labeling sigma = MakeLabeling({-1, 1, 1, -1});
  EXPECT_TRUE(sigma.IsBalanced());
  EXPECT_EQ(sigma.Canonical(), MakeLabeling({1, -1, -1, 1}));
  EXPECT_FALSE(MakeLabeling({1, 1, -1}).IsBalanced());
  EXPECT_LT(MakeLabeling({1, -1, 1}), MakeLabeling({1, 1, -1}));
  EXPECT_EQ(Labeling::FromPlusMask(sigma.PlusMask(), 4), sigma);
}

TEST(HypergraphJsonTest, RoundTripIsByteStable) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Hypergraph graph = RandomGraph(9, 3, 0.3, seed);
    const std::string text = SerializeHypergraph(graph);
    auto parsed = HypergraphFromJson(nlohmann::json::parse(text));
    ASSERT_TRUE(parsed.ok());
    EXPECT_EQ(*parsed, graph);
    EXPECT_EQ(SerializeHypergraph(*parsed), text);
  }
}

TEST(HypergraphJsonTest, CanonicalFormat) {
  auto graph = Hypergraph::FromEdges(4, 3, {{1, 2, 3}, {0, 1, 3}});
  EXPECT_EQ(SerializeHypergraph(*graph),
            "{\"n\":4,\"h\":3,\"edges\":[[0,1,3],[1,2,3]]}\n");
}

TEST(HypergraphJsonTest, RejectsMalformedInput) {
  EXPECT_FALSE(HypergraphFromJson(nlohmann::json::parse(
                   R"({"n":4,"h":3,"edges":[[0,1]]})"))
                   .ok());
  EXPECT_FALSE(HypergraphFromJson(nlohmann::json::parse(
                   R"({"n":4,"h":3,"edges":[[0,1,2],[0,1,2]]})"))
                   .ok());
  EXPECT_FALSE(
      HypergraphFromJson(nlohmann::json::parse(R"({"n":4,"edges":[]})")).ok());
}

TEST(LabelingJsonTest, RoundTrip) {
  Labeling sigma = MakeLabeling({1, -1, -1, 1, 1});
  auto parsed =
      LabelingFromJson(nlohmann::json::parse(SerializeLabeling(sigma)));
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(*parsed, sigma);
  EXPECT_FALSE(
      LabelingFromJson(nlohmann::json::parse(R"({"n":2,"labels":[1,2]})"))
          .ok());
}

}  // namespace
}  // namespace hyperdp
