#include <gtest/gtest.h>

#include <algorithm>

#include "smplab/error.hpp"
#include "smplab/planar.hpp"
#include "test_util.hpp"

using namespace smplab;

namespace {

PlanarEmbedding triangle() { return PlanarEmbedding::from_rotation({{1, 2}, {2, 0}, {0, 1}}, {0, 2, 1}); }

// Vertex 3 inside the triangle 0, 1, 2.
PlanarEmbedding k4() { return stacked_triangulation(4, 0); }

}  // namespace

TEST(PlanarEmbedding, RejectsAsymmetricRotation) {
  EXPECT_THROW(PlanarEmbedding::from_rotation({{1}, {}}, {0, 1}), InputError);
  EXPECT_THROW(PlanarEmbedding::from_rotation({{0}}, {0}), InputError);
  EXPECT_THROW(PlanarEmbedding::from_rotation({{1, 1}, {0}}, {0, 1}), InputError);
}

TEST(ValidateEmbedding, Examples) {
  const auto t = validate_embedding(triangle());
  EXPECT_TRUE(t.valid);
  EXPECT_EQ(t.faces, 2u);

  const auto k = validate_embedding(k4());
  EXPECT_TRUE(k.valid) << k.diagnostic;
  EXPECT_EQ(k.faces, 4u);

  std::vector<std::vector<Vertex>> rot(5);
  for (Vertex v = 0; v < 5; ++v) {
    for (Vertex u = 0; u < 5; ++u) {
      if (u != v) rot[v].push_back(u);
    }
  }
  const auto k5 = validate_embedding(PlanarEmbedding::from_rotation(rot, {0, 1, 2}));
  EXPECT_FALSE(k5.valid);
  EXPECT_FALSE(k5.diagnostic.empty());
}

TEST(ValidateEmbedding, OuterFaceMustBeAFace) {
  auto emb = k4();
  emb.outer_face = {0, 1, 3, 2};
  EXPECT_FALSE(validate_embedding(emb).valid);
}

TEST(Triangulate, TriangleUnchanged) {
  const auto t = triangulate(triangle());
  EXPECT_TRUE(t.auxiliary.empty());
  EXPECT_EQ(t.graph, triangle().graph);
}

TEST(Triangulate, FourCycleNeedsOneChordPerFace) {
  const auto c4 = PlanarEmbedding::from_rotation({{1, 3}, {2, 0}, {3, 1}, {0, 2}}, {0, 3, 2, 1});
  ASSERT_TRUE(validate_embedding(c4).valid);
  const auto t = triangulate(c4);
  // Inner and outer quadrilateral each receive a chord.
  EXPECT_EQ(t.auxiliary.size(), 2u);
  const auto check = validate_embedding(t);
  EXPECT_TRUE(check.valid) << check.diagnostic;
  for (const auto& f : trace_faces(t)) EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(t.base_graph(), c4.graph);
}

TEST(Triangulate, StarGetsThreeAuxiliaryEdges) {
  const auto star = PlanarEmbedding::from_rotation({{1, 2, 3}, {0}, {0}, {0}}, {0, 1, 0, 2, 0, 3});
  ASSERT_TRUE(validate_embedding(star).valid);
  const auto t = triangulate(star);
  EXPECT_EQ(t.auxiliary.size(), 3u);
  EXPECT_TRUE(validate_embedding(t).valid);
  EXPECT_EQ(t.graph.edge_count(), 6u);
  EXPECT_THROW(triangulate(PlanarEmbedding::from_rotation({{1}, {0}}, {0, 1})), InputError);
}

TEST(Triangulate, TreesBecomeTriangulations) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    // Paths embedded on a line.
    const std::size_t n = 3 + t;
    std::vector<std::vector<Vertex>> rot(n);
    for (Vertex v = 0; v + 1 < n; ++v) {
      rot[v].push_back(v + 1);
      rot[v + 1].push_back(v);
    }
    std::vector<Vertex> outer;
    for (Vertex v = 0; v < n; ++v) outer.push_back(v);
    for (Vertex v = static_cast<Vertex>(n) - 2; v > 0; --v) outer.push_back(v);
    const auto emb = PlanarEmbedding::from_rotation(rot, outer);
    ASSERT_TRUE(validate_embedding(emb).valid);
    const auto tri = triangulate(emb);
    EXPECT_EQ(tri.graph.edge_count(), 3 * n - 6);
    EXPECT_TRUE(validate_embedding(tri).valid);
    const auto wood = schnyder_wood(tri);
    EXPECT_TRUE(check_wood(tri, wood).empty());
  }
}

TEST(SchnyderWood, Triangle) {
  const auto wood = schnyder_wood(triangle());
  for (Vertex v = 0; v < 3; ++v) {
    EXPECT_TRUE(wood.is_root(v));
    for (int c = 0; c < 3; ++c) EXPECT_FALSE(wood.parent[v][c].has_value());
  }
  EXPECT_TRUE(check_wood(triangle(), wood).empty());
}

TEST(SchnyderWood, K4InternalVertexPointsToRoots) {
  const auto emb = k4();
  const auto wood = schnyder_wood(emb);
  std::vector<Vertex> parents;
  for (int c = 0; c < 3; ++c) {
    ASSERT_TRUE(wood.parent[3][c].has_value());
    EXPECT_EQ(*wood.parent[3][c], wood.roots[c]);
    parents.push_back(*wood.parent[3][c]);
  }
  std::sort(parents.begin(), parents.end());
  EXPECT_EQ(parents, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_TRUE(check_wood(emb, wood).empty());
}

TEST(SchnyderWood, RejectsNonTriangulated) {
  const auto c4 = PlanarEmbedding::from_rotation({{1, 3}, {2, 0}, {3, 1}, {0, 2}}, {0, 3, 2, 1});
  EXPECT_THROW(schnyder_wood(c4), PreconditionError);
}

TEST(SchnyderWood, StackedTriangulations) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto emb = stacked_triangulation(50, seed);
    const auto check = validate_embedding(emb);
    ASSERT_TRUE(check.valid) << check.diagnostic;
    EXPECT_EQ(check.faces, 2 * 50 - 4u);
    const auto wood = schnyder_wood(emb);
    const auto violations = check_wood(emb, wood);
    EXPECT_TRUE(violations.empty()) << violations.front();
  }
}

TEST(SchnyderWood, CheckerCatchesCorruption) {
  const auto emb = stacked_triangulation(20, 3);
  auto wood = schnyder_wood(emb);
  for (Vertex v = 0; v < 20; ++v) {
    if (wood.is_root(v)) continue;
    std::swap(wood.full_parent[v][0], wood.full_parent[v][1]);
    std::swap(wood.parent[v][0], wood.parent[v][1]);
    break;
  }
  EXPECT_FALSE(check_wood(emb, wood).empty());
}

TEST(SplitGraph, TriangleAddsNothing) {
  const auto emb = triangle();
  const auto split = split_graph(emb.graph, schnyder_wood(emb));
  EXPECT_EQ(split.graph.size(), 3u);
  EXPECT_EQ(split.graph, emb.graph);
  EXPECT_TRUE(split.missing_root_edges.empty());
}

TEST(SplitGraph, K4CopiesPerIncomingColor) {
  const auto emb = k4();
  const auto wood = schnyder_wood(emb);
  const auto split = split_graph(emb.graph, wood);
  // Each root receives one incoming edge of its own color from vertex 3.
  EXPECT_EQ(split.graph.size(), 7u);
  for (Vertex v = 4; v < 7; ++v) EXPECT_TRUE(wood.is_root(split.origin[v]));
  EXPECT_LE(split.graph.edge_count(), 3 * split.graph.size() - 6);
}

TEST(SplitGraph, EulerBoundOnStacked) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto emb = stacked_triangulation(20, seed);
    const auto split = split_graph(emb.graph, schnyder_wood(emb));
    EXPECT_LE(split.graph.edge_count(), 3 * split.graph.size() - 6);
  }
}

TEST(SplitGraph, FlagsMissingRootEdges) {
  const auto c4 = PlanarEmbedding::from_rotation({{1, 3}, {2, 0}, {3, 1}, {0, 2}}, {0, 3, 2, 1});
  const auto tri = triangulate(c4);
  const auto wood = schnyder_wood(tri);
  const auto split = split_graph(tri.base_graph(), wood);
  EXPECT_FALSE(split.missing_root_edges.empty());
}

TEST(HeadToHead, Examples) {
  const auto emb = k4();
  const auto wood = schnyder_wood(emb);
  const auto h = head_to_head_closure(emb.graph, wood);
  for (Vertex a = 0; a < 3; ++a) {
    for (Vertex b = a + 1; b < 3; ++b) EXPECT_TRUE(h.combined.adjacent(a, b));
  }

  // A path whose wood has no vertex with two out-neighbors in G.
  const auto p = PlanarEmbedding::from_rotation({{1}, {0, 2}, {1}}, {0, 1, 2, 1});
  const auto tri = triangulate(p);
  const auto base = tri.base_graph();
  const auto pw = schnyder_wood(tri);
  bool has_pair = false;
  for (Vertex v = 0; v < 3; ++v) has_pair = has_pair || pw.out_neighbors(v).size() >= 2;
  const auto hp = head_to_head_closure(base, pw);
  if (!has_pair) EXPECT_EQ(hp.combined.edge_count(), 0u);
}

TEST(HeadToHead, DegeneracyAndTaxonomy) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto emb = stacked_triangulation(100, seed);
    const auto wood = schnyder_wood(emb);
    const auto h = head_to_head_closure(emb.graph, wood);
    for (int c = 0; c < 3; ++c) EXPECT_LE(degeneracy(h.per_color[c]), 5u);
    EXPECT_LE(degeneracy(h.combined), 17u);
    for (const auto& [u, v] : h.combined.edges()) EXPECT_LE(bfs_distance(emb.graph, u, v), 2u);
    const auto tax = check_path_taxonomy(emb.graph, wood, h.combined);
    EXPECT_GT(tax.distance_two_pairs, 0u);
    EXPECT_EQ(tax.uncovered, 0u);
  }
}

TEST(HeadToHead, TaxonomyOnSparseSubgraphs) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto emb = stacked_triangulation(40, seed);
    // Drop a random third of the edges from the input graph by marking them auxiliary.
    auto sub = emb;
    std::bernoulli_distribution drop(0.33);
    for (const auto& e : emb.graph.edges()) {
      if (drop(rng)) sub.auxiliary.push_back(e);
    }
    std::sort(sub.auxiliary.begin(), sub.auxiliary.end());
    const auto wood = schnyder_wood(sub);
    EXPECT_TRUE(check_wood(sub, wood).empty());
    const auto g = sub.base_graph();
    const auto h = head_to_head_closure(g, wood);
    EXPECT_EQ(check_path_taxonomy(g, wood, h.combined).uncovered, 0u);
    const auto split = split_graph(g, wood);
    if (split.graph.size() >= 3) EXPECT_LE(split.graph.edge_count(), 3 * split.graph.size() - 6);
  }
}
