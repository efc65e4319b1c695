#include <gtest/gtest.h>

#include <random>

#include "smplab/error.hpp"
#include "smplab/graph.hpp"
#include "test_util.hpp"

using namespace smplab;
using namespace smplab::testing;

TEST(Graph, StrictConstructorRejectsBadInput) {
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  EXPECT_THROW(Graph::from_edges(2, dup), InputError);
  const std::vector<Edge> loop{{1, 1}};
  EXPECT_THROW(Graph::from_edges(2, loop), InputError);
  const std::vector<Edge> range{{0, 2}};
  EXPECT_THROW(Graph::from_edges(2, range), InputError);
  const std::vector<Vertex> loops{0};
  EXPECT_THROW(Graph::from_edges(2, {}, SelfLoops::None, loops), InputError);
}

TEST(Graph, SelfLoopPolicies) {
  const std::vector<Edge> e{{0, 1}};
  const std::vector<Vertex> loops{1};
  const auto all = Graph::from_edges(3, e, SelfLoops::All);
  const auto none = Graph::from_edges(3, e, SelfLoops::None);
  const auto some = Graph::from_edges(3, e, SelfLoops::Explicit, loops);
  for (Vertex v = 0; v < 3; ++v) {
    EXPECT_TRUE(all.adjacent(v, v));
    EXPECT_FALSE(none.adjacent(v, v));
    EXPECT_EQ(some.adjacent(v, v), v == 1);
  }
  EXPECT_TRUE(all.adjacent(1, 0));
  EXPECT_EQ(all.neighbors(0), std::vector<Vertex>{1});
  EXPECT_THROW(all.adjacent(0, 3), InputError);
}

TEST(Graph, SparseAboveDenseLimit) {
  const std::size_t n = Graph::kDenseLimit + 10;
  const auto g = path_graph(n);
  EXPECT_TRUE(g.adjacent(4100, 4101));
  EXPECT_FALSE(g.adjacent(4100, 4102));
  EXPECT_EQ(g.edge_count(), n - 1);
}

TEST(BfsDistance, Examples) {
  const auto p = path_graph(3);
  EXPECT_EQ(bfs_distance(p, 1, 1), 0u);
  EXPECT_EQ(bfs_distance(p, 0, 2), 2u);
  const std::vector<Edge> two{{0, 1}, {2, 3}};
  EXPECT_EQ(bfs_distance(Graph::from_edges(4, two), 0, 3), kInfiniteDistance);
  EXPECT_THROW(bfs_distance(p, 0, 3), InputError);
}

TEST(KClosure, Examples) {
  const auto tri = k_closure(path_graph(3), 2);
  EXPECT_EQ(tri.self_loops(), SelfLoops::All);
  EXPECT_EQ(tri, complete_graph(3, SelfLoops::All));

  const auto c4 = cycle_graph(4);
  EXPECT_EQ(k_closure(c4, 2), complete_graph(4, SelfLoops::All));

  const auto one = k_closure(c4, 1);
  EXPECT_EQ(one.edges(), c4.edges());
  EXPECT_EQ(one.loops().size(), 4u);

  EXPECT_THROW(k_closure(c4, 0), InputError);
}

TEST(KClosure, MonotoneAndStable) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto g = random_graph(9, 0.25, rng, false);
    const auto d = diameter(g);
    for (std::uint32_t a = 1; a <= 4; ++a) {
      const auto ga = k_closure(g, a);
      const auto gab = k_closure(ga, 2);
      for (const auto& [u, v] : ga.edges()) EXPECT_TRUE(gab.adjacent(u, v));
      if (a >= d) EXPECT_EQ(ga, k_closure(g, a + 1));
      // Direct definition.
      for (Vertex u = 0; u < g.size(); ++u) {
        for (Vertex v = 0; v < g.size(); ++v) {
          EXPECT_EQ(ga.adjacent(u, v), bfs_distance(g, u, v) <= a);
        }
      }
    }
  }
}

TEST(EquivReduction, Examples) {
  const auto k4 = complete_graph(4, SelfLoops::All);
  const auto r = equiv_reduction(k4);
  EXPECT_EQ(r.graph.size(), 1u);
  EXPECT_TRUE(r.graph.has_loop(0));

  const auto c5 = cycle_graph(5);
  const auto rc = equiv_reduction(c5);
  EXPECT_EQ(rc.graph.size(), 5u);
  EXPECT_TRUE(isomorphic(rc.graph, c5));

  const auto p3 = equiv_reduction(path_graph(3));
  EXPECT_EQ(p3.graph.size(), 2u);
  EXPECT_EQ(p3.graph.edge_count(), 1u);
  EXPECT_EQ(p3.quotient.image, (std::vector<Vertex>{0, 1, 0}));
}

TEST(EquivReduction, ClassesHaveIdenticalRows) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_graph(7, 0.5, rng);
    const auto r = equiv_reduction(g);
    for (Vertex u = 0; u < g.size(); ++u) {
      for (Vertex v = 0; v < g.size(); ++v) {
        if (r.quotient(u) != r.quotient(v)) continue;
        for (Vertex w = 0; w < g.size(); ++w) EXPECT_EQ(g.adjacent(u, w), g.adjacent(v, w));
      }
    }
  }
}

TEST(Embedding, PaperPathExample) {
  const auto p3 = path_graph(3);
  EXPECT_TRUE(is_embedding(p3, p3, identity_map(3)));
  // a-b-c into a'-b'-c' with c -> a'.
  EXPECT_TRUE(is_embedding(p3, p3, VertexMap{3, {0, 1, 0}}));
  const std::vector<Edge> e{{0, 1}};
  const auto edge = Graph::from_edges(2, e);
  const auto isolated = Graph::from_edges(2, {});
  for (Vertex a = 0; a < 2; ++a) {
    for (Vertex b = 0; b < 2; ++b) EXPECT_FALSE(is_embedding(edge, isolated, VertexMap{2, {a, b}}));
  }
  EXPECT_THROW(is_embedding(edge, p3, VertexMap{2, {0, 1}}), InputError);
}

TEST(Embedding, FindExamples) {
  const auto tri = complete_graph(3);
  const std::vector<Edge> e{{0, 1}};
  EXPECT_FALSE(find_embedding(tri, Graph::from_edges(2, e)).has_value());
  EXPECT_THROW(find_embedding(path_graph(9), path_graph(3)), CapacityError);
  EXPECT_NO_THROW(find_embedding(path_graph(9), path_graph(3), {.cap = 9}));

  const auto p4 = path_graph(4);
  const auto red = equiv_reduction(p4);
  const auto phi = find_embedding(p4, red.graph);
  ASSERT_TRUE(phi.has_value());
  EXPECT_TRUE(is_embedding(p4, red.graph, *phi));
}

TEST(Embedding, LexicographicFirstHit) {
  // Map an edge into a triangle: the first hit is (0, 1).
  const std::vector<Edge> e{{0, 1}};
  const auto phi = find_embedding(Graph::from_edges(2, e), complete_graph(3));
  ASSERT_TRUE(phi.has_value());
  EXPECT_EQ(phi->image, (std::vector<Vertex>{0, 1}));
}

// Properties of ⊏ on random pairs with loops, n <= 7.
TEST(EmbeddingProperties, RandomPairs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  for (int t = 0; t < 150; ++t) {
    const auto g = random_graph(size(rng), 0.5, rng);
    const auto h = random_graph(size(rng), 0.5, rng);
    const auto k = random_graph(size(rng), 0.5, rng);
    const auto rg = equiv_reduction(g);
    const auto rh = equiv_reduction(h);

    // (4) G ⊏ G^≡ and G^≡ ⊏ G.
    EXPECT_TRUE(is_embedding(g, rg.graph, rg.quotient));
    EXPECT_TRUE(find_embedding(rg.graph, g).has_value());

    // (3) (G^≡)^≡ ≅ G^≡.
    EXPECT_TRUE(isomorphic(equiv_reduction(rg.graph).graph, rg.graph));

    // (5) G ⊏ H iff G^≡ ⊏ H^≡.
    const auto gh = find_embedding(g, h);
    EXPECT_EQ(gh.has_value(), find_embedding(rg.graph, rh.graph).has_value());

    // (6) G^≡ ⊏ H^≡ iff G^≡ is an induced subgraph of H^≡.
    EXPECT_EQ(find_embedding(rg.graph, rh.graph).has_value(), is_induced_subgraph(rg.graph, rh.graph));

    // (1) transitivity through the composed map.
    const auto hk = find_embedding(h, k);
    if (gh && hk) EXPECT_TRUE(is_embedding(g, k, compose(*gh, *hk)));
  }
}

TEST(Degeneracy, Examples) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto tree = random_tree(40, rng);
    const auto o = degeneracy_orientation(tree);
    EXPECT_EQ(o.max_outdegree, 1u);
    EXPECT_TRUE(o.covers_exactly(tree));
  }
  EXPECT_EQ(degeneracy(complete_graph(4)), 3u);
  EXPECT_EQ(degeneracy(cycle_graph(6)), 2u);
  EXPECT_EQ(degeneracy(Graph::from_edges(5, {})), 0u);
}

TEST(Degeneracy, EveryEdgeOrientedOnce) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const auto g = random_graph(30, 0.2, rng, false);
    const auto o = degeneracy_orientation(g);
    EXPECT_TRUE(o.covers_exactly(g));
    for (const auto& [u, v] : g.edges()) {
      const bool uv = std::find(o.parents[u].begin(), o.parents[u].end(), v) != o.parents[u].end();
      const bool vu = std::find(o.parents[v].begin(), o.parents[v].end(), u) != o.parents[v].end();
      EXPECT_NE(uv, vu);
    }
  }
}
