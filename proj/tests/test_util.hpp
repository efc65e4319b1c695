#pragma once

#include <random>
#include <vector>

#include "smplab/graph.hpp"

namespace smplab::testing {

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph::from_edges(n, edges);
}

inline Graph complete_graph(std::size_t n, SelfLoops policy = SelfLoops::None) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges, policy);
}

/// G(n, p) with each vertex looped independently under the Explicit policy.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng, bool random_loops = true) {
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n, random_loops ? SelfLoops::Explicit : SelfLoops::None);
  for (Vertex u = 0; u < n; ++u) {
    if (random_loops && coin(rng)) b.add_loop(u);
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

inline Graph random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<Vertex>(std::uniform_int_distribution<Vertex>(0, v - 1)(rng)), v);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace smplab::testing

#include "smplab/lattice.hpp"

namespace smplab::testing {

/// Random DAG on n elements (edges go from lower to higher id) reduced to
/// its cover relation.
inline Poset random_poset(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Cover> rel;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (coin(rng)) rel.emplace_back(x, y);
    }
  }
  return transitive_reduction(n, rel);
}

}  // namespace smplab::testing
