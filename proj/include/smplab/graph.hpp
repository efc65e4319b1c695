#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace smplab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// bfs_distance() result for disconnected pairs.
inline constexpr std::uint32_t kInfiniteDistance = std::numeric_limits<std::uint32_t>::max();

enum class SelfLoops { All, None, Explicit };

const char* to_string(SelfLoops policy);
SelfLoops self_loops_from_string(std::string_view name);

/*
 * Finite undirected graph with an explicit self-loop policy. Immutable once
 * built. Neighbor lists are sorted and never contain the vertex itself; loops
 * are reported through has_loop() and adjacent(v, v).
 */
class Graph {
 public:
  /// Vertex counts up to this bound also keep a dense adjacency bit matrix.
  static constexpr std::size_t kDenseLimit = 4096;

  Graph() = default;

  /// Strict constructor: every edge must be in range, non-loop and listed
  /// once (in either orientation). `loops` is only allowed with
  /// SelfLoops::Explicit.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          SelfLoops policy = SelfLoops::None,
                          std::span<const Vertex> loops = {});

  std::size_t size() const { return neighbors_.size(); }
  SelfLoops self_loops() const { return policy_; }

  bool adjacent(Vertex u, Vertex v) const;
  bool has_loop(Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  /// Number of non-loop edges.
  std::size_t edge_count() const { return edge_count_; }
  /// Non-loop edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;
  std::vector<Vertex> loops() const;

  /// Same vertices, edges and loops (policy is not compared).
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  friend class GraphBuilder;

  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<bool> loop_;
  std::vector<std::uint64_t> dense_;
  std::size_t edge_count_ = 0;
  SelfLoops policy_ = SelfLoops::None;
};

/// Lenient builder: duplicate edges collapse; add_edge(v, v) marks a loop
/// (only meaningful for SelfLoops::Explicit).
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n, SelfLoops policy = SelfLoops::None);

  GraphBuilder& add_edge(Vertex u, Vertex v);
  GraphBuilder& add_loop(Vertex v);
  std::size_t size() const { return adjacency_.size(); }
  Graph build() &&;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<bool> loop_;
  SelfLoops policy_;
};

/// Total map V(G) -> V(H).
struct VertexMap {
  std::size_t target_size = 0;
  std::vector<Vertex> image;

  std::size_t domain_size() const { return image.size(); }
  Vertex operator()(Vertex v) const { return image.at(v); }
  /// Every image value lies in [0, target_size).
  bool valid() const;
  bool injective() const;
};

VertexMap identity_map(std::size_t n);
/// (second ∘ first): V(A) -> V(C).
VertexMap compose(const VertexMap& first, const VertexMap& second);

/// Out-neighbor ("parent") lists of an acyclic orientation.
struct Orientation {
  std::vector<std::vector<Vertex>> parents;
  std::size_t max_outdegree = 0;

  /// Every edge of `g` is listed exactly once, every listed pair is an edge.
  bool covers_exactly(const Graph& g) const;
};

// Distances ------------------------------------------------------------------

std::uint32_t bfs_distance(const Graph& g, Vertex x, Vertex y);
std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source);
/// Row-major n*n table of BFS distances.
std::vector<std::uint32_t> all_pairs_distances(const Graph& g);

/// Largest finite distance (0 for empty or edgeless graphs).
std::uint32_t diameter(const Graph& g);

/// G^k: edge {u,v} iff dist(u,v) <= k, all self-loops present.
Graph k_closure(const Graph& g, std::uint32_t k);

// Equivalence reduction and embeddings --------------------------------------

struct Reduction {
  Graph graph;
  VertexMap quotient;
};

/// Quotient by identical adjacency rows. Classes are numbered in order of
/// their smallest member.
Reduction equiv_reduction(const Graph& g);

bool is_embedding(const Graph& g, const Graph& h, const VertexMap& phi);

struct EmbeddingSearch {
  /// Maximum vertex count of either graph.
  std::size_t cap = 8;
  /// Require an injective map (induced-subgraph / isomorphism search).
  bool injective = false;
};

/// Lexicographically first embedding G -> H, if any.
std::optional<VertexMap> find_embedding(const Graph& g, const Graph& h,
                                        const EmbeddingSearch& search = {});

bool is_induced_subgraph(const Graph& g, const Graph& h, std::size_t cap = 8);
bool isomorphic(const Graph& g, const Graph& h, std::size_t cap = 8);

// Orientations -------------------------------------------------------------

/// Peel a minimum-degree vertex repeatedly; a peeled vertex's edges to the
/// remaining vertices become its out-edges.
Orientation degeneracy_orientation(const Graph& g);
std::size_t degeneracy(const Graph& g);

}  // namespace smplab
