#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smplab/graph.hpp"

namespace smplab {

/*
 * Combinatorial planar map. rotation[v] lists the neighbors of v in clockwise
 * order; a face is traced by moving from dart (u, v) to (v, w) where w follows
 * u in rotation[v]. Edges added by triangulate() are recorded as auxiliary:
 * they belong to the map but not to the input graph.
 */
struct PlanarEmbedding {
  Graph graph;
  std::vector<std::vector<Vertex>> rotation;
  std::vector<Vertex> outer_face;
  /// Sorted (u < v).
  std::vector<Edge> auxiliary;

  /// Builds the graph from the rotation lists; throws InputError when the
  /// lists are not symmetric, contain loops or repeat a neighbor.
  static PlanarEmbedding from_rotation(std::vector<std::vector<Vertex>> rotation,
                                       std::vector<Vertex> outer_face);

  std::size_t size() const { return graph.size(); }
  bool is_auxiliary(Vertex u, Vertex v) const;
  /// The input graph: every map edge except the auxiliary ones.
  Graph base_graph() const;
  /// Vertex following `u` in rotation[v].
  Vertex successor(Vertex v, Vertex u) const;
};

/// Face walks (vertex sequences) of the map, one per face.
std::vector<std::vector<Vertex>> trace_faces(const PlanarEmbedding& emb);

struct FaceCheck {
  bool valid = false;
  std::size_t faces = 0;
  std::string diagnostic;
};

/// Face traversal plus Euler's formula n - m + F = 2 (connected maps) and
/// outer-face membership.
FaceCheck validate_embedding(const PlanarEmbedding& emb);

/// Adds auxiliary edges until every face, the outer one included, is a
/// triangle. Requires a valid connected map with n >= 3.
PlanarEmbedding triangulate(const PlanarEmbedding& emb);

/*
 * Schnyder wood of a triangulation with outer face (r0, r1, r2), colors 0..2.
 * Every internal vertex has one parent per color in the triangulation; root
 * r_i is the root of color i. The outer edge (r_{i+1}, r_i) is recorded as the
 * root edge of color i, so every map edge is oriented exactly once.
 * `parent` is `full_parent` restricted to non-auxiliary edges.
 */
struct SchnyderWood {
  std::array<Vertex, 3> roots{};
  std::vector<std::array<std::optional<Vertex>, 3>> full_parent;
  std::vector<std::array<std::optional<Vertex>, 3>> parent;
  /// Whether root edge i belongs to the input graph.
  std::array<bool, 3> root_edge_present{};

  std::size_t size() const { return parent.size(); }
  bool is_root(Vertex v) const { return v == roots[0] || v == roots[1] || v == roots[2]; }
  /// Parent of color i in the input graph, root edges included.
  std::optional<Vertex> out(Vertex v, int color) const;
  /// All input-graph out-neighbors of v (at most one per color).
  std::vector<Vertex> out_neighbors(Vertex v) const;
};

/// Canonical-ordering construction; throws PreconditionError when some face
/// is not a triangle.
SchnyderWood schnyder_wood(const PlanarEmbedding& tri);

/// Invariant checker: three parents per internal vertex, the local color
/// pattern around internal vertices, and acyclic color classes (both in the
/// triangulation and restricted to the input graph). Empty when valid.
std::vector<std::string> check_wood(const PlanarEmbedding& tri, const SchnyderWood& wood);

struct SplitResult {
  Graph graph;
  /// origin[v'] = vertex of G that v' was split from.
  std::vector<Vertex> origin;
  /// Colors whose root edge is missing from G.
  std::vector<int> missing_root_edges;
};

SplitResult split_graph(const Graph& g, const SchnyderWood& wood);

struct HeadToHead {
  /// per_color[i]: {u, v} iff some w has out-edges to u and v in the two
  /// colors other than i.
  std::array<Graph, 3> per_color;
  Graph combined;
};

HeadToHead head_to_head_closure(const Graph& g, const SchnyderWood& wood);

struct TaxonomyCheck {
  std::size_t distance_two_pairs = 0;
  std::size_t uncovered = 0;
  std::optional<Edge> witness;
};

/// Every pair at distance 2 must be x->v->y, x->v<-y or an edge of the
/// head-to-head closure.
TaxonomyCheck check_path_taxonomy(const Graph& g, const SchnyderWood& wood, const Graph& closure);

/// Random stacked triangulation: start from a triangle and repeatedly insert
/// a vertex into a uniformly chosen inner face. n >= 3.
PlanarEmbedding stacked_triangulation(std::size_t n, std::uint64_t seed);

}  // namespace smplab
