#include "smplab/planar.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "smplab/error.hpp"

namespace smplab {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

/// Position lookup for rotation lists: index[v] holds (neighbor, position)
/// sorted by neighbor.
class RotationIndex {
 public:
  explicit RotationIndex(const std::vector<std::vector<Vertex>>& rotation) : index_(rotation.size()) {
    for (Vertex v = 0; v < rotation.size(); ++v) {
      auto& row = index_[v];
      row.reserve(rotation[v].size());
      for (std::size_t i = 0; i < rotation[v].size(); ++i) row.emplace_back(rotation[v][i], i);
      std::sort(row.begin(), row.end());
    }
  }

  std::size_t position(Vertex v, Vertex u) const {
    const auto& row = index_[v];
    const auto it = std::lower_bound(row.begin(), row.end(), std::pair<Vertex, std::size_t>{u, 0});
    if (it == row.end() || it->first != u) throw InputError("rotation: missing neighbor");
    return it->second;
  }

 private:
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> index_;
};

bool same_cycle(const std::vector<Vertex>& walk, const std::vector<Vertex>& target) {
  const std::size_t len = walk.size();
  if (len != target.size()) return false;
  for (std::size_t shift = 0; shift < len; ++shift) {
    bool forward = true, backward = true;
    for (std::size_t i = 0; i < len && (forward || backward); ++i) {
      forward = forward && walk[(shift + i) % len] == target[i];
      backward = backward && walk[(shift + len - i) % len] == target[i];
    }
    if (forward || backward) return true;
  }
  return false;
}

bool connected(const Graph& g) {
  if (g.size() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == kInfiniteDistance; });
}

}  // namespace

// PlanarEmbedding ---------------------------------------------------------------

PlanarEmbedding PlanarEmbedding::from_rotation(std::vector<std::vector<Vertex>> rotation,
                                               std::vector<Vertex> outer_face) {
  const std::size_t n = rotation.size();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    auto sorted = rotation[u];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("rotation of vertex " + std::to_string(u) + " repeats a neighbor");
    }
    for (const auto v : rotation[u]) {
      if (v >= n) throw InputError("rotation neighbor out of range");
      if (v == u) throw InputError("rotation contains a self-loop");
      if (u < v) edges.emplace_back(u, v);
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    for (const auto v : rotation[u]) {
      if (std::find(rotation[v].begin(), rotation[v].end(), u) == rotation[v].end()) {
        throw InputError("rotation is not symmetric at edge " + std::to_string(u) + "-" +
                         std::to_string(v));
      }
    }
  }
  for (const auto v : outer_face) {
    if (v >= n) throw InputError("outer face vertex out of range");
  }
  PlanarEmbedding emb;
  emb.graph = Graph::from_edges(n, edges);
  emb.rotation = std::move(rotation);
  emb.outer_face = std::move(outer_face);
  return emb;
}

bool PlanarEmbedding::is_auxiliary(Vertex u, Vertex v) const {
  return std::binary_search(auxiliary.begin(), auxiliary.end(), Edge{std::min(u, v), std::max(u, v)});
}

Graph PlanarEmbedding::base_graph() const {
  GraphBuilder b(size(), SelfLoops::None);
  for (const auto& [u, v] : graph.edges()) {
    if (!is_auxiliary(u, v)) b.add_edge(u, v);
  }
  return std::move(b).build();
}

Vertex PlanarEmbedding::successor(Vertex v, Vertex u) const {
  const auto& row = rotation.at(v);
  const auto it = std::find(row.begin(), row.end(), u);
  if (it == row.end()) throw InputError("successor: not a neighbor");
  const auto next = it + 1;
  return next == row.end() ? row.front() : *next;
}

std::vector<std::vector<Vertex>> trace_faces(const PlanarEmbedding& emb) {
  const std::size_t n = emb.size();
  const RotationIndex index(emb.rotation);
  std::vector<std::vector<bool>> used(n);
  for (Vertex u = 0; u < n; ++u) used[u].assign(emb.rotation[u].size(), false);

  std::vector<std::vector<Vertex>> faces;
  for (Vertex u0 = 0; u0 < n; ++u0) {
    for (std::size_t i0 = 0; i0 < emb.rotation[u0].size(); ++i0) {
      if (used[u0][i0]) continue;
      std::vector<Vertex> walk;
      Vertex u = u0;
      std::size_t i = i0;
      while (!used[u][i]) {
        used[u][i] = true;
        walk.push_back(u);
        const Vertex v = emb.rotation[u][i];
        const auto& row = emb.rotation[v];
        const std::size_t back = index.position(v, u);
        i = (back + 1) % row.size();
        u = v;
      }
      faces.push_back(std::move(walk));
    }
  }
  return faces;
}

FaceCheck validate_embedding(const PlanarEmbedding& emb) {
  FaceCheck out;
  const std::size_t n = emb.size();
  if (emb.rotation.size() != n) {
    out.diagnostic = "rotation size does not match the vertex count";
    return out;
  }
  for (Vertex v = 0; v < n; ++v) {
    auto rot = emb.rotation[v];
    std::sort(rot.begin(), rot.end());
    if (rot != emb.graph.neighbors(v)) {
      out.diagnostic = "rotation of vertex " + std::to_string(v) + " does not list its neighbors";
      return out;
    }
  }
  if (!connected(emb.graph)) {
    out.diagnostic = "graph is not connected";
    return out;
  }
  const auto faces = trace_faces(emb);
  // A single vertex has one (empty) face.
  out.faces = n == 1 ? 1 : faces.size();
  const auto euler = static_cast<long long>(n) - static_cast<long long>(emb.graph.edge_count()) +
                     static_cast<long long>(out.faces);
  if (euler != 2) {
    out.diagnostic = "Euler characteristic " + std::to_string(euler) + " with " +
                     std::to_string(out.faces) + " faces";
    return out;
  }
  if (n > 1 && std::none_of(faces.begin(), faces.end(),
                            [&](const auto& f) { return same_cycle(f, emb.outer_face); })) {
    out.diagnostic = "outer face is not a face of the map";
    return out;
  }
  out.valid = true;
  return out;
}

// Triangulation ------------------------------------------------------------------

namespace {

void insert_after(std::vector<Vertex>& row, Vertex anchor, Vertex value) {
  const auto it = std::find(row.begin(), row.end(), anchor);
  if (it == row.end()) throw ConstructionError("triangulate: corner lost");
  row.insert(it + 1, value);
}

}  // namespace

PlanarEmbedding triangulate(const PlanarEmbedding& emb) {
  if (emb.size() < 3) throw InputError("triangulate: need at least 3 vertices");
  const auto check = validate_embedding(emb);
  if (!check.valid) throw InputError("triangulate: invalid embedding (" + check.diagnostic + ")");

  auto faces = trace_faces(emb);
  auto rotation = emb.rotation;
  std::unordered_set<std::uint64_t> edges;
  for (const auto& [u, v] : emb.graph.edges()) edges.insert(edge_key(u, v));
  std::vector<Edge> added(emb.auxiliary.begin(), emb.auxiliary.end());
  std::vector<Vertex> outer = emb.outer_face;

  for (auto& walk : faces) {
    const bool is_outer = same_cycle(walk, emb.outer_face);
    while (walk.size() > 3) {
      const std::size_t len = walk.size();
      bool cut = false;
      for (std::size_t i = 0; i < len && !cut; ++i) {
        const Vertex a = walk[(i + len - 1) % len];
        const Vertex x = walk[i];
        const Vertex b = walk[(i + 1) % len];
        if (a == b || edges.count(edge_key(a, b))) continue;
        // Walk ... a x b ...: the chord a-b cuts off the triangle a x b.
        const Vertex p = walk[(i + len - 2) % len];
        insert_after(rotation[a], p, b);
        insert_after(rotation[b], x, a);
        edges.insert(edge_key(a, b));
        added.emplace_back(std::min(a, b), std::max(a, b));
        walk.erase(walk.begin() + static_cast<std::ptrdiff_t>(i));
        cut = true;
      }
      if (!cut) throw ConstructionError("triangulate: no admissible chord in a face");
    }
    if (is_outer) outer = walk;
  }

  auto out = PlanarEmbedding::from_rotation(std::move(rotation), std::move(outer));
  std::sort(added.begin(), added.end());
  out.auxiliary = std::move(added);
  return out;
}

// Schnyder woods -----------------------------------------------------------------

std::optional<Vertex> SchnyderWood::out(Vertex v, int color) const {
  if (parent.at(v)[color]) return parent[v][color];
  if (root_edge_present[color] && v == roots[(color + 1) % 3]) return roots[color];
  return std::nullopt;
}

std::vector<Vertex> SchnyderWood::out_neighbors(Vertex v) const {
  std::vector<Vertex> out_list;
  for (int c = 0; c < 3; ++c) {
    if (const auto p = out(v, c)) out_list.push_back(*p);
  }
  return out_list;
}

SchnyderWood schnyder_wood(const PlanarEmbedding& tri) {
  const std::size_t n = tri.size();
  if (n < 3) throw PreconditionError("schnyder_wood: need at least 3 vertices");
  const auto faces = trace_faces(tri);
  for (const auto& f : faces) {
    if (f.size() != 3) throw PreconditionError("schnyder_wood: map is not triangulated");
  }
  if (tri.outer_face.size() != 3 || n - tri.graph.edge_count() + faces.size() != 2) {
    throw PreconditionError("schnyder_wood: map is not a triangulation");
  }

  // Orient the roots so the outer face is traced r0 -> r1 -> r2.
  const auto& of = tri.outer_face;
  SchnyderWood wood;
  if (tri.successor(of[1], of[0]) == of[2]) {
    wood.roots = {of[0], of[1], of[2]};
  } else {
    wood.roots = {of[0], of[2], of[1]};
  }
  const Vertex r0 = wood.roots[0], r1 = wood.roots[1], r2 = wood.roots[2];
  wood.full_parent.assign(n, {});

  // Peel vertices off the outer contour (reverse canonical order). The
  // contour runs from r0 (left) to r1 (right).
  std::vector<Vertex> left(n), right(n);
  std::vector<bool> on_contour(n, false), removed(n, false);
  std::vector<std::size_t> outer_count(n, 0);
  const RotationIndex index(tri.rotation);

  auto join_contour = [&](Vertex u) {
    on_contour[u] = true;
    for (const auto w : tri.rotation[u]) ++outer_count[w];
  };
  join_contour(r0);
  join_contour(r2);
  join_contour(r1);
  right[r0] = r2;
  left[r2] = r0;
  right[r2] = r1;
  left[r1] = r2;

  std::vector<Vertex> candidates{r2};
  std::size_t peeled = 0;
  while (!candidates.empty()) {
    const Vertex v = candidates.back();
    candidates.pop_back();
    if (removed[v] || !on_contour[v] || v == r0 || v == r1 || outer_count[v] != 2) continue;

    const Vertex l = left[v], r = right[v];
    const auto& rot = tri.rotation[v];
    std::vector<Vertex> inner;
    for (std::size_t i = (index.position(v, l) + 1) % rot.size(); rot[i] != r; i = (i + 1) % rot.size()) {
      if (removed[rot[i]] || on_contour[rot[i]]) {
        throw ConstructionError("schnyder_wood: contour invariant broken at vertex " + std::to_string(v));
      }
      inner.push_back(rot[i]);
    }

    removed[v] = true;
    on_contour[v] = false;
    ++peeled;
    for (const auto w : rot) --outer_count[w];
    if (v != r2) {
      wood.full_parent[v][0] = l;
      wood.full_parent[v][1] = r;
    }
    Vertex prev = l;
    for (const auto u : inner) {
      wood.full_parent[u][2] = v;
      join_contour(u);
      right[prev] = u;
      left[u] = prev;
      prev = u;
    }
    right[prev] = r;
    left[r] = prev;

    candidates.push_back(l);
    candidates.push_back(r);
    candidates.insert(candidates.end(), inner.begin(), inner.end());
  }
  if (peeled != n - 2) throw ConstructionError("schnyder_wood: peeling stopped early");

  wood.parent = wood.full_parent;
  for (Vertex v = 0; v < n; ++v) {
    for (auto& p : wood.parent[v]) {
      if (p && tri.is_auxiliary(v, *p)) p.reset();
    }
  }
  for (int c = 0; c < 3; ++c) {
    wood.root_edge_present[c] = !tri.is_auxiliary(wood.roots[(c + 1) % 3], wood.roots[c]);
  }
  return wood;
}

namespace {

/// Parent pointers of one color form a forest.
bool acyclic(const std::vector<std::optional<Vertex>>& next) {
  const std::size_t n = next.size();
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on the current chain, 2 done
  std::vector<Vertex> chain;
  for (Vertex s = 0; s < n; ++s) {
    chain.clear();
    std::optional<Vertex> v = s;
    while (v && state[*v] == 0) {
      state[*v] = 1;
      chain.push_back(*v);
      v = next[*v];
    }
    if (v && state[*v] == 1) return false;
    for (const auto c : chain) state[c] = 2;
  }
  return true;
}

}  // namespace

std::vector<std::string> check_wood(const PlanarEmbedding& tri, const SchnyderWood& wood) {
  std::vector<std::string> violations;
  const std::size_t n = tri.size();
  if (wood.size() != n || wood.full_parent.size() != n) {
    violations.push_back("wood size does not match the map");
    return violations;
  }
  int orientation = 0;
  for (Vertex v = 0; v < n; ++v) {
    const auto& fp = wood.full_parent[v];
    if (wood.is_root(v)) {
      if (fp[0] || fp[1] || fp[2]) violations.push_back("root " + std::to_string(v) + " has a parent");
      continue;
    }
    if (!fp[0] || !fp[1] || !fp[2]) {
      violations.push_back("internal vertex " + std::to_string(v) + " lacks a parent");
      continue;
    }
    for (int c = 0; c < 3; ++c) {
      if (!tri.graph.adjacent(v, *fp[c])) {
        violations.push_back("parent of " + std::to_string(v) + " is not a neighbor");
      }
      const bool aux = tri.is_auxiliary(v, *fp[c]);
      if (wood.parent[v][c] != (aux ? std::nullopt : fp[c])) {
        violations.push_back("restricted parent of " + std::to_string(v) + " is inconsistent");
      }
    }
    // Label every incident edge: out color c -> c, incoming color c -> 3 + c.
    const auto& rot = tri.rotation[v];
    std::vector<int> label(rot.size(), -1);
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const Vertex w = rot[i];
      for (int c = 0; c < 3; ++c) {
        if (fp[c] == w) label[i] = c;
        if (!wood.is_root(w) && wood.full_parent[w][c] == v) {
          if (label[i] != -1) violations.push_back("edge oriented twice at " + std::to_string(v));
          label[i] = 3 + c;
        }
      }
      if (label[i] == -1) violations.push_back("unoriented edge at " + std::to_string(v));
    }
    const auto start = static_cast<std::size_t>(std::find(label.begin(), label.end(), 0) - label.begin());
    std::vector<int> cyc;
    for (std::size_t i = 0; i < label.size(); ++i) cyc.push_back(label[(start + i) % label.size()]);
    const auto pos1 = std::find(cyc.begin(), cyc.end(), 1) - cyc.begin();
    const auto pos2 = std::find(cyc.begin(), cyc.end(), 2) - cyc.begin();
    const int sign = pos1 < pos2 ? 1 : -1;
    if (orientation == 0) orientation = sign;
    if (sign != orientation) violations.push_back("color order flips at " + std::to_string(v));
    // Incoming edges between two outgoing edges carry the third color.
    int current_out = 0, next_out = sign == 1 ? 1 : 2;
    for (const auto lab : cyc) {
      if (lab < 3) {
        current_out = lab;
        next_out = sign == 1 ? (lab + 1) % 3 : (lab + 2) % 3;
        continue;
      }
      if (lab - 3 != 3 - current_out - next_out) {
        violations.push_back("incoming color out of sector at " + std::to_string(v));
        break;
      }
    }
  }
  for (int c = 0; c < 3; ++c) {
    std::vector<std::optional<Vertex>> full(n), restricted(n);
    for (Vertex v = 0; v < n; ++v) {
      full[v] = wood.full_parent[v][c];
      restricted[v] = wood.out(v, c);
    }
    full[wood.roots[(c + 1) % 3]] = wood.roots[c];
    if (!acyclic(full)) violations.push_back("color " + std::to_string(c) + " has a cycle");
    if (!acyclic(restricted)) violations.push_back("restricted color " + std::to_string(c) + " has a cycle");
  }
  return violations;
}

// split and head-to-head closure ---------------------------------------------------

SplitResult split_graph(const Graph& g, const SchnyderWood& wood) {
  const std::size_t n = g.size();
  if (wood.size() != n) throw InputError("split_graph: wood does not match the graph");

  std::vector<std::array<bool, 3>> incoming(n, {false, false, false});
  for (Vertex u = 0; u < n; ++u) {
    for (int c = 0; c < 3; ++c) {
      if (wood.parent[u][c]) incoming[*wood.parent[u][c]][c] = true;
    }
  }
  SplitResult out;
  out.origin.resize(n);
  for (Vertex v = 0; v < n; ++v) out.origin[v] = v;
  std::vector<std::array<Vertex, 3>> copy(n);
  for (Vertex s = 0; s < n; ++s) {
    for (int c = 0; c < 3; ++c) {
      if (incoming[s][c]) {
        copy[s][c] = static_cast<Vertex>(out.origin.size());
        out.origin.push_back(s);
      } else {
        copy[s][c] = s;  // excluded copy: its role falls back to s
      }
    }
  }
  GraphBuilder b(out.origin.size(), SelfLoops::None);
  for (Vertex s = 0; s < n; ++s) {
    for (int c = 0; c < 3; ++c) {
      if (incoming[s][c]) b.add_edge(copy[s][c], s);
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    for (int c = 0; c < 3; ++c) {
      const auto v = wood.parent[u][c];
      if (!v) continue;
      const Vertex target = copy[*v][c];
      b.add_edge(copy[u][(c + 2) % 3], target);
      b.add_edge(copy[u][(c + 1) % 3], target);
    }
  }
  for (int c = 0; c < 3; ++c) {
    const Vertex v = wood.roots[(c + 1) % 3], u = wood.roots[c];
    if (!wood.root_edge_present[c] || !g.adjacent(u, v)) {
      out.missing_root_edges.push_back(c);
      continue;
    }
    b.add_edge(copy[v][(c + 2) % 3], u);
    b.add_edge(copy[v][(c + 1) % 3], u);
  }
  out.graph = std::move(b).build();
  return out;
}

HeadToHead head_to_head_closure(const Graph& g, const SchnyderWood& wood) {
  const std::size_t n = g.size();
  if (wood.size() != n) throw InputError("head_to_head_closure: wood does not match the graph");
  std::array<GraphBuilder, 3> per{GraphBuilder(n), GraphBuilder(n), GraphBuilder(n)};
  GraphBuilder all(n);
  for (Vertex w = 0; w < n; ++w) {
    for (int c = 0; c < 3; ++c) {
      const auto a = wood.out(w, (c + 1) % 3);
      const auto b = wood.out(w, (c + 2) % 3);
      if (a && b) {
        per[c].add_edge(*a, *b);
        all.add_edge(*a, *b);
      }
    }
  }
  HeadToHead out;
  for (int c = 0; c < 3; ++c) out.per_color[c] = std::move(per[c]).build();
  out.combined = std::move(all).build();
  return out;
}

TaxonomyCheck check_path_taxonomy(const Graph& g, const SchnyderWood& wood, const Graph& closure) {
  const std::size_t n = g.size();
  TaxonomyCheck out;
  std::vector<std::vector<Vertex>> parents(n);
  for (Vertex v = 0; v < n; ++v) {
    parents[v] = wood.out_neighbors(v);
    std::sort(parents[v].begin(), parents[v].end());
  }
  auto is_parent = [&](Vertex v, Vertex p) {
    return std::binary_search(parents[v].begin(), parents[v].end(), p);
  };
  std::vector<std::uint32_t> mark(n, kInfiniteDistance);
  for (Vertex x = 0; x < n; ++x) {
    mark[x] = x;
    for (const auto v : g.neighbors(x)) mark[v] = x;
    for (const auto v : g.neighbors(x)) {
      for (const auto y : g.neighbors(v)) {
        if (y <= x || mark[y] == x) continue;
        mark[y] = x;  // y at distance exactly 2; visit once
        ++out.distance_two_pairs;
        bool covered = closure.adjacent(x, y);
        for (const auto p : parents[x]) covered = covered || is_parent(p, y) || is_parent(y, p);
        for (const auto p : parents[y]) covered = covered || is_parent(p, x);
        if (!covered) {
          ++out.uncovered;
          if (!out.witness) out.witness = Edge{x, y};
        }
      }
    }
  }
  return out;
}

// Generator ------------------------------------------------------------------------

PlanarEmbedding stacked_triangulation(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw InputError("stacked_triangulation: n must be at least 3");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Vertex>> rotation(n);
  rotation[0] = {1, 2};
  rotation[1] = {2, 0};
  rotation[2] = {0, 1};
  // Inner faces as traced triples (a, b, c): b's rotation has c right after a.
  std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}};
  for (Vertex v = 3; v < n; ++v) {
    const std::size_t f = std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(rng);
    const auto [a, b, c] = faces[f];
    insert_after(rotation[b], a, v);
    insert_after(rotation[c], b, v);
    insert_after(rotation[a], c, v);
    rotation[v] = {a, c, b};
    faces[f] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({c, a, v});
  }
  return PlanarEmbedding::from_rotation(std::move(rotation), {0, 2, 1});
}

}  // namespace smplab
