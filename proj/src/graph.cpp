#include "smplab/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "smplab/error.hpp"

namespace smplab {

const char* to_string(SelfLoops policy) {
  switch (policy) {
    case SelfLoops::All: return "all";
    case SelfLoops::None: return "none";
    case SelfLoops::Explicit: return "explicit";
  }
  return "none";
}

SelfLoops self_loops_from_string(std::string_view name) {
  if (name == "all") return SelfLoops::All;
  if (name == "none") return SelfLoops::None;
  if (name == "explicit") return SelfLoops::Explicit;
  throw InputError("unknown self-loop policy '" + std::string(name) + "'");
}

// Graph ----------------------------------------------------------------------

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, SelfLoops policy,
                        std::span<const Vertex> loops) {
  if (!loops.empty() && policy != SelfLoops::Explicit) {
    throw InputError("explicit loops given for a graph whose policy is not 'explicit'");
  }
  GraphBuilder builder(n, policy);
  std::vector<Edge> seen;
  seen.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop listed as an edge; use the loop list");
    seen.emplace_back(std::min(u, v), std::max(u, v));
    builder.add_edge(u, v);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InputError("duplicate edge");
  }
  for (const auto v : loops) {
    if (v >= n) throw InputError("loop vertex out of range");
    builder.add_loop(v);
  }
  return std::move(builder).build();
}

void Graph::check_vertex(Vertex v) const {
  if (v >= size()) throw InputError("vertex " + std::to_string(v) + " out of range");
}

bool Graph::has_loop(Vertex v) const {
  check_vertex(v);
  return loop_[v];
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return loop_[u];
  if (!dense_.empty()) {
    const std::size_t bit = static_cast<std::size_t>(u) * size() + v;
    return (dense_[bit / 64] >> (bit % 64)) & 1u;
  }
  const auto& row = neighbors_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return neighbors_[v];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u) {
    for (const auto v : neighbors_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Vertex> Graph::loops() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < size(); ++v) {
    if (loop_[v]) out.push_back(v);
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.neighbors_ == b.neighbors_ && a.loop_ == b.loop_;
}

GraphBuilder::GraphBuilder(std::size_t n, SelfLoops policy)
    : adjacency_(n), loop_(n, policy == SelfLoops::All), policy_(policy) {}

GraphBuilder& GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u >= size() || v >= size()) throw InputError("edge endpoint out of range");
  if (u == v) return add_loop(u);
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  return *this;
}

GraphBuilder& GraphBuilder::add_loop(Vertex v) {
  if (v >= size()) throw InputError("loop vertex out of range");
  if (policy_ == SelfLoops::Explicit) loop_[v] = true;
  return *this;
}

Graph GraphBuilder::build() && {
  Graph g;
  g.policy_ = policy_;
  g.loop_ = std::move(loop_);
  g.neighbors_ = std::move(adjacency_);
  std::size_t degree_sum = 0;
  for (auto& row : g.neighbors_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    degree_sum += row.size();
  }
  g.edge_count_ = degree_sum / 2;
  const std::size_t n = g.size();
  if (n <= Graph::kDenseLimit) {
    g.dense_.assign((n * n + 63) / 64, 0);
    for (Vertex u = 0; u < n; ++u) {
      for (const auto v : g.neighbors_[u]) {
        const std::size_t bit = static_cast<std::size_t>(u) * n + v;
        g.dense_[bit / 64] |= std::uint64_t{1} << (bit % 64);
      }
    }
  }
  return g;
}

// VertexMap / Orientation ------------------------------------------------------

bool VertexMap::valid() const {
  return std::all_of(image.begin(), image.end(), [&](Vertex v) { return v < target_size; });
}

bool VertexMap::injective() const {
  auto sorted = image;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

VertexMap identity_map(std::size_t n) {
  VertexMap m{n, std::vector<Vertex>(n)};
  for (Vertex v = 0; v < n; ++v) m.image[v] = v;
  return m;
}

VertexMap compose(const VertexMap& first, const VertexMap& second) {
  if (first.target_size != second.domain_size()) {
    throw InputError("compose: codomain of first map is not the domain of second");
  }
  VertexMap out{second.target_size, std::vector<Vertex>(first.domain_size())};
  for (std::size_t v = 0; v < first.domain_size(); ++v) {
    out.image[v] = second.image.at(first.image[v]);
  }
  return out;
}

bool Orientation::covers_exactly(const Graph& g) const {
  if (parents.size() != g.size()) return false;
  std::size_t listed = 0;
  for (Vertex u = 0; u < g.size(); ++u) {
    if (parents[u].size() > max_outdegree) return false;
    for (const auto p : parents[u]) {
      if (p == u || !g.adjacent(u, p)) return false;
      if (std::find(parents[p].begin(), parents[p].end(), u) != parents[p].end()) return false;
      ++listed;
    }
  }
  return listed == g.edge_count();
}

// Distances ------------------------------------------------------------------

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  if (source >= g.size()) throw InputError("bfs source out of range");
  std::vector<std::uint32_t> dist(g.size(), kInfiniteDistance);
  std::vector<Vertex> queue;
  queue.reserve(g.size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (const auto v : g.neighbors(u)) {
      if (dist[v] == kInfiniteDistance) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::uint32_t bfs_distance(const Graph& g, Vertex x, Vertex y) {
  if (x >= g.size() || y >= g.size()) throw InputError("bfs_distance: vertex out of range");
  if (x == y) return 0;
  return bfs_distances(g, x)[y];
}

std::vector<std::uint32_t> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> table(n * n);
  for (Vertex s = 0; s < n; ++s) {
    const auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), table.begin() + static_cast<std::ptrdiff_t>(s * n));
  }
  return table;
}

std::uint32_t diameter(const Graph& g) {
  std::uint32_t best = 0;
  for (Vertex s = 0; s < g.size(); ++s) {
    for (const auto d : bfs_distances(g, s)) {
      if (d != kInfiniteDistance) best = std::max(best, d);
    }
  }
  return best;
}

Graph k_closure(const Graph& g, std::uint32_t k) {
  if (k == 0) throw InputError("k_closure: k must be at least 1");
  const std::size_t n = g.size();
  GraphBuilder builder(n, SelfLoops::All);
  std::vector<std::uint32_t> dist(n, kInfiniteDistance);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (dist[u] == k) continue;
      for (const auto v : g.neighbors(u)) {
        if (dist[v] == kInfiniteDistance) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (const auto v : queue) {
      if (v > s) builder.add_edge(s, v);
      dist[v] = kInfiniteDistance;
    }
  }
  return std::move(builder).build();
}

// Equivalence reduction and embeddings ----------------------------------------

namespace {

std::vector<Vertex> adjacency_row(const Graph& g, Vertex u) {
  auto row = g.neighbors(u);
  if (g.has_loop(u)) row.insert(std::lower_bound(row.begin(), row.end(), u), u);
  return row;
}

}  // namespace

Reduction equiv_reduction(const Graph& g) {
  const std::size_t n = g.size();
  std::map<std::vector<Vertex>, Vertex> class_of_row;
  VertexMap quotient{0, std::vector<Vertex>(n)};
  std::vector<Vertex> representative;
  for (Vertex u = 0; u < n; ++u) {
    const auto [it, inserted] =
        class_of_row.emplace(adjacency_row(g, u), static_cast<Vertex>(representative.size()));
    if (inserted) representative.push_back(u);
    quotient.image[u] = it->second;
  }
  quotient.target_size = representative.size();

  // Twins have identical rows, so adjacency of classes is adjacency of
  // their representatives.
  GraphBuilder builder(representative.size(), SelfLoops::Explicit);
  for (Vertex c = 0; c < representative.size(); ++c) {
    const Vertex u = representative[c];
    if (g.has_loop(u)) builder.add_loop(c);
    for (const auto w : g.neighbors(u)) builder.add_edge(c, quotient.image[w]);
  }
  return {std::move(builder).build(), std::move(quotient)};
}

bool is_embedding(const Graph& g, const Graph& h, const VertexMap& phi) {
  if (phi.domain_size() != g.size() || phi.target_size != h.size()) {
    throw InputError("is_embedding: map dimensions do not match the graphs");
  }
  if (!phi.valid()) throw InputError("is_embedding: map image out of range");
  for (Vertex u = 0; u < g.size(); ++u) {
    for (Vertex v = u; v < g.size(); ++v) {
      if (g.adjacent(u, v) != h.adjacent(phi.image[u], phi.image[v])) return false;
    }
  }
  return true;
}

namespace {

bool extend_embedding(const Graph& g, const Graph& h, bool injective, std::vector<Vertex>& image,
                      std::vector<bool>& used) {
  const Vertex v = static_cast<Vertex>(image.size());
  if (v == g.size()) return true;
  for (Vertex c = 0; c < h.size(); ++c) {
    if (injective && used[c]) continue;
    if (g.has_loop(v) != h.has_loop(c)) continue;
    bool consistent = true;
    for (Vertex u = 0; u < v && consistent; ++u) {
      consistent = g.adjacent(u, v) == h.adjacent(image[u], c);
    }
    if (!consistent) continue;
    image.push_back(c);
    used[c] = true;
    if (extend_embedding(g, h, injective, image, used)) return true;
    used[c] = false;
    image.pop_back();
  }
  return false;
}

}  // namespace

std::optional<VertexMap> find_embedding(const Graph& g, const Graph& h,
                                        const EmbeddingSearch& search) {
  if (g.size() > search.cap || h.size() > search.cap) {
    throw CapacityError("find_embedding: graph larger than the brute-force cap of " +
                        std::to_string(search.cap));
  }
  std::vector<Vertex> image;
  image.reserve(g.size());
  std::vector<bool> used(h.size(), false);
  if (!extend_embedding(g, h, search.injective, image, used)) return std::nullopt;
  return VertexMap{h.size(), std::move(image)};
}

bool is_induced_subgraph(const Graph& g, const Graph& h, std::size_t cap) {
  if (g.size() > h.size()) return false;
  return find_embedding(g, h, {cap, true}).has_value();
}

bool isomorphic(const Graph& g, const Graph& h, std::size_t cap) {
  return g.size() == h.size() && g.edge_count() == h.edge_count() &&
         find_embedding(g, h, {cap, true}).has_value();
}

// Orientations -----------------------------------------------------------------

Orientation degeneracy_orientation(const Graph& g) {
  const std::size_t n = g.size();
  Orientation out;
  out.parents.resize(n);
  if (n == 0) return out;

  std::vector<std::size_t> degree(n);
  std::size_t max_degree = 0;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }
  // Bucket queue with lazy deletion.
  std::vector<std::vector<Vertex>> buckets(max_degree + 1);
  for (Vertex v = n; v-- > 0;) buckets[degree[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::size_t lowest = 0;
  for (std::size_t step = 0; step < n; ++step) {
    Vertex v = 0;
    for (;;) {
      while (buckets[lowest].empty()) ++lowest;
      v = buckets[lowest].back();
      buckets[lowest].pop_back();
      if (!removed[v] && degree[v] == lowest) break;
    }
    removed[v] = true;
    for (const auto w : g.neighbors(v)) {
      if (removed[w]) continue;
      out.parents[v].push_back(w);
      --degree[w];
      buckets[degree[w]].push_back(w);
      if (degree[w] < lowest) lowest = degree[w];
    }
    out.max_outdegree = std::max(out.max_outdegree, out.parents[v].size());
  }
  return out;
}

std::size_t degeneracy(const Graph& g) { return degeneracy_orientation(g).max_outdegree; }

}  // namespace smplab
