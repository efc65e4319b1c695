#include "smplab/gadgets.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "smplab/error.hpp"
#include "smplab/random.hpp"

namespace smplab {

namespace {

constexpr std::uint32_t kBucketStream = 41;
constexpr std::uint32_t kCoinStream = 42;
constexpr std::uint32_t kTieStream = 43;

std::size_t choose2(std::size_t x) { return x * (x - (x > 0 ? 1 : 0)) / 2; }

/// Pairs of disjoint edges in K_r.
std::size_t disjoint_edge_pairs_complete(std::size_t r) {
  const std::size_t e = choose2(r);
  return choose2(e) - r * choose2(r > 0 ? r - 1 : 0);
}

/// Vertices within distance 2 of `source`, as a flag vector.
std::vector<bool> ball_two(const Graph& h, Vertex source) {
  std::vector<bool> seen(h.size(), false);
  seen[source] = true;
  for (const auto w : h.neighbors(source)) {
    seen[w] = true;
    for (const auto z : h.neighbors(w)) seen[z] = true;
  }
  return seen;
}

class BucketMajorityReferee final : public Referee {
 public:
  std::string name() const override { return "bucket-majority"; }
  RefereeParams params() const override { return {}; }
  std::size_t message_bits() const override { return BucketMajorityProtocol::kBudgetBits; }

  Verdict decide(const BitString& a, const BitString& b) const override {
    if (a.size() != message_bits() || b.size() != message_bits()) {
      throw InputError("bucket-majority referee: bad message length");
    }
    const auto bucket_a = a.read(0, 2), bucket_b = b.read(0, 2);
    const int votes = static_cast<int>(a.bit(2 + bucket_b)) + static_cast<int>(b.bit(2 + bucket_a)) +
                      static_cast<int>(std::popcount(a.read(6, 2) ^ b.read(6, 2)) & 1);
    return votes >= 2 ? Verdict::accept() : Verdict::reject();
  }
};

}  // namespace

const char* to_string(GadgetFamily f) {
  switch (f) {
    case GadgetFamily::Modular: return "modular";
    case GadgetFamily::Arboricity2: return "arboricity2";
    case GadgetFamily::Interval: return "interval";
    case GadgetFamily::AllGraphs: return "allgraphs";
  }
  return "?";
}

GadgetFamily gadget_family_from_string(std::string_view name) {
  for (const auto f : {GadgetFamily::Modular, GadgetFamily::Arboricity2, GadgetFamily::Interval,
                       GadgetFamily::AllGraphs}) {
    if (name == to_string(f)) return f;
  }
  throw InputError("unknown gadget family '" + std::string(name) + "'");
}

std::size_t modular_padded_size(std::size_t n) {
  if (n == 0) throw InputError("modular gadget: empty source");
  const std::size_t e = choose2(n);
  return n + 2 + 2 * e + disjoint_edge_pairs_complete(n);
}

bool check_distance_two_injection(const Graph& g, const Graph& h, const VertexMap& phi) {
  return !first_distance_two_mismatch(g, h, phi).has_value();
}

std::optional<Edge> first_distance_two_mismatch(const Graph& g, const Graph& h, const VertexMap& phi) {
  if (phi.domain_size() != g.size() || phi.target_size != h.size() || !phi.valid()) {
    throw InputError("distance-two check: map does not match the graphs");
  }
  for (Vertex u = 0; u < g.size(); ++u) {
    const auto ball = ball_two(h, phi(u));
    for (Vertex v = 0; v < g.size(); ++v) {
      if (ball[phi(v)] != (u == v || g.adjacent(u, v))) return Edge{u, v};
    }
  }
  return std::nullopt;
}

GadgetInstance modular_construction(const Graph& g, std::size_t max_size) {
  const std::size_t n = g.size();
  if (n == 0) throw InputError("modular gadget: empty source");
  for (Vertex v = 0; v < n; ++v) {
    if (!g.adjacent(v, v)) throw PreconditionError("modular gadget: source must have all self-loops");
  }
  const auto edges = g.edges();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      if (a != c && a != d && b != c && b != d) pairs.emplace_back(i, j);
    }
  }
  const std::size_t target = modular_padded_size(n);
  if (target > max_size) {
    throw CapacityError("modular gadget: " + std::to_string(target) + " elements exceed the cap " +
                        std::to_string(max_size));
  }

  // Layout: V, a per edge, b per edge, c per disjoint pair, bottom, top, padding.
  const std::size_t e_count = edges.size();
  const auto a_id = [&](std::size_t i) { return static_cast<Element>(n + i); };
  const auto b_id = [&](std::size_t i) { return static_cast<Element>(n + e_count + i); };
  const auto c_base = n + 2 * e_count;
  const auto bottom = static_cast<Element>(c_base + pairs.size());
  const auto top = bottom + 1;
  const std::size_t unpadded = static_cast<std::size_t>(top) + 1;

  std::vector<Cover> covers;
  for (std::size_t i = 0; i < e_count; ++i) {
    covers.emplace_back(bottom, a_id(i));
    covers.emplace_back(b_id(i), top);
    for (const auto v : {edges[i].first, edges[i].second}) {
      covers.emplace_back(a_id(i), v);
      covers.emplace_back(v, b_id(i));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != 0) continue;
    covers.emplace_back(bottom, v);
    covers.emplace_back(v, top);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto c = static_cast<Element>(c_base + p);
    for (const auto i : {pairs[p].first, pairs[p].second}) {
      covers.emplace_back(a_id(i), c);
      covers.emplace_back(c, b_id(i));
    }
  }
  Element below = bottom;
  for (auto pad = static_cast<Element>(unpadded); pad < target; ++pad) {
    covers.emplace_back(pad, below);
    below = pad;
  }

  GadgetInstance out;
  out.family = GadgetFamily::Modular;
  out.source = g;
  out.injection = identity_map(n);
  out.injection.target_size = target;
  out.unpadded_size = unpadded;
  out.quoted_bound = 2 + e_count + e_count * e_count;
  GraphBuilder cover(target);
  for (const auto& [x, y] : covers) cover.add_edge(x, y);
  out.product = std::move(cover).build();
  if (target <= Lattice::kMaxElements) out.order = Poset::from_covers(target, covers);
  return out;
}

GadgetInstance modular_gadget(const Graph& g, std::size_t max_size) {
  auto out = modular_construction(g, max_size);
  if (out.product.size() <= Lattice::kMaxElements) {
    out.lattice = build_lattice(*out.order);
    if (classify(*out.lattice) == LatticeClass::Neither) {
      throw ConstructionError("modular gadget: product is not modular");
    }
  }
  if (const auto bad = first_distance_two_mismatch(g, out.product, out.injection)) {
    throw ConstructionError("modular gadget: cov(M)^2 disagrees with the source on (" +
                            std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
  }
  return out;
}

GadgetInstance arboricity2_gadget(const Graph& g) {
  const std::size_t n = g.size();
  for (Vertex v = 0; v < n; ++v) {
    if (g.has_loop(v)) throw PreconditionError("arboricity-2 gadget: source must have no self-loops");
  }
  GraphBuilder b(n + choose2(n));
  auto pair_vertex = static_cast<Vertex>(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++pair_vertex) {
      if (!g.adjacent(u, v)) continue;
      b.add_edge(u, pair_vertex);
      b.add_edge(v, pair_vertex);
    }
  }
  GadgetInstance out;
  out.family = GadgetFamily::Arboricity2;
  out.source = g;
  out.product = std::move(b).build();
  out.injection = identity_map(n);
  out.injection.target_size = out.product.size();
  if (!check_distance_two_injection(g, out.product, out.injection)) {
    throw ConstructionError("arboricity-2 gadget: source is not an induced subgraph of the square");
  }
  return out;
}

std::pair<Edge, Edge> IntervalInstance::queries(std::uint32_t x, std::uint32_t y) const {
  if (x < 1 || y < 1 || x > n || y > n) throw InputError("interval instance: query outside [1, n]");
  const Vertex prefix_x = x - 1;
  const Vertex prefix_y = y - 1;
  const auto suffix_y = static_cast<Vertex>(n + y - 1);
  return {{prefix_x, prefix_y}, {prefix_x, suffix_y}};
}

IntervalInstance interval_gt_instance(std::size_t n) {
  if (n < 2) throw InputError("interval instance: n must be at least 2");
  IntervalInstance out;
  out.n = n;
  const auto top = static_cast<std::uint32_t>(n);
  for (std::uint32_t i = 1; i <= top; ++i) out.intervals.emplace_back(1, i);
  for (std::uint32_t i = 1; i <= top; ++i) out.intervals.emplace_back(i, top);
  GraphBuilder b(2 * n, SelfLoops::All);
  for (Vertex u = 0; u < 2 * n; ++u) {
    for (Vertex v = u + 1; v < 2 * n; ++v) {
      const auto [lu, ru] = out.intervals[u];
      const auto [lv, rv] = out.intervals[v];
      if (std::max(lu, lv) <= std::min(ru, rv)) b.add_edge(u, v);
    }
  }
  out.graph = std::move(b).build();
  return out;
}

Graph random_all_loops_graph(std::size_t n, std::mt19937_64& rng, double p) {
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n, SelfLoops::All);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

std::shared_ptr<const Referee> make_bucket_majority_referee() {
  return std::make_shared<BucketMajorityReferee>();
}

BucketMajorityProtocol::BucketMajorityProtocol(const Graph& g)
    : graph_(g), referee_(make_bucket_majority_referee()) {}

BitString BucketMajorityProtocol::encode_a(RandomTape& tape, Vertex x) const {
  std::array<std::size_t, kBuckets> members{}, hits{};
  for (Vertex v = 0; v < size(); ++v) {
    const auto j = tape.uniform(kBucketStream, v, 0, kBuckets);
    ++members[j];
    if (graph_.adjacent(x, v)) ++hits[j];
  }
  BitString msg;
  msg.push(tape.uniform(kBucketStream, x, 0, kBuckets), 2);
  for (std::size_t j = 0; j < kBuckets; ++j) {
    const bool bit = 2 * hits[j] == members[j] ? tape.uniform(kTieStream, x, static_cast<std::uint32_t>(j), 2) != 0
                                               : 2 * hits[j] > members[j];
    msg.push_bit(bit);
  }
  msg.push(tape.uniform(kCoinStream, x, 0, 4), 2);
  return msg;
}

}  // namespace smplab
