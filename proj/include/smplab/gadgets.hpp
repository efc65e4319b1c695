#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include "smplab/graph.hpp"
#include "smplab/lattice.hpp"
#include "smplab/protocol.hpp"

namespace smplab {

enum class GadgetFamily { Modular, Arboricity2, Interval, AllGraphs };

const char* to_string(GadgetFamily f);
GadgetFamily gadget_family_from_string(std::string_view name);

/*
 * Source graph G embedded into a product whose distance-2 (or adjacency)
 * structure restricted to the injection image reproduces G.
 */
struct GadgetInstance {
  GadgetFamily family = GadgetFamily::AllGraphs;
  Graph source;
  /// Product graph; the cover graph when the product is a lattice.
  Graph product;
  /// Product order and lattice, kept up to Lattice::kMaxElements elements.
  std::optional<Poset> order;
  std::optional<Lattice> lattice;
  /// V(source) -> V(product) (poset ids, not Lattice ids).
  VertexMap injection;
  /// Elements before padding (modular gadget only).
  std::size_t unpadded_size = 0;
  /// The bound 2 + |E| + |E|² quoted for the modular construction.
  std::size_t quoted_bound = 0;
};

/// Size of the construction for K_n, the largest over n-vertex sources.
std::size_t modular_padded_size(std::size_t n);

/*
 * Candidate modular lattice M with G an induced subgraph of cov(M)²: V as
 * incomparable elements, a_e < u, v < b_e per edge e = {u, v}, c_{e,e'} with
 * a_e, a_e' < c < b_e, b_e' per disjoint edge pair, a bottom below every a_e
 * and isolated vertex and a top above every b_e and isolated vertex, then a
 * chain of new minima up to modular_padded_size(n). Builds the product and
 * its order without checking it; requires all self-loops and throws
 * CapacityError above `max_size`.
 */
GadgetInstance modular_construction(const Graph& g, std::size_t max_size = 1u << 20);

/// modular_construction() plus its checks: the order must be a modular
/// lattice (checked up to Lattice::kMaxElements) and cov(M)² restricted to V
/// must equal G. Throws ConstructionError naming the failed check.
GadgetInstance modular_gadget(const Graph& g, std::size_t max_size = 1u << 20);

/// G plus one vertex per vertex pair, joined to both ends iff the pair is an
/// edge. Requires no self-loops.
GadgetInstance arboricity2_gadget(const Graph& g);

/// dist_H(φ(u), φ(v)) <= 2 ⟺ G(u, v) (or u = v), for all u, v.
bool check_distance_two_injection(const Graph& g, const Graph& h, const VertexMap& phi);
/// First pair violating the equivalence above.
std::optional<Edge> first_distance_two_mismatch(const Graph& g, const Graph& h, const VertexMap& phi);

/// Interval graph on [1, i] (ids 0..n-1) and [i, n] (ids n..2n-1), i ∈ [n].
struct IntervalInstance {
  std::size_t n = 0;
  Graph graph;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> intervals;

  /// The two adjacency queries for Greater-Than on x, y ∈ [1, n].
  std::pair<Edge, Edge> queries(std::uint32_t x, std::uint32_t y) const;
  /// x < y decided from the two adjacency answers.
  static bool decide_less(bool first, bool second) { return !(first && second); }
};

IntervalInstance interval_gt_instance(std::size_t n);

/// Uniform random graph with all self-loops.
Graph random_all_loops_graph(std::size_t n, std::mt19937_64& rng, double p = 0.5);

/*
 * Fixed 8-bit adjacency protocol for arbitrary graphs. Vertices are hashed
 * into 4 buckets; a vertex sends its bucket, one bit per bucket saying whether
 * it is adjacent to a strict majority of it (ties by coin), and a coin. The
 * referee takes the majority of the two bucket bits and the XOR of the coins.
 */
class BucketMajorityProtocol final : public Protocol {
 public:
  static constexpr std::size_t kBudgetBits = 8;
  static constexpr std::size_t kBuckets = 4;

  explicit BucketMajorityProtocol(const Graph& g);

  std::string name() const override { return "bucket-majority"; }
  std::size_t size() const override { return graph_.size(); }
  std::size_t cost_bits() const override { return kBudgetBits; }
  BitString encode_a(RandomTape& tape, Vertex x) const override;
  std::shared_ptr<const Referee> referee() const override { return referee_; }
  bool expected(Vertex x, Vertex y) const override { return graph_.adjacent(x, y); }

 private:
  Graph graph_;
  std::shared_ptr<const Referee> referee_;
};

std::shared_ptr<const Referee> make_bucket_majority_referee();

}  // namespace smplab
