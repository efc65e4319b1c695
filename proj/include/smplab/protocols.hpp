#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "smplab/lattice.hpp"
#include "smplab/planar.hpp"
#include "smplab/protocol.hpp"

namespace smplab {

/// Sketch sizes of the distributive-lattice protocols.
struct SketchParams {
  std::uint32_t k = 1;
  double eps = 1.0 / 3.0;
  /// Length of the index vector a(v).
  std::size_t m = 0;
  /// Bits per fingerprint vector (weak protocol only).
  unsigned q = 0;
  /// Independent rounds (universal protocol only).
  std::uint32_t r = 1;

  /// m = ⌈(k+2)²/eps⌉, q = ⌈log2(1/eps) + log2 Σ_{i<=k} C(m,i)⌉.
  static SketchParams weak(std::uint32_t k, double eps);
  /// m = ⌈3(k+2)²/2⌉, r = ⌈log3(1/eps)⌉.
  static SketchParams universal(std::uint32_t k, double eps);
};

/// ⌈x⌉ that ignores floating-point noise just above an integer.
std::uint64_t ceil_tolerant(double x);

// Distributive lattices ------------------------------------------------------------

/*
 * Weak-model k-distance protocol: every join-irreducible j gets a random
 * index i_j in [m], a(v) is the parity vector of the indices of v's downset
 * and ℓ(v) = Σ a(v)_i s_i over F2^q for random s_1..s_m. The referee, who
 * knows S, accepts iff ℓ(x)+ℓ(y) is a sum of at most k elements of S.
 */
class WeakDistributiveProtocol final : public Protocol {
 public:
  static constexpr std::uint64_t kDefaultWorkCap = 50'000'000;

  /// Throws CapacityError when q > 62 or the subset-sum search exceeds
  /// `work_cap` steps per decision.
  WeakDistributiveProtocol(const BirkhoffRep& rep, SketchParams params,
                           std::uint64_t work_cap = kDefaultWorkCap);

  std::string name() const override { return "weak-distributive"; }
  std::size_t size() const override { return members_.size(); }
  std::size_t cost_bits() const override { return params_.q; }
  BitString encode_a(RandomTape& tape, Vertex x) const override;
  std::shared_ptr<const Referee> referee() const override { return nullptr; }
  Verdict weak_decide(RandomTape& tape, const BitString& a, const BitString& b) const override;
  bool expected(Vertex x, Vertex y) const override { return distance(x, y) <= params_.k; }
  bool one_sided() const override { return true; }

  const SketchParams& params() const { return params_; }
  std::uint32_t distance(Vertex x, Vertex y) const;
  /// The referee's vectors S for this tape.
  std::vector<std::uint64_t> draw_vectors(RandomTape& tape) const;
  /// Whether `target` is a sum of at most k entries of `vectors`.
  bool in_k_sums(const std::vector<std::uint64_t>& vectors, std::uint64_t target) const;

 private:
  SketchParams params_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<Bitset> downsets_;
};

/*
 * Universal-model k-distance protocol: r independent rounds, each sending
 * the m-bit parity vector a(v). Accept iff every round has
 * |a(x) XOR a(y)| <= k.
 */
class UniversalDistributiveProtocol final : public Protocol {
 public:
  UniversalDistributiveProtocol(const BirkhoffRep& rep, SketchParams params);

  std::string name() const override { return "universal-distributive"; }
  std::size_t size() const override { return members_.size(); }
  std::size_t cost_bits() const override { return params_.m * params_.r; }
  BitString encode_a(RandomTape& tape, Vertex x) const override;
  std::shared_ptr<const Referee> referee() const override { return referee_; }
  bool expected(Vertex x, Vertex y) const override { return distance(x, y) <= params_.k; }
  bool one_sided() const override { return true; }

  const SketchParams& params() const { return params_; }
  std::uint32_t distance(Vertex x, Vertex y) const;
  /// One round's parity vector, as a list of set indices.
  std::vector<std::uint32_t> index_vector(RandomTape& tape, Vertex x, std::uint32_t round) const;

 private:
  SketchParams params_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<Bitset> downsets_;
  std::shared_ptr<const Referee> referee_;
};

std::shared_ptr<const Referee> make_hamming_referee(std::size_t m, std::uint32_t rounds, std::uint32_t k);

// Trees -------------------------------------------------------------------------------

struct TreeParams {
  std::uint32_t k = 1;
  double eps = 0.1;
  /// Colors; default ⌈6/eps⌉.
  std::optional<std::uint64_t> m;
};

/*
 * k-distance on a rooted tree. Depths are cut into bands of height k; a
 * vertex x sends the colors of its ancestors from x'' (the band root one band
 * up) down to itself. Vertices near the root see a chain of k virtual
 * ancestors above it, colored like real vertices. The referee aligns the two
 * color paths on a matching band root and reads the distance off the longest
 * common prefix.
 */
class TreeDistanceProtocol final : public Protocol {
 public:
  /// Throws InputError unless `tree` is a tree.
  TreeDistanceProtocol(const Graph& tree, Vertex root, TreeParams params);

  std::string name() const override { return "tree-kdist"; }
  std::size_t size() const override { return parent_.size(); }
  std::size_t cost_bits() const override;
  BitString encode_a(RandomTape& tape, Vertex x) const override;
  std::shared_ptr<const Referee> referee() const override { return referee_; }
  bool expected(Vertex x, Vertex y) const override { return distance(x, y) <= params_.k; }
  bool correct(const Verdict& v, Vertex x, Vertex y) const override;

  std::uint64_t colors() const { return m_; }
  std::uint32_t depth(Vertex v) const { return depth_.at(v); }
  std::uint32_t distance(Vertex x, Vertex y) const;

 private:
  Vertex ancestor(Vertex v, std::uint32_t steps) const;

  TreeParams params_;
  std::uint64_t m_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::vector<Vertex>> lift_;
  std::shared_ptr<const Referee> referee_;
};

std::shared_ptr<const Referee> make_tree_referee(std::uint32_t k, unsigned color_bits);

// Bounded out-degree adjacency -----------------------------------------------------

struct ArboricityParams {
  double eps = 0.1;
  /// Colors; default ⌈2·slots/eps⌉.
  std::optional<std::uint64_t> m;
  /// Out-neighbor slots per message; default max(1, max out-degree).
  std::optional<std::size_t> slots;
};

/*
 * Adjacency from an acyclic orientation: a vertex sends its color and its
 * out-neighbors' colors, padding unused slots with its own color. Accept iff
 * one vertex's color appears among the other's slots or the messages are
 * identical.
 */
class ArboricityProtocol final : public Protocol {
 public:
  /// Throws InputError when the orientation does not cover G exactly.
  ArboricityProtocol(const Graph& g, const Orientation& orientation, ArboricityParams params);

  std::string name() const override { return "arboricity"; }
  std::size_t size() const override { return graph_.size(); }
  std::size_t cost_bits() const override { return (1 + slots_) * bit_width_for(m_); }
  BitString encode_a(RandomTape& tape, Vertex x) const override;
  std::shared_ptr<const Referee> referee() const override { return referee_; }
  /// Adjacent, or x = y.
  bool expected(Vertex x, Vertex y) const override { return x == y || graph_.adjacent(x, y); }
  bool one_sided() const override { return true; }

  std::uint64_t colors() const { return m_; }
  std::size_t slots() const { return slots_; }

 private:
  Graph graph_;
  Orientation orientation_;
  std::uint64_t m_;
  std::size_t slots_;
  std::shared_ptr<const Referee> referee_;
};

std::shared_ptr<const Referee> make_slot_referee(unsigned color_bits, std::size_t slots);

// Planar distance two --------------------------------------------------------------

/// Everything the planar protocol needs besides the randomness.
struct PlanarPrecomputation {
  Graph graph;
  SchnyderWood wood;
  Graph closure;
  Orientation closure_orientation;
};

/// Out-degree bound used for the head-to-head closure slots.
inline constexpr std::size_t kClosureSlots = 17;

/// Builds the head-to-head closure and its degeneracy orientation; throws
/// ConstructionError when the orientation exceeds kClosureSlots.
PlanarPrecomputation planar_precompute(const Graph& g, const SchnyderWood& wood);

/*
 * Distance <= 2 on planar graphs. Message: own color, the three Schnyder
 * parents' colors, the nine grandparents' colors (missing ones padded with
 * the color of their child), then an arboricity message over the
 * head-to-head closure with its own coloring.
 */
class PlanarDistanceTwoProtocol final : public Protocol {
 public:
  /// Throws InputError when the precomputation does not match in size.
  PlanarDistanceTwoProtocol(PlanarPrecomputation pre, double eps);

  std::string name() const override { return "planar-dist2"; }
  std::size_t size() const override { return pre_.graph.size(); }
  std::size_t cost_bits() const override;
  BitString encode_a(RandomTape& tape, Vertex x) const override;
  std::shared_ptr<const Referee> referee() const override { return referee_; }
  bool expected(Vertex x, Vertex y) const override { return square_.adjacent(x, y); }
  bool one_sided() const override { return true; }

  std::uint64_t colors() const { return m_; }
  std::uint64_t closure_colors() const { return closure_m_; }

 private:
  PlanarPrecomputation pre_;
  Graph square_;
  std::uint64_t m_;
  std::uint64_t closure_m_;
  std::shared_ptr<const Referee> referee_;
};

std::shared_ptr<const Referee> make_planar_referee(unsigned color_bits, unsigned closure_bits,
                                                   std::size_t closure_slots);

}  // namespace smplab
