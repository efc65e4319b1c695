#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "smplab/bitset.hpp"
#include "smplab/graph.hpp"

namespace smplab {

class Lattice;

using Element = std::uint32_t;
/// (x, y) with x covered by y.
using Cover = std::pair<Element, Element>;

/*
 * Finite partial order given by its cover relation (transitive reduction).
 */
class Poset {
 public:
  Poset() = default;

  /// Validates that the covers are in range, acyclic, and form a transitive
  /// reduction.
  static Poset from_covers(std::size_t n, std::span<const Cover> covers);

  std::size_t size() const { return upper_.size(); }
  const std::vector<Cover>& covers() const { return covers_; }
  const std::vector<Element>& upper_covers(Element x) const { return upper_.at(x); }
  const std::vector<Element>& lower_covers(Element x) const { return lower_.at(x); }

  /// Elements in an order compatible with <.
  std::vector<Element> linear_extension() const;

  /// downsets()[x] = { z : z <= x }.
  std::vector<Bitset> downsets() const;

  static Poset antichain(std::size_t n);
  static Poset chain(std::size_t n);

 private:
  static Poset unchecked(std::size_t n, std::vector<Cover> covers);

  std::vector<Cover> covers_;
  std::vector<std::vector<Element>> upper_;
  std::vector<std::vector<Element>> lower_;

  friend class Lattice;
  friend class LatticeAssembler;
  friend Lattice build_lattice(const Poset& p);
  friend Poset transitive_reduction(std::size_t n, std::span<const Cover> relations);
};

/// Transitive reduction of an acyclic relation (any set of x < y pairs).
Poset transitive_reduction(std::size_t n, std::span<const Cover> relations);

/*
 * Finite lattice with precomputed meet (greatest lower bound, ∧) and join
 * (least upper bound, ∨) tables. Element ids are a linear extension of the
 * order, so 0 is the bottom and size()-1 the top.
 */
class Lattice {
 public:
  static constexpr std::size_t kMaxElements = 4096;

  Lattice() = default;

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }

  Element meet(Element x, Element y) const { return meet_[index(x, y)]; }
  Element join(Element x, Element y) const { return join_[index(x, y)]; }
  bool leq(Element x, Element y) const { return meet(x, y) == x; }
  /// y covers x.
  bool covers(Element x, Element y) const;

  Element bottom() const { return 0; }
  Element top() const { return static_cast<Element>(size() - 1); }

  bool ranked() const { return rank_.has_value(); }
  std::uint32_t rank(Element x) const;

  /// Original element id (in the input poset) of lattice element x.
  Element original_id(Element x) const { return original_.at(x); }

 private:
  std::size_t index(Element x, Element y) const { return static_cast<std::size_t>(x) * size() + y; }

  Poset poset_;
  std::vector<std::uint16_t> meet_;
  std::vector<std::uint16_t> join_;
  Bitset cover_matrix_;
  std::optional<std::vector<std::uint32_t>> rank_;
  std::vector<Element> original_;

  friend Lattice build_lattice(const Poset& p);
  friend class LatticeAssembler;
};

/// Computes meet/join tables from the order; throws ConstructionError naming a
/// pair without a unique glb or lub. Elements are renumbered along a linear
/// extension (see Lattice::original_id). Rank is computed when one exists.
Lattice build_lattice(const Poset& p);

enum class LatticeClass { Distributive, ModularNotDistributive, Neither };

const char* to_string(LatticeClass c);

bool is_upper_semimodular(const Lattice& l);
bool is_lower_semimodular(const Lattice& l);
/// Exhaustive x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) check.
bool satisfies_distributive_law(const Lattice& l);

/// Exhaustive classification. Above `triple_check_limit` elements the
/// distributive law is decided through the Birkhoff representation instead
/// of the O(n^3) triple scan; both are exact.
LatticeClass classify(const Lattice& l, std::size_t triple_check_limit = 256);

/// Graph on the elements with {x, y} an edge iff one covers the other.
Graph cover_graph(const Poset& p);
Graph cover_graph(const Lattice& l);

/*
 * Birkhoff representation of a distributive lattice: the poset J(L) of
 * join-irreducibles and, per element x, the downset { j in J(L) : j <= x }.
 */
struct BirkhoffRep {
  /// Lattice ids of the join-irreducibles; J index i <-> element irreducibles[i].
  std::vector<Element> irreducibles;
  Poset irreducible_poset;
  std::vector<Bitset> downset_of;
  std::map<Bitset, Element> element_of;

  std::size_t rank_of(Element x) const { return downset_of.at(x).count(); }
  std::size_t distance(Element x, Element y) const {
    return symmetric_difference_size(downset_of.at(x), downset_of.at(y));
  }
};

/// Elements with exactly one lower cover.
std::vector<Element> join_irreducibles(const Lattice& l);
/// Join-irreducibles by definition: x is not the join of the elements
/// strictly below it. Exhaustive; used to validate join_irreducibles().
std::vector<Element> join_irreducibles_by_definition(const Lattice& l);

/// Throws PreconditionError when L is not distributive, i.e. when the
/// downset map is not a lattice isomorphism onto D(J(L)).
BirkhoffRep birkhoff(const Lattice& l);

/// Lattice of downsets of a poset of at most 32 elements.
struct DownsetLattice {
  Lattice lattice;
  /// ideal[x] = bitmask of poset elements in lattice element x.
  std::vector<std::uint32_t> ideal;
  std::map<std::uint32_t, Element> element_of;
};

struct DownsetLimits {
  std::size_t max_poset = 14;
  std::size_t max_elements = Lattice::kMaxElements;
};

DownsetLattice downset_lattice(const Poset& p, const DownsetLimits& limits = {});

/// Isomorphism between a distributive lattice and the downset lattice of its
/// join-irreducibles, through the downset map: true iff the map is a bijection
/// carrying ∧ to ∩ and ∨ to ∪.
bool birkhoff_round_trip(const Lattice& l, const BirkhoffRep& rep, const DownsetLattice& ideals);

/*
 * Cover-graph distances in a lower-semimodular lattice: |X Δ Y| through the
 * Birkhoff representation when the lattice is distributive, otherwise
 * rank(x) + rank(y) - 2 rank(x ∧ y).
 */
class LatticeMetric {
 public:
  /// Throws PreconditionError unless L is lower-semimodular.
  explicit LatticeMetric(const Lattice& l);

  std::uint32_t distance(Element x, Element y) const;
  bool distributive() const { return birkhoff_.has_value(); }
  const BirkhoffRep* birkhoff() const { return birkhoff_ ? &*birkhoff_ : nullptr; }

 private:
  const Lattice* lattice_;
  std::optional<BirkhoffRep> birkhoff_;
};

std::uint32_t lattice_distance(const Lattice& l, Element x, Element y);

// Named lattices used by tests and generators --------------------------------

Lattice boolean_lattice(std::size_t atoms);
Lattice chain_lattice(std::size_t length);
/// Diamond with `middle` pairwise incomparable atoms (M3 for middle = 3).
Lattice diamond_lattice(std::size_t middle);
Lattice pentagon_lattice();
/// Product of chains with the given numbers of elements.
Lattice chain_product_lattice(std::span<const std::size_t> lengths);

}  // namespace smplab
