#include "smplab/lattice.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <string>
#include <unordered_map>

#include "smplab/error.hpp"

namespace smplab {

namespace {

std::string pair_name(Element x, Element y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

}  // namespace

// Poset ------------------------------------------------------------------------

Poset Poset::unchecked(std::size_t n, std::vector<Cover> covers) {
  Poset p;
  p.upper_.resize(n);
  p.lower_.resize(n);
  std::sort(covers.begin(), covers.end());
  for (const auto& [x, y] : covers) {
    p.upper_[x].push_back(y);
    p.lower_[y].push_back(x);
  }
  p.covers_ = std::move(covers);
  return p;
}

std::vector<Element> Poset::linear_extension() const {
  const std::size_t n = size();
  std::vector<std::size_t> pending(n);
  std::priority_queue<Element, std::vector<Element>, std::greater<>> ready;
  for (Element x = 0; x < n; ++x) {
    pending[x] = lower_[x].size();
    if (pending[x] == 0) ready.push(x);
  }
  std::vector<Element> order;
  order.reserve(n);
  while (!ready.empty()) {
    const Element x = ready.top();
    ready.pop();
    order.push_back(x);
    for (const auto y : upper_[x]) {
      if (--pending[y] == 0) ready.push(y);
    }
  }
  if (order.size() != n) throw InputError("poset cover relation contains a cycle");
  return order;
}

std::vector<Bitset> Poset::downsets() const {
  const std::size_t n = size();
  std::vector<Bitset> down(n, Bitset(n));
  for (const auto x : linear_extension()) {
    down[x].set(x);
    for (const auto w : lower_[x]) down[x] |= down[w];
  }
  return down;
}

Poset Poset::from_covers(std::size_t n, std::span<const Cover> covers) {
  std::vector<Cover> list(covers.begin(), covers.end());
  for (const auto& [x, y] : list) {
    if (x >= n || y >= n) throw InputError("cover endpoint out of range");
    if (x == y) throw InputError("element listed as covering itself");
  }
  auto sorted = list;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("duplicate cover pair");
  }
  Poset p = unchecked(n, std::move(list));
  const auto down = p.downsets();  // also rejects cycles
  for (const auto& [x, y] : p.covers_) {
    for (const auto w : p.lower_[y]) {
      if (w != x && down[w].test(x)) {
        throw InputError("cover " + pair_name(x, y) + " is implied by transitivity through " +
                         std::to_string(w));
      }
    }
  }
  return p;
}

Poset Poset::antichain(std::size_t n) { return unchecked(n, {}); }

Poset Poset::chain(std::size_t n) {
  std::vector<Cover> covers;
  for (Element i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return unchecked(n, std::move(covers));
}

Poset transitive_reduction(std::size_t n, std::span<const Cover> relations) {
  for (const auto& [x, y] : relations) {
    if (x >= n || y >= n || x == y) throw InputError("invalid order relation pair");
  }
  std::vector<Cover> all(relations.begin(), relations.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const Poset closure_source = Poset::unchecked(n, all);
  const auto down = closure_source.downsets();
  std::vector<Cover> covers;
  for (Element y = 0; y < n; ++y) {
    Bitset strict = down[y];
    strict.reset(y);
    for (const auto x : strict.members()) {
      bool covered = true;
      for (const auto z : strict.members()) {
        if (z != x && down[z].test(static_cast<Element>(x))) {
          covered = false;
          break;
        }
      }
      if (covered) covers.emplace_back(static_cast<Element>(x), y);
    }
  }
  return Poset::unchecked(n, std::move(covers));
}

// Lattice ------------------------------------------------------------------------

/// Fills a Lattice from precomputed tables; ids must follow a linear extension.
class LatticeAssembler {
 public:
  static Lattice assemble(std::vector<Cover> covers, std::size_t n, std::vector<std::uint16_t> meet,
                          std::vector<std::uint16_t> join,
                          std::optional<std::vector<std::uint32_t>> rank,
                          std::vector<Element> original) {
    Lattice l;
    l.poset_ = Poset::unchecked(n, std::move(covers));
    l.meet_ = std::move(meet);
    l.join_ = std::move(join);
    l.cover_matrix_ = Bitset(n * n);
    for (const auto& [x, y] : l.poset_.covers()) l.cover_matrix_.set(static_cast<std::size_t>(x) * n + y);
    l.rank_ = std::move(rank);
    l.original_ = std::move(original);
    return l;
  }
};

bool Lattice::covers(Element x, Element y) const {
  return cover_matrix_.test(static_cast<std::size_t>(x) * size() + y);
}

std::uint32_t Lattice::rank(Element x) const {
  if (!rank_) throw PreconditionError("lattice is not ranked");
  return rank_->at(x);
}

namespace {

std::optional<std::vector<std::uint32_t>> compute_rank(const Poset& p) {
  std::vector<std::uint32_t> rank(p.size(), 0);
  for (const auto x : p.linear_extension()) {
    const auto& lower = p.lower_covers(x);
    if (lower.empty()) {
      if (x != 0) return std::nullopt;
      continue;
    }
    rank[x] = rank[lower.front()] + 1;
    for (const auto w : lower) {
      if (rank[w] + 1 != rank[x]) return std::nullopt;
    }
  }
  return rank;
}

}  // namespace

Lattice build_lattice(const Poset& input) {
  const std::size_t n = input.size();
  if (n == 0) throw ConstructionError("not a lattice: empty poset");
  if (n > Lattice::kMaxElements) throw CapacityError("build_lattice: too many elements");

  const auto order = input.linear_extension();
  std::vector<Element> position(n);
  for (Element i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<Cover> covers;
  covers.reserve(input.covers().size());
  for (const auto& [x, y] : input.covers()) covers.emplace_back(position[x], position[y]);
  const Poset p = Poset::unchecked(n, covers);

  const auto down = p.downsets();
  std::vector<Bitset> up(n, Bitset(n));
  for (Element x = static_cast<Element>(n); x-- > 0;) {
    up[x].set(x);
    for (const auto y : p.upper_covers(x)) up[x] |= up[y];
  }

  std::vector<std::uint16_t> meet(n * n), join(n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = x; y < n; ++y) {
      const Bitset lower = down[x] & down[y];
      const std::size_t glb = lower.highest();
      if (glb == n || down[glb] != lower) {
        throw ConstructionError("not a lattice: pair " + pair_name(order[x], order[y]) +
                                " has no unique greatest lower bound");
      }
      const Bitset upper = up[x] & up[y];
      const std::size_t lub = upper.lowest();
      if (lub == n || up[lub] != upper) {
        throw ConstructionError("not a lattice: pair " + pair_name(order[x], order[y]) +
                                " has no unique least upper bound");
      }
      meet[x * n + y] = meet[y * n + x] = static_cast<std::uint16_t>(glb);
      join[x * n + y] = join[y * n + x] = static_cast<std::uint16_t>(lub);
    }
  }
  auto rank = compute_rank(p);
  return LatticeAssembler::assemble(std::move(covers), n, std::move(meet), std::move(join),
                                    std::move(rank), order);
}

const char* to_string(LatticeClass c) {
  switch (c) {
    case LatticeClass::Distributive: return "distributive";
    case LatticeClass::ModularNotDistributive: return "modular-not-distributive";
    case LatticeClass::Neither: return "neither";
  }
  return "neither";
}

bool is_upper_semimodular(const Lattice& l) {
  const auto n = static_cast<Element>(l.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      const Element m = l.meet(x, y);
      if (l.covers(m, x) && l.covers(m, y)) {
        const Element j = l.join(x, y);
        if (!l.covers(x, j) || !l.covers(y, j)) return false;
      }
    }
  }
  return true;
}

bool is_lower_semimodular(const Lattice& l) {
  const auto n = static_cast<Element>(l.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      const Element j = l.join(x, y);
      if (l.covers(x, j) && l.covers(y, j)) {
        const Element m = l.meet(x, y);
        if (!l.covers(m, x) || !l.covers(m, y)) return false;
      }
    }
  }
  return true;
}

bool satisfies_distributive_law(const Lattice& l) {
  const auto n = static_cast<Element>(l.size());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const Element xy = l.meet(x, y);
      for (Element z = y + 1; z < n; ++z) {
        if (l.meet(x, l.join(y, z)) != l.join(xy, l.meet(x, z))) return false;
      }
    }
  }
  return true;
}

LatticeClass classify(const Lattice& l, std::size_t triple_check_limit) {
  if (!is_upper_semimodular(l) || !is_lower_semimodular(l)) return LatticeClass::Neither;
  bool distributive = false;
  if (l.size() <= triple_check_limit) {
    distributive = satisfies_distributive_law(l);
  } else {
    try {
      birkhoff(l);
      distributive = true;
    } catch (const PreconditionError&) {
      distributive = false;
    }
  }
  return distributive ? LatticeClass::Distributive : LatticeClass::ModularNotDistributive;
}

Graph cover_graph(const Poset& p) {
  GraphBuilder builder(p.size(), SelfLoops::None);
  for (const auto& [x, y] : p.covers()) builder.add_edge(x, y);
  return std::move(builder).build();
}

Graph cover_graph(const Lattice& l) { return cover_graph(l.poset()); }

// Birkhoff -------------------------------------------------------------------------

std::vector<Element> join_irreducibles(const Lattice& l) {
  std::vector<Element> out;
  for (Element x = 0; x < l.size(); ++x) {
    if (l.poset().lower_covers(x).size() == 1) out.push_back(x);
  }
  return out;
}

std::vector<Element> join_irreducibles_by_definition(const Lattice& l) {
  std::vector<Element> out;
  for (Element x = 0; x < l.size(); ++x) {
    Element below = l.bottom();
    for (Element z = 0; z < l.size(); ++z) {
      if (z != x && l.leq(z, x)) below = l.join(below, z);
    }
    // The join of the empty set is the bottom, so the bottom is never
    // irreducible.
    if (x != l.bottom() && below != x) out.push_back(x);
  }
  return out;
}

namespace {

/// Number of ideals of p, counting stops once `limit` is exceeded.
std::size_t count_ideals(const Poset& p, std::size_t limit) {
  const auto order = p.linear_extension();
  std::vector<bool> in(p.size(), false);
  std::size_t count = 0;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (count > limit) return;
    if (i == order.size()) {
      ++count;
      return;
    }
    const Element x = order[i];
    self(self, i + 1);
    const auto& lower = p.lower_covers(x);
    if (std::all_of(lower.begin(), lower.end(), [&](Element w) { return in[w]; })) {
      in[x] = true;
      self(self, i + 1);
      in[x] = false;
    }
  };
  recurse(recurse, 0);
  return count;
}

}  // namespace

BirkhoffRep birkhoff(const Lattice& l) {
  BirkhoffRep rep;
  rep.irreducibles = join_irreducibles(l);
  const std::size_t j = rep.irreducibles.size();
  std::vector<Cover> relations;
  for (Element a = 0; a < j; ++a) {
    for (Element b = 0; b < j; ++b) {
      if (a != b && l.leq(rep.irreducibles[a], rep.irreducibles[b])) relations.emplace_back(a, b);
    }
  }
  rep.irreducible_poset = transitive_reduction(j, relations);

  const std::size_t n = l.size();
  rep.downset_of.assign(n, Bitset(j));
  for (Element x = 0; x < n; ++x) {
    for (Element a = 0; a < j; ++a) {
      if (l.leq(rep.irreducibles[a], x)) rep.downset_of[x].set(a);
    }
    if (!rep.element_of.emplace(rep.downset_of[x], x).second) {
      throw PreconditionError("birkhoff: lattice is not distributive (downset map not injective)");
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (rep.downset_of[l.meet(x, y)] != (rep.downset_of[x] & rep.downset_of[y]) ||
          rep.downset_of[l.join(x, y)] != (rep.downset_of[x] | rep.downset_of[y])) {
        throw PreconditionError("birkhoff: lattice is not distributive (pair " + pair_name(x, y) +
                                " breaks meet/join preservation)");
      }
    }
  }
  if (count_ideals(rep.irreducible_poset, n) != n) {
    throw PreconditionError("birkhoff: lattice is not distributive (downset map not onto)");
  }
  return rep;
}

DownsetLattice downset_lattice(const Poset& p, const DownsetLimits& limits) {
  const std::size_t base = p.size();
  if (base > limits.max_poset || base > 32) {
    throw CapacityError("downset_lattice: poset has " + std::to_string(base) +
                        " elements, cap is " + std::to_string(std::min<std::size_t>(limits.max_poset, 32)));
  }
  const auto order = p.linear_extension();
  std::vector<std::uint32_t> ideals;
  std::uint32_t current = 0;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (ideals.size() > limits.max_elements) return;
    if (i == order.size()) {
      ideals.push_back(current);
      return;
    }
    const Element x = order[i];
    self(self, i + 1);
    const auto& lower = p.lower_covers(x);
    if (std::all_of(lower.begin(), lower.end(), [&](Element w) { return (current >> w) & 1u; })) {
      current |= 1u << x;
      self(self, i + 1);
      current &= ~(1u << x);
    }
  };
  recurse(recurse, 0);
  if (ideals.size() > limits.max_elements) {
    throw CapacityError("downset_lattice: more than " + std::to_string(limits.max_elements) +
                        " ideals");
  }
  std::sort(ideals.begin(), ideals.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  const std::size_t n = ideals.size();
  DownsetLattice out;
  std::unordered_map<std::uint32_t, Element> index;
  index.reserve(n * 2);
  for (Element i = 0; i < n; ++i) {
    index.emplace(ideals[i], i);
    out.element_of.emplace(ideals[i], i);
  }

  std::vector<std::uint16_t> meet(n * n), join(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      meet[a * n + b] = meet[b * n + a] = static_cast<std::uint16_t>(index.at(ideals[a] & ideals[b]));
      join[a * n + b] = join[b * n + a] = static_cast<std::uint16_t>(index.at(ideals[a] | ideals[b]));
    }
  }
  std::vector<Cover> covers;
  std::vector<std::uint32_t> rank(n);
  for (Element a = 0; a < n; ++a) {
    rank[a] = static_cast<std::uint32_t>(std::popcount(ideals[a]));
    for (Element x = 0; x < base; ++x) {
      if ((ideals[a] >> x) & 1u) continue;
      const auto it = index.find(ideals[a] | (1u << x));
      if (it != index.end()) covers.emplace_back(a, it->second);
    }
  }
  std::vector<Element> original(n);
  for (Element i = 0; i < n; ++i) original[i] = i;
  out.lattice = LatticeAssembler::assemble(std::move(covers), n, std::move(meet), std::move(join),
                                           std::move(rank), std::move(original));
  out.ideal = std::move(ideals);
  return out;
}

bool birkhoff_round_trip(const Lattice& l, const BirkhoffRep& rep, const DownsetLattice& ideals) {
  const std::size_t n = l.size();
  if (ideals.lattice.size() != n || rep.irreducibles.size() > 32) return false;
  std::vector<Element> phi(n);
  std::vector<bool> hit(n, false);
  for (Element x = 0; x < n; ++x) {
    const auto mask = static_cast<std::uint32_t>(rep.downset_of[x].low_word());
    const auto it = ideals.element_of.find(mask);
    if (it == ideals.element_of.end() || hit[it->second]) return false;
    phi[x] = it->second;
    hit[it->second] = true;
  }
  const Lattice& d = ideals.lattice;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x; y < n; ++y) {
      if (phi[l.meet(x, y)] != d.meet(phi[x], phi[y])) return false;
      if (phi[l.join(x, y)] != d.join(phi[x], phi[y])) return false;
      const Element ix = phi[x], iy = phi[y];
      if (ideals.ideal[d.meet(ix, iy)] != (ideals.ideal[ix] & ideals.ideal[iy])) return false;
      if (ideals.ideal[d.join(ix, iy)] != (ideals.ideal[ix] | ideals.ideal[iy])) return false;
    }
  }
  return true;
}

// Distances --------------------------------------------------------------------------

LatticeMetric::LatticeMetric(const Lattice& l) : lattice_(&l) {
  if (!is_lower_semimodular(l)) {
    throw PreconditionError("lattice_distance: lattice is not lower-semimodular");
  }
  try {
    birkhoff_ = smplab::birkhoff(l);
  } catch (const PreconditionError&) {
    if (!l.ranked()) throw PreconditionError("lattice_distance: lattice is not ranked");
  }
}

std::uint32_t LatticeMetric::distance(Element x, Element y) const {
  if (x >= lattice_->size() || y >= lattice_->size()) {
    throw InputError("lattice_distance: element out of range");
  }
  if (birkhoff_) return static_cast<std::uint32_t>(birkhoff_->distance(x, y));
  const Element m = lattice_->meet(x, y);
  return lattice_->rank(x) + lattice_->rank(y) - 2 * lattice_->rank(m);
}

std::uint32_t lattice_distance(const Lattice& l, Element x, Element y) {
  return LatticeMetric(l).distance(x, y);
}

// Named lattices ---------------------------------------------------------------------

Lattice boolean_lattice(std::size_t atoms) { return downset_lattice(Poset::antichain(atoms)).lattice; }

Lattice chain_lattice(std::size_t length) {
  if (length == 0) throw InputError("chain_lattice: length must be positive");
  return build_lattice(Poset::chain(length));
}

Lattice diamond_lattice(std::size_t middle) {
  const auto top = static_cast<Element>(middle + 1);
  std::vector<Cover> covers;
  for (Element i = 1; i <= middle; ++i) {
    covers.emplace_back(0, i);
    covers.emplace_back(i, top);
  }
  if (middle == 0) covers.emplace_back(0, 1);
  return build_lattice(Poset::from_covers(middle + 2, covers));
}

Lattice pentagon_lattice() {
  // 0 < a < b < 1 and 0 < c < 1.
  const std::vector<Cover> covers{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  return build_lattice(Poset::from_covers(5, covers));
}

Lattice chain_product_lattice(std::span<const std::size_t> lengths) {
  std::vector<Cover> covers;
  Element next = 0;
  for (const auto len : lengths) {
    if (len == 0) throw InputError("chain_product_lattice: chains need at least one element");
    // A chain with len elements is the downset lattice of a chain with len-1.
    for (std::size_t i = 0; i + 2 < len; ++i) {
      covers.emplace_back(next + static_cast<Element>(i), next + static_cast<Element>(i + 1));
    }
    next += static_cast<Element>(len - 1);
  }
  return downset_lattice(Poset::from_covers(next, covers)).lattice;
}

}  // namespace smplab
