#include <algorithm>

#include "smplab/error.hpp"
#include "smplab/protocols.hpp"

namespace smplab {

namespace {

constexpr std::uint32_t kColorStream = 31;
constexpr std::uint32_t kClosureColorStream = 32;

std::vector<std::uint64_t> read_colors(BitReader& r, std::size_t count, unsigned width) {
  std::vector<std::uint64_t> out(count);
  for (auto& c : out) c = r.take(width);
  return out;
}

/// Color of `owner` first, then one slot per out-neighbor, padded with the owner's color.
void push_slots(BitString& msg, RandomTape& tape, std::uint32_t stream, std::uint64_t m, Vertex owner,
                const std::vector<Vertex>& parents, std::size_t slots) {
  const unsigned cw = bit_width_for(m);
  const auto own = tape.uniform(stream, owner, 0, m);
  msg.push(own, cw);
  for (std::size_t i = 0; i < slots; ++i) {
    msg.push(i < parents.size() ? tape.uniform(stream, parents[i], 0, m) : own, cw);
  }
}

bool slots_match(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (a[0] == b[i]) return true;
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (b[0] == a[i]) return true;
  }
  return false;
}

class SlotReferee final : public Referee {
 public:
  SlotReferee(unsigned color_bits, std::size_t slots) : color_bits_(color_bits), slots_(slots) {}

  std::string name() const override { return "arboricity"; }
  RefereeParams params() const override {
    return {{"color_bits", color_bits_}, {"slots", static_cast<std::int64_t>(slots_)}};
  }
  std::size_t message_bits() const override { return (1 + slots_) * color_bits_; }

  Verdict decide(const BitString& a, const BitString& b) const override {
    if (a.size() != message_bits() || b.size() != message_bits()) {
      throw InputError("arboricity referee: bad message length");
    }
    BitReader ra(a), rb(b);
    const auto ca = read_colors(ra, 1 + slots_, color_bits_);
    const auto cb = read_colors(rb, 1 + slots_, color_bits_);
    // Full slot lists never list the own color, so x = x needs a direct comparison.
    return a == b || slots_match(ca, cb) ? Verdict::accept() : Verdict::reject();
  }

 private:
  unsigned color_bits_;
  std::size_t slots_;
};

class PlanarReferee final : public Referee {
 public:
  PlanarReferee(unsigned color_bits, unsigned closure_bits, std::size_t closure_slots)
      : color_bits_(color_bits), closure_bits_(closure_bits), closure_slots_(closure_slots) {}

  std::string name() const override { return "planar-dist2"; }
  RefereeParams params() const override {
    return {{"color_bits", color_bits_},
            {"closure_bits", closure_bits_},
            {"closure_slots", static_cast<std::int64_t>(closure_slots_)}};
  }
  std::size_t message_bits() const override { return 13 * color_bits_ + (1 + closure_slots_) * closure_bits_; }

  Verdict decide(const BitString& a, const BitString& b) const override {
    if (a.size() != message_bits() || b.size() != message_bits()) throw InputError("planar referee: bad message length");
    BitReader ra(a), rb(b);
    const auto x = read_colors(ra, 13, color_bits_);
    const auto y = read_colors(rb, 13, color_bits_);
    // Layout: [0] own, [1 + i] parent i, [4 + 3i + j] parent j of parent i.
    bool hit = x[0] == y[0];
    for (int i = 1; i < 4 && !hit; ++i) hit = x[0] == y[i] || y[0] == x[i];
    for (int i = 4; i < 13 && !hit; ++i) hit = x[0] == y[i] || y[0] == x[i];
    for (int i = 1; i < 4 && !hit; ++i) {
      for (int j = 1; j < 4 && !hit; ++j) hit = x[i] == y[j];
    }
    if (!hit) {
      hit = slots_match(read_colors(ra, 1 + closure_slots_, closure_bits_),
                        read_colors(rb, 1 + closure_slots_, closure_bits_));
    }
    return hit ? Verdict::accept() : Verdict::reject();
  }

 private:
  unsigned color_bits_;
  unsigned closure_bits_;
  std::size_t closure_slots_;
};

}  // namespace

std::shared_ptr<const Referee> make_slot_referee(unsigned color_bits, std::size_t slots) {
  return std::make_shared<SlotReferee>(color_bits, slots);
}

std::shared_ptr<const Referee> make_planar_referee(unsigned color_bits, unsigned closure_bits,
                                                   std::size_t closure_slots) {
  return std::make_shared<PlanarReferee>(color_bits, closure_bits, closure_slots);
}

// Arboricity ------------------------------------------------------------------------

ArboricityProtocol::ArboricityProtocol(const Graph& g, const Orientation& orientation, ArboricityParams params)
    : graph_(g), orientation_(orientation) {
  if (orientation.parents.size() != g.size() || !orientation.covers_exactly(g)) {
    throw InputError("arboricity protocol: orientation does not cover the graph exactly");
  }
  if (!(params.eps > 0.0 && params.eps < 1.0)) throw InputError("arboricity protocol: eps must lie in (0, 1)");
  std::size_t outdeg = 0;
  for (const auto& p : orientation.parents) outdeg = std::max(outdeg, p.size());
  slots_ = params.slots ? *params.slots : std::max<std::size_t>(1, outdeg);
  if (slots_ < outdeg || slots_ == 0) throw InputError("arboricity protocol: slot bound below the out-degree");
  m_ = params.m ? *params.m : ceil_tolerant(2.0 * static_cast<double>(slots_) / params.eps);
  if (m_ < 2) throw InputError("arboricity protocol: need at least two colors");
  referee_ = make_slot_referee(bit_width_for(m_), slots_);
}

BitString ArboricityProtocol::encode_a(RandomTape& tape, Vertex x) const {
  BitString msg;
  push_slots(msg, tape, kColorStream, m_, x, orientation_.parents.at(x), slots_);
  return msg;
}

// Planar distance two ---------------------------------------------------------------

PlanarPrecomputation planar_precompute(const Graph& g, const SchnyderWood& wood) {
  if (wood.size() != g.size()) throw InputError("planar precompute: wood does not match the graph");
  PlanarPrecomputation pre{g, wood, head_to_head_closure(g, wood).combined, {}};
  pre.closure_orientation = degeneracy_orientation(pre.closure);
  if (pre.closure_orientation.max_outdegree > kClosureSlots) {
    throw ConstructionError("planar precompute: closure orientation has out-degree " +
                            std::to_string(pre.closure_orientation.max_outdegree));
  }
  return pre;
}

PlanarDistanceTwoProtocol::PlanarDistanceTwoProtocol(PlanarPrecomputation pre, double eps) : pre_(std::move(pre)) {
  const std::size_t n = pre_.graph.size();
  if (pre_.wood.size() != n || pre_.closure.size() != n || pre_.closure_orientation.parents.size() != n) {
    throw InputError("planar protocol: missing or mismatched precomputation");
  }
  if (!pre_.closure_orientation.covers_exactly(pre_.closure)) {
    throw InputError("planar protocol: closure orientation does not cover the closure");
  }
  if (pre_.closure_orientation.max_outdegree > kClosureSlots) {
    throw InputError("planar protocol: closure orientation exceeds the slot bound");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("planar protocol: eps must lie in (0, 1)");
  // Six direct checks share one coloring (34 comparisons), the closure check
  // gets its own; each logical check is budgeted eps/7.
  m_ = ceil_tolerant(42.0 / eps);
  closure_m_ = ceil_tolerant(2.0 * kClosureSlots * 7.0 / eps);
  square_ = n > 0 ? k_closure(pre_.graph, 2) : Graph{};
  referee_ = make_planar_referee(bit_width_for(m_), bit_width_for(closure_m_), kClosureSlots);
}

std::size_t PlanarDistanceTwoProtocol::cost_bits() const { return referee_->message_bits(); }

BitString PlanarDistanceTwoProtocol::encode_a(RandomTape& tape, Vertex x) const {
  const unsigned cw = bit_width_for(m_);
  auto color = [&](Vertex v) { return tape.uniform(kColorStream, v, 0, m_); };
  BitString msg;
  const auto own = color(x);
  std::array<std::optional<Vertex>, 3> parent;
  std::array<std::uint64_t, 3> parent_color;
  for (int i = 0; i < 3; ++i) {
    parent[i] = pre_.wood.out(x, i);
    parent_color[i] = parent[i] ? color(*parent[i]) : own;
  }
  msg.push(own, cw);
  for (int i = 0; i < 3; ++i) msg.push(parent_color[i], cw);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto grand = parent[i] ? pre_.wood.out(*parent[i], j) : std::nullopt;
      msg.push(grand ? color(*grand) : parent_color[i], cw);
    }
  }
  push_slots(msg, tape, kClosureColorStream, closure_m_, x, pre_.closure_orientation.parents.at(x), kClosureSlots);
  return msg;
}

}  // namespace smplab
