#include <algorithm>
#include <queue>

#include "smplab/error.hpp"
#include "smplab/protocols.hpp"

namespace smplab {

namespace {

constexpr std::uint32_t kColorStream = 21;

class TreeReferee final : public Referee {
 public:
  TreeReferee(std::uint32_t k, unsigned color_bits) : k_(k), color_bits_(color_bits), prefix_bits_(bit_width_for(k)) {
    if (k == 0) throw InputError("tree referee: k must be positive");
  }

  std::string name() const override { return "tree-kdist"; }
  RefereeParams params() const override { return {{"k", k_}, {"color_bits", color_bits_}}; }
  std::size_t message_bits() const override { return prefix_bits_ + 2 * k_ * color_bits_; }

  Verdict decide(const BitString& a, const BitString& b) const override {
    if (a.size() != message_bits() || b.size() != message_bits()) throw InputError("tree referee: bad message length");
    const auto pa = parse(a);
    const auto pb = parse(b);
    std::uint32_t best = kInfiniteDistance;
    // Band roots sit at index 0 (x'') and index k (x').
    for (const std::uint32_t ia : {0u, k_}) {
      for (const std::uint32_t ib : {0u, k_}) {
        if (pa[ia] != pb[ib]) continue;
        std::size_t j = 0;
        while (ia + j < pa.size() && ib + j < pb.size() && pa[ia + j] == pb[ib + j]) ++j;
        const auto d = static_cast<std::uint32_t>((pa.size() - ia - j) + (pb.size() - ib - j));
        best = std::min(best, d);
      }
    }
    return best <= k_ ? Verdict::distance(best) : Verdict::beyond(k_);
  }

 private:
  std::vector<std::uint64_t> parse(const BitString& msg) const {
    BitReader r(msg);
    const auto offset = r.take(prefix_bits_);
    if (offset >= k_) throw InputError("tree referee: malformed depth offset");
    std::vector<std::uint64_t> colors(k_ + offset + 1);
    for (auto& c : colors) c = r.take(color_bits_);
    return colors;
  }

  std::uint32_t k_;
  unsigned color_bits_;
  unsigned prefix_bits_;
};

}  // namespace

std::shared_ptr<const Referee> make_tree_referee(std::uint32_t k, unsigned color_bits) {
  return std::make_shared<TreeReferee>(k, color_bits);
}

TreeDistanceProtocol::TreeDistanceProtocol(const Graph& tree, Vertex root, TreeParams params)
    : params_(params) {
  const std::size_t n = tree.size();
  if (params_.k == 0) throw InputError("tree protocol: k must be positive");
  if (!(params_.eps > 0.0 && params_.eps < 1.0)) throw InputError("tree protocol: eps must lie in (0, 1)");
  if (n == 0 || root >= n) throw InputError("tree protocol: root out of range");
  if (tree.edge_count() + 1 != n) throw InputError("tree protocol: graph is not a tree");
  m_ = params_.m ? *params_.m : ceil_tolerant(6.0 / params_.eps);
  if (m_ < 2) throw InputError("tree protocol: need at least two colors");

  parent_.assign(n, root);
  depth_.assign(n, kInfiniteDistance);
  depth_[root] = 0;
  std::queue<Vertex> queue;
  queue.push(root);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    for (const auto w : tree.neighbors(v)) {
      if (depth_[w] != kInfiniteDistance) continue;
      depth_[w] = depth_[v] + 1;
      parent_[w] = v;
      queue.push(w);
    }
  }
  if (std::count(depth_.begin(), depth_.end(), kInfiniteDistance) != 0) {
    throw InputError("tree protocol: graph is not connected");
  }
  lift_.push_back(parent_);
  for (std::size_t level = 1; (std::size_t{1} << level) < n; ++level) {
    const auto& prev = lift_.back();
    std::vector<Vertex> next(n);
    for (Vertex v = 0; v < n; ++v) next[v] = prev[prev[v]];
    lift_.push_back(std::move(next));
  }
  referee_ = make_tree_referee(params_.k, bit_width_for(m_));
}

std::size_t TreeDistanceProtocol::cost_bits() const { return referee_->message_bits(); }

Vertex TreeDistanceProtocol::ancestor(Vertex v, std::uint32_t steps) const {
  for (std::size_t level = 0; steps != 0; ++level, steps >>= 1) {
    if (steps & 1) v = lift_[level][v];
  }
  return v;
}

std::uint32_t TreeDistanceProtocol::distance(Vertex x, Vertex y) const {
  const std::uint32_t dx = depth_.at(x), dy = depth_.at(y);
  Vertex a = ancestor(x, dx > dy ? dx - dy : 0);
  Vertex b = ancestor(y, dy > dx ? dy - dx : 0);
  if (a != b) {
    for (std::size_t level = lift_.size(); level-- > 0;) {
      if (lift_[level][a] != lift_[level][b]) {
        a = lift_[level][a];
        b = lift_[level][b];
      }
    }
    a = parent_[a];
  }
  return dx + dy - 2 * depth_[a];
}

BitString TreeDistanceProtocol::encode_a(RandomTape& tape, Vertex x) const {
  const std::uint32_t k = params_.k;
  // Shifted depth: k virtual ancestors (ids n .. n+k-1) sit above the root.
  const std::uint32_t s = depth_.at(x) + k;
  const std::uint32_t top = (s / k - 1) * k;
  std::vector<std::uint64_t> colors(s - top + 1);
  Vertex v = x;
  for (std::uint32_t t = s + 1; t-- > top;) {
    const std::uint64_t id = t >= k ? v : size() + t;
    colors[t - top] = tape.uniform(kColorStream, id, 0, m_);
    if (t > k) v = parent_[v];
  }
  const unsigned cw = bit_width_for(m_);
  BitString msg;
  msg.push(s % k, bit_width_for(k));
  for (const auto c : colors) msg.push(c, cw);
  while (msg.size() < cost_bits()) msg.push_bit(false);
  return msg;
}

bool TreeDistanceProtocol::correct(const Verdict& v, Vertex x, Vertex y) const {
  const auto d = distance(x, y);
  if (d <= params_.k) return v.outcome == Outcome::Distance && v.value == d;
  return v.outcome == Outcome::Beyond;
}

}  // namespace smplab
