#include <bit>
#include <cmath>

#include "smplab/error.hpp"
#include "smplab/protocols.hpp"

namespace smplab {

namespace {

constexpr std::uint32_t kIndexStream = 11;
constexpr std::uint32_t kVectorStream = 12;

std::vector<std::vector<std::uint32_t>> downset_members(const BirkhoffRep& rep) {
  std::vector<std::vector<std::uint32_t>> out(rep.downset_of.size());
  for (std::size_t v = 0; v < out.size(); ++v) {
    for (const auto j : rep.downset_of[v].members()) out[v].push_back(static_cast<std::uint32_t>(j));
  }
  return out;
}

long double binomial_prefix_sum(std::size_t m, std::uint32_t k) {
  long double sum = 0, term = 1;
  for (std::uint32_t i = 0; i <= k && i <= m; ++i) {
    sum += term;
    term = term * static_cast<long double>(m - i) / static_cast<long double>(i + 1);
  }
  return sum;
}

/// Open-addressing set of values below 2^63.
class FlatSet {
 public:
  explicit FlatSet(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap *= 2;
    slots_.assign(cap, kEmpty);
    shift_ = 64 - static_cast<unsigned>(std::countr_zero(cap));
  }

  void insert(std::uint64_t key) {
    for (std::size_t i = slot(key);; i = (i + 1) & (slots_.size() - 1)) {
      if (slots_[i] == key) return;
      if (slots_[i] == kEmpty) {
        slots_[i] = key;
        return;
      }
    }
  }

  bool contains(std::uint64_t key) const {
    for (std::size_t i = slot(key);; i = (i + 1) & (slots_.size() - 1)) {
      if (slots_[i] == key) return true;
      if (slots_[i] == kEmpty) return false;
    }
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  std::size_t slot(std::uint64_t key) const {
    return static_cast<std::size_t>((key * 0x9e3779b97f4a7c15ull) >> shift_);
  }

  std::vector<std::uint64_t> slots_;
  unsigned shift_;
};

/// Calls f(sum) for the XOR of every subset of at most `size` entries;
/// stops early when f returns true.
template <typename F>
bool any_subset_sum(const std::vector<std::uint64_t>& v, std::uint32_t size, std::size_t from, std::uint64_t acc,
                    F& f) {
  if (f(acc)) return true;
  if (size == 0) return false;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (any_subset_sum(v, size - 1, i + 1, acc ^ v[i], f)) return true;
  }
  return false;
}

}  // namespace

std::uint64_t ceil_tolerant(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(x));
}

SketchParams SketchParams::weak(std::uint32_t k, double eps) {
  if (k == 0) throw InputError("sketch params: k must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("sketch params: eps must lie in (0, 1)");
  SketchParams p;
  p.k = k;
  p.eps = eps;
  p.m = ceil_tolerant(static_cast<double>((k + 2) * (k + 2)) / eps);
  const double bits = std::log2(1.0 / eps) + static_cast<double>(std::log2(binomial_prefix_sum(p.m, k)));
  p.q = static_cast<unsigned>(ceil_tolerant(bits));
  return p;
}

SketchParams SketchParams::universal(std::uint32_t k, double eps) {
  if (k == 0) throw InputError("sketch params: k must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("sketch params: eps must lie in (0, 1)");
  SketchParams p;
  p.k = k;
  p.eps = eps;
  p.m = (3 * (k + 2) * (k + 2) + 1) / 2;
  p.r = 0;
  for (double reach = 1.0; reach * eps < 1.0 - 1e-9; reach *= 3.0) ++p.r;
  p.r = std::max<std::uint32_t>(p.r, 1);
  return p;
}

// Weak protocol -------------------------------------------------------------------

WeakDistributiveProtocol::WeakDistributiveProtocol(const BirkhoffRep& rep, SketchParams params,
                                                   std::uint64_t work_cap)
    : params_(params), members_(downset_members(rep)), downsets_(rep.downset_of) {
  if (params_.m == 0 || params_.k == 0) throw InputError("weak protocol: m and k must be positive");
  if (params_.q == 0 || params_.q > 62) throw CapacityError("weak protocol: q must lie in [1, 62]");
  const std::uint32_t half = params_.k / 2;
  const long double work =
      binomial_prefix_sum(params_.m, half) + binomial_prefix_sum(params_.m, params_.k - half);
  if (work > static_cast<long double>(work_cap)) {
    throw CapacityError("weak protocol: subset-sum search needs about " +
                        std::to_string(static_cast<double>(work)) + " steps (cap " + std::to_string(work_cap) +
                        "); use a larger eps");
  }
}

std::uint32_t WeakDistributiveProtocol::distance(Vertex x, Vertex y) const {
  return static_cast<std::uint32_t>(symmetric_difference_size(downsets_.at(x), downsets_.at(y)));
}

BitString WeakDistributiveProtocol::encode_a(RandomTape& tape, Vertex x) const {
  std::vector<bool> parity(params_.m, false);
  for (const auto j : members_.at(x)) {
    const auto i = tape.uniform(kIndexStream, j, 0, params_.m);
    parity[i] = !parity[i];
  }
  std::uint64_t label = 0;
  for (std::size_t i = 0; i < params_.m; ++i) {
    if (parity[i]) label ^= tape.bits(kVectorStream, i, 0, params_.q);
  }
  return BitString::from_uint(label, params_.q);
}

std::vector<std::uint64_t> WeakDistributiveProtocol::draw_vectors(RandomTape& tape) const {
  std::vector<std::uint64_t> s(params_.m);
  for (std::size_t i = 0; i < params_.m; ++i) s[i] = tape.bits(kVectorStream, i, 0, params_.q);
  return s;
}

bool WeakDistributiveProtocol::in_k_sums(const std::vector<std::uint64_t>& vectors, std::uint64_t target) const {
  // Meet in the middle: overlapping index sets cancel, leaving a sum of at
  // most k distinct entries, so the split is exact.
  const std::uint32_t half = params_.k / 2;
  FlatSet table(static_cast<std::size_t>(binomial_prefix_sum(vectors.size(), half)));
  auto insert = [&](std::uint64_t s) {
    table.insert(s);
    return false;
  };
  any_subset_sum(vectors, half, 0, 0, insert);
  auto probe = [&](std::uint64_t s) { return table.contains(target ^ s); };
  return any_subset_sum(vectors, params_.k - half, 0, 0, probe);
}

Verdict WeakDistributiveProtocol::weak_decide(RandomTape& tape, const BitString& a, const BitString& b) const {
  if (a.size() != params_.q || b.size() != params_.q) throw InputError("weak referee: bad message length");
  return in_k_sums(draw_vectors(tape), a.to_uint() ^ b.to_uint()) ? Verdict::accept() : Verdict::reject();
}

// Universal protocol ----------------------------------------------------------------

namespace {

class HammingReferee final : public Referee {
 public:
  HammingReferee(std::size_t m, std::uint32_t rounds, std::uint32_t k) : m_(m), rounds_(rounds), k_(k) {
    if (m == 0 || rounds == 0) throw InputError("hamming referee: m and r must be positive");
  }

  std::string name() const override { return "universal-distributive"; }
  RefereeParams params() const override {
    return {{"m", static_cast<std::int64_t>(m_)}, {"r", rounds_}, {"k", k_}};
  }
  std::size_t message_bits() const override { return m_ * rounds_; }

  Verdict decide(const BitString& a, const BitString& b) const override {
    if (a.size() != message_bits() || b.size() != message_bits()) {
      throw InputError("hamming referee: bad message length");
    }
    for (std::uint32_t r = 0; r < rounds_; ++r) {
      std::size_t weight = 0;
      for (std::size_t pos = r * m_, end = (r + 1) * m_; pos < end; pos += 64) {
        const auto width = static_cast<unsigned>(std::min<std::size_t>(64, end - pos));
        weight += static_cast<std::size_t>(std::popcount(a.read(pos, width) ^ b.read(pos, width)));
      }
      if (weight > k_) return Verdict::reject();
    }
    return Verdict::accept();
  }

 private:
  std::size_t m_;
  std::uint32_t rounds_;
  std::uint32_t k_;
};

}  // namespace

std::shared_ptr<const Referee> make_hamming_referee(std::size_t m, std::uint32_t rounds, std::uint32_t k) {
  return std::make_shared<HammingReferee>(m, rounds, k);
}

UniversalDistributiveProtocol::UniversalDistributiveProtocol(const BirkhoffRep& rep, SketchParams params)
    : params_(params),
      members_(downset_members(rep)),
      downsets_(rep.downset_of),
      referee_(make_hamming_referee(params.m, params.r, params.k)) {}

std::uint32_t UniversalDistributiveProtocol::distance(Vertex x, Vertex y) const {
  return static_cast<std::uint32_t>(symmetric_difference_size(downsets_.at(x), downsets_.at(y)));
}

std::vector<std::uint32_t> UniversalDistributiveProtocol::index_vector(RandomTape& tape, Vertex x,
                                                                       std::uint32_t round) const {
  std::vector<bool> parity(params_.m, false);
  for (const auto j : members_.at(x)) {
    const auto i = tape.uniform(kIndexStream, j, round, params_.m);
    parity[i] = !parity[i];
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < params_.m; ++i) {
    if (parity[i]) out.push_back(i);
  }
  return out;
}

BitString UniversalDistributiveProtocol::encode_a(RandomTape& tape, Vertex x) const {
  BitString msg;
  std::vector<bool> parity(params_.m);
  for (std::uint32_t r = 0; r < params_.r; ++r) {
    std::fill(parity.begin(), parity.end(), false);
    for (const auto j : members_.at(x)) {
      const auto i = tape.uniform(kIndexStream, j, r, params_.m);
      parity[i] = !parity[i];
    }
    for (const bool bit : parity) msg.push_bit(bit);
  }
  return msg;
}

}  // namespace smplab
