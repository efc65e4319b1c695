#include "smplab/protocol.hpp"

#include <cmath>
#include <numeric>

#include "smplab/error.hpp"
#include "smplab/gadgets.hpp"
#include "smplab/protocols.hpp"

namespace smplab {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept:
      return "accept";
    case Outcome::Reject:
      return "reject";
    case Outcome::Distance:
      return "distance";
    case Outcome::Beyond:
      return "beyond";
  }
  return "?";
}

std::string Verdict::to_string() const {
  switch (outcome) {
    case Outcome::Distance:
      return "distance(" + std::to_string(value) + ")";
    case Outcome::Beyond:
      return "beyond(" + std::to_string(value) + ")";
    default:
      return smplab::to_string(outcome);
  }
}

Verdict max_verdict(const Verdict& a, const Verdict& b) {
  if (a.positive() != b.positive()) return a.positive() ? a : b;
  if (a.outcome == Outcome::Distance && b.outcome == Outcome::Distance) return a.value <= b.value ? a : b;
  return a;
}

Verdict Protocol::weak_decide(RandomTape&, const BitString& a, const BitString& b) const {
  const auto ref = referee();
  if (!ref) throw PreconditionError(name() + ": weak protocol must override weak_decide");
  return ref->decide(a, b);
}

Verdict Protocol::run(RandomTape& tape, Vertex x, Vertex y) const {
  const auto a = encode_a(tape, x);
  const auto b = encode_b(tape, y);
  Verdict v = weak_decide(tape, a, b);
  v.bits_a = a.size();
  v.bits_b = b.size();
  return v;
}

// Symmetrization ---------------------------------------------------------------------

namespace {

class SymmetrizedReferee final : public Referee {
 public:
  explicit SymmetrizedReferee(std::shared_ptr<const Referee> inner) : inner_(std::move(inner)) {}

  std::string name() const override { return "symmetrized:" + inner_->name(); }
  RefereeParams params() const override { return inner_->params(); }
  std::size_t message_bits() const override { return 2 * inner_->message_bits(); }

  Verdict decide(const BitString& a, const BitString& b) const override {
    const std::size_t half = inner_->message_bits();
    if (a.size() != 2 * half || b.size() != 2 * half) throw InputError("symmetrized referee: bad message length");
    return max_verdict(inner_->decide(a.slice(0, half), b.slice(half, half)),
                       inner_->decide(b.slice(0, half), a.slice(half, half)));
  }

 private:
  std::shared_ptr<const Referee> inner_;
};

class SymmetrizedProtocol final : public Protocol {
 public:
  explicit SymmetrizedProtocol(std::shared_ptr<const Protocol> inner) : inner_(std::move(inner)) {
    if (const auto ref = inner_->referee()) referee_ = std::make_shared<SymmetrizedReferee>(ref);
  }

  std::string name() const override { return "symmetrized:" + inner_->name(); }
  std::size_t size() const override { return inner_->size(); }
  std::size_t cost_bits() const override { return 2 * inner_->cost_bits(); }

  BitString encode_a(RandomTape& tape, Vertex v) const override {
    auto msg = inner_->encode_a(tape, v);
    msg.append(inner_->encode_b(tape, v));
    return msg;
  }

  std::shared_ptr<const Referee> referee() const override { return referee_; }

  Verdict weak_decide(RandomTape& tape, const BitString& a, const BitString& b) const override {
    if (referee_) return referee_->decide(a, b);
    const std::size_t half = inner_->cost_bits();
    return max_verdict(inner_->weak_decide(tape, a.slice(0, half), b.slice(half, half)),
                       inner_->weak_decide(tape, b.slice(0, half), a.slice(half, half)));
  }

  bool expected(Vertex x, Vertex y) const override { return inner_->expected(x, y); }
  bool correct(const Verdict& v, Vertex x, Vertex y) const override { return inner_->correct(v, x, y); }
  bool one_sided() const override { return inner_->one_sided(); }

 private:
  std::shared_ptr<const Protocol> inner_;
  std::shared_ptr<const Referee> referee_;
};

std::int64_t required(const RefereeParams& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw InputError("referee parameter '" + key + "' missing");
  if (it->second < 0) throw InputError("referee parameter '" + key + "' is negative");
  return it->second;
}

}  // namespace

std::shared_ptr<const Protocol> symmetrize(std::shared_ptr<const Protocol> p) {
  return std::make_shared<SymmetrizedProtocol>(std::move(p));
}

std::shared_ptr<const Referee> referee_from_params(const std::string& name, const RefereeParams& params) {
  const std::string prefix = "symmetrized:";
  if (name.rfind(prefix, 0) == 0) {
    return std::make_shared<SymmetrizedReferee>(referee_from_params(name.substr(prefix.size()), params));
  }
  if (name == "universal-distributive") {
    return make_hamming_referee(static_cast<std::size_t>(required(params, "m")),
                                static_cast<std::uint32_t>(required(params, "r")),
                                static_cast<std::uint32_t>(required(params, "k")));
  }
  if (name == "tree-kdist") {
    return make_tree_referee(static_cast<std::uint32_t>(required(params, "k")),
                             static_cast<unsigned>(required(params, "color_bits")));
  }
  if (name == "arboricity") {
    return make_slot_referee(static_cast<unsigned>(required(params, "color_bits")),
                             static_cast<std::size_t>(required(params, "slots")));
  }
  if (name == "planar-dist2") {
    return make_planar_referee(static_cast<unsigned>(required(params, "color_bits")),
                               static_cast<unsigned>(required(params, "closure_bits")),
                               static_cast<std::size_t>(required(params, "closure_slots")));
  }
  if (name == "bucket-majority") return make_bucket_majority_referee();
  throw InputError("unknown referee '" + name + "'");
}

// Error measurement ------------------------------------------------------------------

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational exact_error(const Protocol& p, Vertex x, Vertex y, double cap_bits) {
  EnumeratedTape tape;
  p.run(tape, x, y);
  tape.freeze();
  if (tape.entropy_bits() > cap_bits + 1e-9) {
    throw CapacityError("exact_error: " + std::to_string(tape.entropy_bits()) + " random bits exceed the cap of " +
                        std::to_string(cap_bits));
  }
  std::uint64_t total = 0, wrong = 0;
  do {
    ++total;
    if (!p.correct(p.run(tape, x, y), x, y)) ++wrong;
  } while (tape.advance());
  const auto g = std::gcd(wrong, total);
  return {wrong / g, total / g};
}

double ErrorEstimate::sigma() const {
  if (trials == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ErrorEstimate monte_carlo_error(const Protocol& p, Vertex x, Vertex y, std::size_t trials,
                                std::uint64_t master_seed) {
  ErrorEstimate e;
  e.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    SeededTape tape(derive_seed(master_seed, t));
    if (!p.correct(p.run(tape, x, y), x, y)) ++e.errors;
  }
  return e;
}

}  // namespace smplab
