#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "smplab/bits.hpp"
#include "smplab/graph.hpp"
#include "smplab/random.hpp"

namespace smplab {

enum class Outcome { Accept, Reject, Distance, Beyond };

const char* to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Reject;
  /// Distance for Outcome::Distance, threshold k for Outcome::Beyond.
  std::uint32_t value = 0;
  std::size_t bits_a = 0;
  std::size_t bits_b = 0;

  static Verdict accept() { return {Outcome::Accept, 0}; }
  static Verdict reject() { return {Outcome::Reject, 0}; }
  static Verdict distance(std::uint32_t d) { return {Outcome::Distance, d}; }
  static Verdict beyond(std::uint32_t k) { return {Outcome::Beyond, k}; }

  /// Accept or a reported distance.
  bool positive() const { return outcome == Outcome::Accept || outcome == Outcome::Distance; }
  std::string to_string() const;

  friend bool operator==(const Verdict& a, const Verdict& b) {
    return a.outcome == b.outcome && a.value == b.value;
  }
};

/// The better of two verdicts: positive over negative, then the smaller distance.
Verdict max_verdict(const Verdict& a, const Verdict& b);

using RefereeParams = std::map<std::string, std::int64_t>;

/*
 * Deterministic decision function of a universal-model protocol. It sees the
 * two messages and nothing else; name() and params() are enough to rebuild
 * it with referee_from_params().
 */
class Referee {
 public:
  virtual ~Referee() = default;

  virtual std::string name() const = 0;
  virtual RefereeParams params() const = 0;
  /// Exact length of every message this referee reads.
  virtual std::size_t message_bits() const = 0;
  virtual Verdict decide(const BitString& a, const BitString& b) const = 0;
};

/// Throws InputError for unknown names or missing parameters.
std::shared_ptr<const Referee> referee_from_params(const std::string& name, const RefereeParams& params);

/*
 * A protocol bound to one instance. Encoders draw shared randomness from the
 * tape; messages always have exactly cost_bits() bits. Weak-model protocols
 * have no seedless referee and decide through weak_decide(), which may read
 * the tape.
 */
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::string name() const = 0;
  /// Number of vertices (or lattice elements) of the bound instance.
  virtual std::size_t size() const = 0;
  virtual std::size_t cost_bits() const = 0;

  virtual BitString encode_a(RandomTape& tape, Vertex x) const = 0;
  virtual BitString encode_b(RandomTape& tape, Vertex y) const { return encode_a(tape, y); }

  /// Null for weak-model protocols.
  virtual std::shared_ptr<const Referee> referee() const = 0;
  virtual Verdict weak_decide(RandomTape& tape, const BitString& a, const BitString& b) const;

  /// Ground truth of the positive class for (x, y).
  virtual bool expected(Vertex x, Vertex y) const = 0;
  /// Whether a verdict is right for (x, y). Distance protocols also require
  /// the exact distance.
  virtual bool correct(const Verdict& v, Vertex x, Vertex y) const { return v.positive() == expected(x, y); }
  /// Never rejects a positive pair.
  virtual bool one_sided() const { return false; }

  bool is_weak() const { return referee() == nullptr; }
  Verdict run(RandomTape& tape, Vertex x, Vertex y) const;
};

/// Both players send a‖b; the referee takes the better of the two cross
/// evaluations, so the result is symmetric. Cost doubles.
std::shared_ptr<const Protocol> symmetrize(std::shared_ptr<const Protocol> p);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Rational& a, const Rational& b) = default;
};

/// Exact probability of a wrong verdict on (x, y) by enumerating every
/// tape. Throws CapacityError when the tape needs more than `cap_bits`
/// random bits.
Rational exact_error(const Protocol& p, Vertex x, Vertex y, double cap_bits = 24.0);

struct ErrorEstimate {
  std::size_t trials = 0;
  std::size_t errors = 0;

  double rate() const { return trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0; }
  /// Binomial standard error of rate().
  double sigma() const;
};

/// Seeds derive_seed(master_seed, t) for t in [0, trials).
ErrorEstimate monte_carlo_error(const Protocol& p, Vertex x, Vertex y, std::size_t trials,
                                std::uint64_t master_seed);

}  // namespace smplab
