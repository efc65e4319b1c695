#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace smplab {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derive an independent 64-bit seed from a parent seed and a label.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label);

/*
 * Shared randomness as seen by the players. Every draw is addressed by a key
 * (stream, id, round) so Alice and Bob obtain identical values for the same
 * key without communicating, and the order of draws does not matter.
 */
class RandomTape {
 public:
  virtual ~RandomTape() = default;

  /// Uniform value in [0, range), range >= 1 and below 2^63.
  virtual std::uint64_t uniform(std::uint32_t stream, std::uint64_t id, std::uint32_t round,
                                std::uint64_t range) = 0;

  /// `width` uniform bits, width <= 62.
  std::uint64_t bits(std::uint32_t stream, std::uint64_t id, std::uint32_t round, unsigned width);
};

/// Counter-based tape: every value is a hash of (seed, key).
class SeededTape final : public RandomTape {
 public:
  explicit SeededTape(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t uniform(std::uint32_t stream, std::uint64_t id, std::uint32_t round,
                        std::uint64_t range) override;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/*
 * Tape whose values are digits of a mixed-radix counter, one digit per key in
 * first-use order. Used to enumerate the whole seed space exactly. In
 * discovery mode unseen keys are appended with digit 0; once frozen, an unseen
 * key is an error.
 */
class EnumeratedTape final : public RandomTape {
 public:
  std::uint64_t uniform(std::uint32_t stream, std::uint64_t id, std::uint32_t round,
                        std::uint64_t range) override;

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  const std::vector<std::uint64_t>& radices() const { return radices_; }
  const std::vector<std::uint64_t>& digits() const { return digits_; }

  /// log2 of the number of distinct tapes.
  double entropy_bits() const;

  /// Advance to the next digit vector; false after the last one (digits wrap
  /// to zero).
  bool advance();

 private:
  using Key = std::tuple<std::uint32_t, std::uint64_t, std::uint32_t>;
  std::map<Key, std::size_t> slots_;
  std::vector<std::uint64_t> radices_;
  std::vector<std::uint64_t> digits_;
  bool frozen_ = false;
};

}  // namespace smplab
