#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smplab {

/// Number of bits needed to write any value in [0, count); 0 for count <= 1.
unsigned bit_width_for(std::uint64_t count);

/*
 * Append-only bit string used for every protocol message and label.
 * Bit 0 is the first bit written.
 */
class BitString {
 public:
  BitString() = default;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool bit(std::size_t pos) const;
  void push_bit(bool value);

  /// Append the low `width` bits of `value`, most significant first.
  void push(std::uint64_t value, unsigned width);
  /// Read `width` bits starting at `pos`, as written by push().
  std::uint64_t read(std::size_t pos, unsigned width) const;

  void append(const BitString& other);
  BitString slice(std::size_t pos, std::size_t count) const;

  /// Hex rendering: nibble j holds bits 4j..4j+3, bit 4j most significant;
  /// the final nibble is zero padded.
  std::string to_hex() const;
  static BitString from_hex(std::string_view hex, std::size_t bits);

  /// '0'/'1' rendering, mostly for diagnostics and tests.
  std::string to_string() const;

  /// Interpret the whole string (at most 64 bits) as an integer, first bit
  /// most significant.
  std::uint64_t to_uint() const;
  static BitString from_uint(std::uint64_t value, unsigned width);

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator<(const BitString& a, const BitString& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.words_ < b.words_;
  }

  std::size_t hash() const;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Sequential reader over a BitString.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(&bits) {}

  std::uint64_t take(unsigned width);
  bool take_bit() { return take(1) != 0; }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bits_->size() - pos_; }

 private:
  const BitString* bits_;
  std::size_t pos_ = 0;
};

struct BitStringHash {
  std::size_t operator()(const BitString& b) const { return b.hash(); }
};

}  // namespace smplab
