#include "smplab/bits.hpp"

#include <bit>

#include "smplab/error.hpp"

namespace smplab {

unsigned bit_width_for(std::uint64_t count) {
  if (count <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(count - 1));
}

bool BitString::bit(std::size_t pos) const {
  if (pos >= size_) throw InputError("BitString::bit: position out of range");
  return (words_[pos / 64] >> (pos % 64)) & 1u;
}

void BitString::push_bit(bool value) {
  if (size_ % 64 == 0) words_.push_back(0);
  if (value) words_.back() |= std::uint64_t{1} << (size_ % 64);
  ++size_;
}

void BitString::push(std::uint64_t value, unsigned width) {
  if (width > 64) throw InputError("BitString::push: width above 64");
  for (unsigned i = width; i-- > 0;) push_bit((value >> i) & 1u);
}

std::uint64_t BitString::read(std::size_t pos, unsigned width) const {
  if (width > 64 || pos + width > size_) {
    throw InputError("BitString::read: range past end of string");
  }
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) {
    value = (value << 1) | static_cast<std::uint64_t>((words_[(pos + i) / 64] >> ((pos + i) % 64)) & 1u);
  }
  return value;
}

void BitString::append(const BitString& other) {
  for (std::size_t i = 0; i < other.size_; ++i) push_bit(other.bit(i));
}

BitString BitString::slice(std::size_t pos, std::size_t count) const {
  if (pos + count > size_) throw InputError("BitString::slice: range past end");
  BitString out;
  for (std::size_t i = 0; i < count; ++i) out.push_bit(bit(pos + i));
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve((size_ + 3) / 4);
  for (std::size_t start = 0; start < size_; start += 4) {
    unsigned nibble = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      nibble <<= 1;
      if (start + i < size_ && bit(start + i)) nibble |= 1u;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t bits) {
  if (hex.size() != (bits + 3) / 4) {
    throw InputError("BitString::from_hex: digit count does not match bit length");
  }
  BitString out;
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw InputError("BitString::from_hex: invalid hex digit");
    }
    for (unsigned i = 0; i < 4; ++i) {
      const bool value = (nibble >> (3 - i)) & 1u;
      if (d * 4 + i < bits) {
        out.push_bit(value);
      } else if (value) {
        throw InputError("BitString::from_hex: nonzero padding bits");
      }
    }
  }
  return out;
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

std::uint64_t BitString::to_uint() const {
  if (size_ > 64) throw InputError("BitString::to_uint: more than 64 bits");
  return read(0, static_cast<unsigned>(size_));
}

BitString BitString::from_uint(std::uint64_t value, unsigned width) {
  BitString out;
  out.push(value, width);
  return out;
}

std::size_t BitString::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for (const auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t BitReader::take(unsigned width) {
  const auto value = bits_->read(pos_, width);
  pos_ += width;
  return value;
}

}  // namespace smplab
