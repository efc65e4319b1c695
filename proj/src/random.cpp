#include "smplab/random.hpp"

#include <cmath>

#include "smplab/error.hpp"

namespace smplab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label) {
  return mix64(mix64(parent) ^ (label * 0xd6e8feb86659fd93ull));
}

std::uint64_t RandomTape::bits(std::uint32_t stream, std::uint64_t id, std::uint32_t round,
                               unsigned width) {
  if (width > 62) throw InputError("RandomTape::bits: width above 62");
  return uniform(stream, id, round, std::uint64_t{1} << width);
}

std::uint64_t SeededTape::uniform(std::uint32_t stream, std::uint64_t id, std::uint32_t round,
                                  std::uint64_t range) {
  if (range == 0) throw InputError("RandomTape::uniform: empty range");
  std::uint64_t h = mix64(seed_ ^ 0x243f6a8885a308d3ull);
  h = mix64(h ^ stream);
  h = mix64(h ^ id);
  h = mix64(h ^ (static_cast<std::uint64_t>(round) << 32 | 0x5bd1e995u));
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * range) >> 64);
}

std::uint64_t EnumeratedTape::uniform(std::uint32_t stream, std::uint64_t id, std::uint32_t round,
                                      std::uint64_t range) {
  if (range == 0) throw InputError("RandomTape::uniform: empty range");
  const Key key{stream, id, round};
  const auto it = slots_.find(key);
  if (it != slots_.end()) {
    if (radices_[it->second] != range) {
      throw ConstructionError("EnumeratedTape: key reused with a different range");
    }
    return digits_[it->second];
  }
  if (frozen_) {
    throw ConstructionError("EnumeratedTape: randomness layout depends on drawn values");
  }
  slots_.emplace(key, radices_.size());
  radices_.push_back(range);
  digits_.push_back(0);
  return 0;
}

double EnumeratedTape::entropy_bits() const {
  double total = 0.0;
  for (const auto r : radices_) total += std::log2(static_cast<double>(r));
  return total;
}

bool EnumeratedTape::advance() {
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (++digits_[i] < radices_[i]) return true;
    digits_[i] = 0;
  }
  return false;
}

}  // namespace smplab
