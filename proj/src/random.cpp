#include "gpltail/random.hpp"

namespace gpltail {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RandomSource RandomSource::child(std::uint64_t a, std::uint64_t b) const {
  // Feed (stream, a, b) through splitmix64 so distinct indices give
  // statistically independent streams without coordinating offsets.
  std::uint64_t h = stream;
  splitmix64_next(h);
  h ^= 0x6A09E667F3BCC909ull + a;
  splitmix64_next(h);
  h ^= 0xBB67AE8584CAA73Bull + b;
  splitmix64_next(h);
  return RandomSource{seed, h};
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Xoshiro256::Xoshiro256(RandomSource src) {
  // splitmix64 expansion of the (seed, stream) pair; recommended seeding for
  // the xoshiro family, and it guarantees a nonzero state.
  std::uint64_t st = src.seed;
  s_[0] = splitmix64_next(st);
  s_[1] = splitmix64_next(st);
  st ^= src.stream * 0x9E3779B97F4A7C15ull + 0x0123456789ABCDEFull;
  s_[2] = splitmix64_next(st);
  s_[3] = splitmix64_next(st);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform01() {
  // 52 explicit bits plus a half-ulp offset: lands strictly inside (0,1).
  return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint64_t Xoshiro256::below(std::uint64_t n) {
  // Rejection sampling to remove modulo bias.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

}  // namespace gpltail
