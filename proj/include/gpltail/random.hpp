#pragma once

#include <cstdint>

namespace gpltail {

// Identifies one reproducible random stream.  Every randomized operation takes
// a RandomSource and derives private sub-streams from it, so results depend
// only on (seed, stream) and never on scheduling or shared mutable state.
struct RandomSource {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Deterministically derived child stream; used to give each bootstrap
  // replicate (or scan candidate) its own generator.
  RandomSource child(std::uint64_t a, std::uint64_t b = 0) const;
};

// xoshiro256++ seeded via splitmix64.  Chosen over std::mt19937_64 because the
// whole pipeline must be bit-reproducible across standard libraries, and
// because jump-free stream derivation keeps parallel bootstrap deterministic.
class Xoshiro256 {
public:
  explicit Xoshiro256(RandomSource src);

  std::uint64_t next();

  // Uniform on the open interval (0,1); safe to pass through inverse CDFs.
  double uniform01();

  // Uniform integer on [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64_next(std::uint64_t& state);

}  // namespace gpltail
