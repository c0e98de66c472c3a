#pragma once

#include <cstdint>

namespace mstc {

// Deterministic 64-bit generator with independent streams, used by the
// instance generator and the greedy repair heuristic. Instance files must be
// reproducible from (seed, parameters) alone, on any platform, so the
// algorithm is fixed and spelled out here rather than delegated to
// std::mt19937 (whose distributions are not portable).
//
// Core sequence: SplitMix64 (Steele, Lea & Flood 2014, public domain).
//   state += 0x9E3779B97F4A7C15            (golden-ratio increment)
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   output z ^ (z >> 31)
//
// Stream k of seed s starts from state = s + (k + 1) * 0x9E3779B97F4A7C15,
// i.e. streams are disjoint windows of the same underlying sequence. The
// generator draws streams far apart in practice (edges / costs / conflicts),
// which keeps one stream's consumption from perturbing another.
//
// Bounded draws use Lemire's multiply-shift with rejection (Lemire 2019,
// "Fast Random Integer Generation in an Interval"), which is exact-uniform:
//   m = uint128(next()) * bound; reject while low64(m) < 2^64 mod bound;
//   result = m >> 64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(seed + kGolden * (stream + 1)) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

}  // namespace mstc
