#pragma once

#include <cstdint>
#include <random>

namespace lsvnet {

// Identifies one reproducible random stream. Equal (master_seed, stream_index)
// pairs replay the same draws bit-for-bit on a given build.
struct RngHandle {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  RngHandle substream(std::uint64_t k) const {
    return RngHandle{master_seed, stream_index * 8 + k};
  }
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic generator behind RngHandle. Uniform doubles are produced by
// explicit bit manipulation rather than std distributions so that draws do not
// depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(RngHandle h) {
    std::uint64_t s = h.master_seed;
    std::uint64_t a = detail::splitmix64(s);
    s ^= h.stream_index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = detail::splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    gen_.seed(seq);
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in the open interval (0, 1); never returns 0 or 1, so logs are safe.
  double next_open01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform in [0, 1).
  double next_half01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = -bound % bound;
    for (;;) {
      std::uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  bool next_sign() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lsvnet
