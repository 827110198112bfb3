#pragma once

#include <cstdint>
#include <random>

namespace morseot {

// splitmix64 (Steele, Lea, Flood, "Fast splittable pseudorandom number
// generators"). Used as a stateless per-index hash so that draws do not
// depend on traversal order or on padding dimensions.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// top 53 bits -> [0,1)
inline double u64_to_unit(uint64_t x) { return double(x >> 11) * 0x1.0p-53; }

// Hash (seed, a, b, c) to a uniform double in [0,1).
inline double hash_unit(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b + 0x7f4a7c159e3779b9ULL));
  h = splitmix64(h ^ (c + 0x2545f4914f6cdd1dULL));
  return u64_to_unit(h);
}

// Sequential generator. std::mt19937_64 is fully specified by the standard,
// so the stream is bit-identical across platforms; the uniform mappings are
// done by hand because std::uniform_real_distribution is
// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double unit() { return u64_to_unit(gen_()); }           // [0,1)
  double symmetric() { return 2.0 * unit() - 1.0; }       // [-1,1)

  // unbiased integer in [0,n)
  uint64_t integer(uint64_t n) {
    uint64_t lim = std::numeric_limits<uint64_t>::max() -
                   std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
      x = gen_();
    } while (x >= lim);
    return x % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace morseot
