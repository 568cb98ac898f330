#ifndef IMB_RNG_HPP
#define IMB_RNG_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace imb {

// Thin wrapper around mt19937_64 that owns all value derivation itself, so
// streams do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // uniform double in [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // uniform integer in [0, bound)
  std::uint64_t integer(std::uint64_t bound) {
    return bound == 0 ? 0 : engine_() % bound;
  }

  // uniform integer in [lo, hi] inclusive
  int integer_range(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(integer(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // k distinct values from {0,...,n-1}, partial Fisher-Yates, unsorted
  std::vector<int> sample_without_replacement(int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    if (k > n) k = n;
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(integer(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; maps (master seed, stream id) to an independent seed
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace imb

#endif
