// rng.hpp -- small deterministic random stream (splitmix64) so that model
// training reproduces bit-identically across platforms and thread counts.

#ifndef CTFEAT_RNG_HPP
#define CTFEAT_RNG_HPP

#include <cstdint>
#include <vector>

namespace ctfeat {

class RngStream {
 public:
  explicit RngStream(uint64_t seed) : state_(seed) {}

  /// Independent stream for (seed, stream_id); used to give each tree and
  /// each fold its own schedule-invariant stream.
  static RngStream derive(uint64_t seed, uint64_t stream_id) {
    RngStream mix(seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
    mix.next_u64();
    return RngStream(mix.next_u64());
  }

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from [0, n).
  uint64_t uniform_int(uint64_t n) {
    uint64_t bound = n * (UINT64_MAX / n);
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= bound);
    return x % n;
  }

  double uniform_real() {
    return (next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  /// k distinct values from [0, n), ascending.
  std::vector<int> sample_without_replacement(int n, int k);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = uniform_int(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace ctfeat

#endif
