#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace dcert {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Default relative membership tolerance (scaled by the group-appropriate
// power of ||g||_HS at the call site).
inline constexpr double kMembershipTol = 1e-9;

// Deterministic PRNG: splitmix64 for uniforms, Box-Muller for gaussians.
// The algorithm id is echoed into every report so campaigns are replayable.
inline constexpr const char* kPrngId = "splitmix64+box-muller";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in (0,1].
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Decorrelated stream for item `index` of a campaign; independent of how
  // work is sharded across threads.
  static Rng for_item(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    mix.next_u64();
    return mix;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Parallelism degree: --threads flag > DECAYCERT_THREADS env > hardware.
int worker_count();
void set_worker_count(int n);  // 0 restores the default resolution

// Runs fn(i) for i in [0,n) over a pool of workers, chunked contiguously.
// Results must be merged by the caller from per-chunk state in chunk order
// (campaigns only use min/max reductions, which are partition independent).
void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t begin, std::int64_t end,
                                           int chunk)>& body,
                  int* chunks_used = nullptr);

inline constexpr int kMaxChunks = 256;

}  // namespace dcert
