#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace edgesim {

/// Named random streams. Each concern draws from its own stream so that, for
/// example, changing how many rounding trials run never shifts the workload.
enum class Stream : std::uint64_t {
  Topology = 1,
  Requests = 2,
  Popularity = 3,
  Rounding = 4,
  Policy = 5,
  Catalog = 6,
  Sharding = 7,
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Portable random source: std::mt19937_64 (bit-exact by the standard) plus
/// hand-written distributions, because the std:: distributions are
/// implementation-defined and would break cross-platform replay.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream `s` of run seed `seed`; `sub` separates e.g. per-window draws.
  static Rng stream(std::uint64_t seed, Stream s, std::uint64_t sub = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }
  /// Index drawn proportionally to non-negative `weights` (need not sum to 1).
  std::size_t categorical(std::span<const double> weights);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgesim
