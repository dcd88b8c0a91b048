#pragma once

#include <cstdint>
#include <string_view>

namespace introspect {

// splitmix64; all derived seeds and stateless decisions go through this so
// results never depend on library-specific std::hash or call order.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::string_view b) {
  return mix_seed(a, fnv1a64(b));
}

// Top 53 bits mapped to [0, 1).
constexpr double hash_to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

// Minimal xorshift-style counter RNG. Deterministic across platforms, unlike
// std::shuffle over std::mt19937 whose distribution helpers are
// implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(splitmix64(seed)) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double unit() { return hash_to_unit(next()); }

  bool chance(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

// Fisher-Yates with SeededRng; keeps shuffles reproducible across toolchains.
template <typename Vec>
void seeded_shuffle(Vec& v, SeededRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace introspect
