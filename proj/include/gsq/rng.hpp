#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace gsq {

// SplitMix64 finalizer, used to derive independent seed streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combine a master seed with stream labels (graph id, r, B, trial index, ...)
/// into the seed of an independent substream.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = mix64(master);
  for (std::uint64_t p : parts) s = mix64(s ^ p);
  return s;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seeded generator with portable double conversions. The raw 64-bit stream is
/// std::mt19937_64, whose output sequence is fixed by the standard; the
/// uniform/normal maps below avoid std::*_distribution, which is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// uniform in (0, 1]
  double uniform_pos() {
    return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
  }

  /// uniform integer in [0, n), n > 0
  std::uint64_t uniform_int(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(eng_()) * n) >> 64);
  }

  /// standard normal, Box-Muller
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform_pos();
    const double v = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u));
    const double ang = 6.28318530717958647692 * v;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace gsq
