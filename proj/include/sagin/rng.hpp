#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sagin {

// Every random draw in the library comes from a Stream obtained here. A stream
// is identified by (seed, label); different labels give independent
// sub-streams so that, e.g., mobility and failures never share draws.
using Stream = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Stream seeded_stream(std::uint64_t seed, std::string_view label) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ fnv1a(label));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Stream(seq);
}

inline double uniform(Stream& s, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(s);
}

inline int uniform_int(Stream& s, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(s);
}

}  // namespace sagin
