#pragma once

#include <cstdint>
#include <string_view>

namespace rfad {

// splitmix64 finalizer; stable across platforms unlike std::hash.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Per-stage seed: the stage name is hashed and folded into the master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view stage) noexcept {
  return mix64(master ^ mix64(fnv1a64(stage)));
}

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t first, Rest... rest) noexcept {
  std::uint64_t h = mix64(master ^ mix64(first));
  ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(rest)))), ...);
  return h;
}

} // namespace rfad
