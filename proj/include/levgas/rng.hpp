#pragma once

#include <cstdint>

namespace levgas {

/// splitmix64 step; the standard generator used to derive well-mixed child
/// seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic child seed for stream `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master ^ (0x632be59bd9b4e019ULL * (index + 1));
  std::uint64_t out = splitmix64(state);
  out = splitmix64(state) ^ out;
  return out;
}

}  // namespace levgas
