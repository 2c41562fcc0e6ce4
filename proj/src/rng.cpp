#include "swarm/rng.hpp"

#include <cmath>

namespace swarm {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + 0x9e3779b97f4a7c15ULL * (index + 1));
}

double Rng::exponential(double rate) {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  return -std::log1p(-uniform()) / rate;
}

}  // namespace swarm
