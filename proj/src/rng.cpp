#include "amglab/rng.hpp"

namespace amglab {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t Rng::next_u64() {
  return splitmix64(seed_ + (++counter_) * kGolden);
}

double Rng::uniform() {
  // 53 mantissa bits -> [0,1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

long long Rng::uniform_int(long long lo, long long hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  // multiply-shift map of a 64-bit draw onto the range; bias is
  // negligible for the small ranges used here
  const auto wide = static_cast<unsigned __int128>(next_u64()) * range;
  return lo + static_cast<long long>(wide >> 64);
}

Rng Rng::split(std::uint64_t tag) const {
  return Rng(splitmix64(seed_ ^ splitmix64(tag)));
}

}  // namespace amglab
