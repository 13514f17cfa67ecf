#include "meanproj/rng.hpp"

namespace meanproj {

namespace {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::next_u64() {
  const std::uint64_t z = seed_ * 0x9E3779B97F4A7C15ull +
                          stream_ * 0xD1B54A32D192ED03ull +
                          (counter_++) * 0x8CB92BA72F3D8DD7ull;
  // two finalizer rounds decorrelate the linear coordinate combination
  return mix64(mix64(z + 0xA3EC647659359ACDull));
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  const std::uint64_t limit = ~0ull - (~0ull % bound);
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace meanproj
