#pragma once

#include <cstdint>

namespace meanproj {

// Counter-based splittable generator. A draw is a hash of
// (seed, stream, counter), so identical coordinates reproduce identical
// values and replicate r can use stream r with no cross-stream coupling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), counter_(0) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 random bits.
  double next_double();

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace meanproj
