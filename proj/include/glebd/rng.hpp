#pragma once

#include <cstdint>
#include <random>

namespace glebd {

// splitmix64 step; used to decorrelate (base_seed, index) pairs before
// they seed mt19937_64, so that consecutive trajectory indices do not
// produce correlated streams.
std::uint64_t splitmix64(std::uint64_t x);

// One per-trajectory random stream. The contract is: same build, same
// (base_seed, index) => identical byte-for-byte output, regardless of
// how many streams run concurrently.
class RngStream {
 public:
  RngStream(std::uint64_t base_seed, std::uint64_t index);

  double uniform();   // (0, 1)
  double normal();    // standard normal, Marsaglia polar

  std::uint64_t base_seed() const { return base_seed_; }
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t base_seed_;
  std::uint64_t index_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace glebd
