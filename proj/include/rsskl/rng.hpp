#pragma once

#include <cstdint>

namespace rsskl {

// xoshiro256++ generator seeded through the splitmix64 finalizer.
//
// Monte Carlo replication i draws from the stream derived from
// (master seed, i, attempt), so results are independent of how the
// replications are distributed over worker threads. A stream must not be
// shared between threads; distinct streams may be used concurrently.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    static RandomStream substream(std::uint64_t master_seed, std::uint64_t index,
                                  std::uint64_t attempt = 0);

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1); safe to feed into log().
    double uniform01();

    // Standard normal, Marsaglia polar method. The second variate of each
    // pair is cached inside the stream.
    double normal();

  private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rsskl
