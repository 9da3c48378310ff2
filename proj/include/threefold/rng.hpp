#pragma once

#include <complex>
#include <cstdint>
#include <utility>

namespace threefold {

// Counter-based randomness: every variate is a pure function of
// (seed, stream, index), so sampling is reproducible and order-independent
// and parallelizes without shared state. The generator is Philox2x64-10.
namespace rng {

std::pair<std::uint64_t, std::uint64_t> philox2x64(std::uint64_t key,
                                                   std::uint64_t ctr0,
                                                   std::uint64_t ctr1);

// Stream purposes; a stream id is (purpose << 56) | instance.
enum class Purpose : std::uint64_t {
  coefficients = 0x01,
  oracle = 0x02,
  decomposition = 0x03,
  intertwiner = 0x04,
  test = 0x05,
};

std::uint64_t stream_id(Purpose p, std::uint64_t instance);

// One deterministic stream of variates indexed by a 64-bit counter.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream) : key_(seed), stream_(stream) {}
  Stream(std::uint64_t seed, Purpose p, std::uint64_t instance)
      : key_(seed), stream_(stream_id(p, instance)) {}

  // uniform on [0, 1)
  double uniform(std::uint64_t idx) const;
  // standard real normal N(0, 1)
  double normal(std::uint64_t idx) const;
  // standard complex normal CN(0, 1): E|z|^2 = 1, independent re/im
  std::complex<double> cnormal(std::uint64_t idx) const;

 private:
  std::uint64_t key_, stream_;
};

}  // namespace rng
}  // namespace threefold
