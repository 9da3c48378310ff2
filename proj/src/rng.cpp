#include "threefold/rng.hpp"

#include <cmath>

namespace threefold::rng {

namespace {

constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 p =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

inline double to_unit(std::uint64_t x) {
  // 53 mantissa bits, in [0, 1)
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> philox2x64(std::uint64_t key,
                                                   std::uint64_t ctr0,
                                                   std::uint64_t ctr1) {
  std::uint64_t x0 = ctr0, x1 = ctr1, k = key;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi, lo;
    mulhilo(kMul, x0, hi, lo);
    x0 = hi ^ k ^ x1;
    x1 = lo;
    k += kWeyl;
  }
  return {x0, x1};
}

std::uint64_t stream_id(Purpose p, std::uint64_t instance) {
  return (static_cast<std::uint64_t>(p) << 56) | (instance & 0x00FFFFFFFFFFFFFFULL);
}

double Stream::uniform(std::uint64_t idx) const {
  return to_unit(philox2x64(key_, stream_, idx).first);
}

double Stream::normal(std::uint64_t idx) const {
  const auto [r0, r1] = philox2x64(key_, stream_, idx);
  const double u1 = (static_cast<double>(r0 >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = to_unit(r1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::complex<double> Stream::cnormal(std::uint64_t idx) const {
  const auto [r0, r1] = philox2x64(key_, stream_, idx);
  const double u1 = (static_cast<double>(r0 >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = to_unit(r1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  // Box-Muller pair scaled so E|z|^2 = 1
  return {r * std::cos(2.0 * M_PI * u2) / std::sqrt(2.0),
          r * std::sin(2.0 * M_PI * u2) / std::sqrt(2.0)};
}

}  // namespace threefold::rng
