#include "threefold/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace threefold {

Turn Turn::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Turn: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  return Turn(num / g, den / g);
}

Turn Turn::operator+(const Turn& o) const {
  const __int128 n =
      static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  const __int128 d = static_cast<__int128>(den_) * o.den_;
  __int128 nn = n % d;
  if (nn < 0) nn += d;
  __int128 a = nn, b = d;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  const __int128 rn = nn / a, rd = d / a;
  if (rd > INT64_MAX)
    throw std::overflow_error("Turn: denominator overflow");
  return Turn(static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd));
}

Turn Turn::operator-() const {
  if (num_ == 0) return *this;
  return Turn(den_ - num_, den_);
}

Turn Turn::operator-(const Turn& o) const { return *this + (-o); }

std::complex<double> Turn::to_complex() const {
  // exact values for the axes keep all-rational tables free of fp fuzz
  if (num_ == 0) return {1.0, 0.0};
  if (den_ == 2) return {-1.0, 0.0};
  if (den_ == 4) return num_ == 1 ? std::complex<double>{0.0, 1.0}
                                  : std::complex<double>{0.0, -1.0};
  const double t = 2.0 * M_PI * static_cast<double>(num_) / static_cast<double>(den_);
  return {std::cos(t), std::sin(t)};
}

std::string Turn::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace threefold
