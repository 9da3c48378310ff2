#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace threefold {

// A U(1) phase stored exactly as a rational number of turns r in [0, 1),
// representing exp(2*pi*i*r). Phase multiplication is turn addition mod 1;
// all cocycle identities are checked in this exact arithmetic.
class Turn {
 public:
  Turn() : num_(0), den_(1) {}
  // reduced mod 1; den must be nonzero
  static Turn make(std::int64_t num, std::int64_t den);
  static Turn zero() { return Turn(); }
  static Turn half() { return make(1, 2); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Turn operator+(const Turn& o) const;
  Turn operator-(const Turn& o) const;
  Turn operator-() const;

  bool operator==(const Turn& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Turn& o) const { return !(*this == o); }

  bool is_zero() const { return num_ == 0; }
  // true for r in {0, 1/2}, i.e. phase +-1
  bool is_real_sign() const { return num_ == 0 || (den_ == 2 && num_ == 1); }
  // +1 or -1; valid only if is_real_sign()
  int sign() const { return num_ == 0 ? 1 : -1; }

  std::complex<double> to_complex() const;
  std::string str() const;

 private:
  Turn(std::int64_t n, std::int64_t d) : num_(n), den_(d) {}
  std::int64_t num_, den_;
};

}  // namespace threefold
