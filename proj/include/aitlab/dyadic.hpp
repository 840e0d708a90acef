#pragma once
// Exact nonnegative dyadic rationals num/2^exp. Canonical form keeps the
// numerator odd, or zero with exponent zero. All sums in the library that
// feed invariants go through this type; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aitlab {

using BigInt = boost::multiprecision::cpp_int;

class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt numerator, std::uint64_t exponent);

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1, 0); }
  // 2^e for signed e; negative e gives 1/2^(-e).
  static Dyadic pow2(std::int64_t e);
  // Accepts "num/2^exp" or a bare decimal integer.
  static Dyadic parse(std::string_view text);

  const BigInt& numerator() const { return num_; }
  std::uint64_t exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  // Canonical "num/2^exp" rendering, numerator in decimal.
  std::string str() const;

  // Exact value * 2^k for signed k.
  Dyadic scaled_pow2(std::int64_t k) const;

  // Exponents e (as nonnegative "value" when e <= 0) of the binary expansion:
  // value = sum of 2^(-e) over returned e, plus an integer part listed as
  // negative entries. Entries are sorted ascending.
  std::vector<std::int64_t> binary_expansion() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  // Requires a >= b; throws InvalidInput otherwise (values are nonnegative).
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b);
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b);
  friend bool operator<=(const Dyadic& a, const Dyadic& b);
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return b <= a; }

 private:
  void canonicalize();

  BigInt num_ = 0;
  std::uint64_t exp_ = 0;
};

}  // namespace aitlab
