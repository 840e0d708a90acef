#include "aitlab/dyadic.hpp"

#include <algorithm>

#include "aitlab/errors.hpp"

namespace aitlab {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(BigInt numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  if (num_ < 0) throw InvalidInput("dyadic values are nonnegative");
  canonicalize();
}

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned low = mp::lsb(num_);
  std::uint64_t drop = std::min<std::uint64_t>(low, exp_);
  num_ >>= drop;
  exp_ -= drop;
}

Dyadic Dyadic::pow2(std::int64_t e) {
  if (e >= 0) return Dyadic(BigInt(1) << e, 0);
  return Dyadic(1, static_cast<std::uint64_t>(-e));
}

Dyadic Dyadic::parse(std::string_view text) {
  auto bad = [&] { return MalformedCode("dyadic literal must be num/2^exp or an integer"); };
  std::size_t slash = text.find('/');
  std::string num_part(text.substr(0, slash == std::string_view::npos ? text.size() : slash));
  if (num_part.empty() || num_part.find_first_not_of("0123456789") != std::string::npos) {
    throw bad();
  }
  BigInt num(num_part);
  if (slash == std::string_view::npos) return Dyadic(num, 0);
  std::string_view rest = text.substr(slash + 1);
  if (rest.size() < 3 || rest[0] != '2' || rest[1] != '^') throw bad();
  std::string exp_part(rest.substr(2));
  if (exp_part.find_first_not_of("0123456789") != std::string::npos || exp_part.empty()) {
    throw bad();
  }
  if (exp_part.size() > 18) throw TooLarge("dyadic exponent out of range");
  return Dyadic(num, std::stoull(exp_part));
}

std::string Dyadic::str() const {
  return num_.str() + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::scaled_pow2(std::int64_t k) const {
  if (is_zero()) return Dyadic();
  if (k >= 0) {
    std::uint64_t up = static_cast<std::uint64_t>(k);
    std::uint64_t from_exp = std::min(up, exp_);
    return Dyadic(num_ << (up - from_exp), exp_ - from_exp);
  }
  return Dyadic(num_, exp_ + static_cast<std::uint64_t>(-k));
}

std::vector<std::int64_t> Dyadic::binary_expansion() const {
  std::vector<std::int64_t> out;
  if (is_zero()) return out;
  for (unsigned i = 0; i <= mp::msb(num_); ++i) {
    if (mp::bit_test(num_, i)) {
      out.push_back(static_cast<std::int64_t>(exp_) - static_cast<std::int64_t>(i));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  return Dyadic((a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_)), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  BigInt lhs = a.num_ << (e - a.exp_);
  BigInt rhs = b.num_ << (e - b.exp_);
  if (lhs < rhs) throw InvalidInput("dyadic subtraction would be negative");
  return Dyadic(lhs - rhs, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  return a.exp_ == b.exp_ && a.num_ == b.num_;
}

bool operator<(const Dyadic& a, const Dyadic& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  return (a.num_ << (e - a.exp_)) < (b.num_ << (e - b.exp_));
}

bool operator<=(const Dyadic& a, const Dyadic& b) {
  return a == b || a < b;
}

}  // namespace aitlab
