#include "aitlab/codec.hpp"

#include "aitlab/errors.hpp"

namespace aitlab {

namespace mp = boost::multiprecision;

BitString encode_nat(std::uint64_t n) {
  if (n == 0) return BitString::from_text("00");
  if (n == 1) return BitString::from_text("01");
  std::size_t k = 0;
  for (std::uint64_t v = n; v > 1; v >>= 1) ++k;
  BitString code;
  code.push_back(1);
  for (std::size_t i = 1; i < k; ++i) code.push_back(0);
  code.push_back(1);
  // Low k bits of n, most significant first (the leading 1 is implied).
  for (std::size_t i = 0; i < k; ++i) {
    code.push_back(static_cast<int>((n >> (k - 1 - i)) & 1));
  }
  return code;
}

DecodedNat decode_nat(const BitString& s, std::size_t pos) {
  if (pos + 2 > s.size()) throw MalformedCode("natural code truncated");
  if (s.bit(pos) == 0) {
    return DecodedNat{static_cast<std::uint64_t>(s.bit(pos + 1)), 2};
  }
  std::size_t i = pos + 1;
  while (i < s.size() && s.bit(i) == 0) ++i;
  if (i == s.size()) throw MalformedCode("natural code header truncated");
  std::size_t k = i - pos;
  if (k > 62) throw TooLarge("decoded natural exceeds the supported range");
  if (i + 1 + k > s.size()) throw MalformedCode("natural code payload truncated");
  std::uint64_t n = 1;
  for (std::size_t j = 0; j < k; ++j) {
    n = (n << 1) | static_cast<std::uint64_t>(s.bit(i + 1 + j));
  }
  if (n > kMaxDecodedNat) throw TooLarge("decoded natural exceeds the supported range");
  return DecodedNat{n, 2 * k + 1};
}

BitString encode_string(const BitString& x) {
  return encode_nat(x.size()) + x;
}

DecodedString decode_string(const BitString& s, std::size_t pos) {
  DecodedNat len = decode_nat(s, pos);
  if (len.value > kMaxDecodedStringBits) {
    throw TooLarge("decoded string length exceeds the supported range");
  }
  if (pos + len.consumed + len.value > s.size()) {
    throw MalformedCode("string code payload truncated");
  }
  return DecodedString{s.slice(pos + len.consumed, len.value),
                       len.consumed + static_cast<std::size_t>(len.value)};
}

BigInt string_rank(const BitString& s) {
  BigInt value = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    value <<= 1;
    if (s.bit(i)) ++value;
  }
  return (BigInt(1) << s.size()) - 1 + value;
}

BitString string_unrank(const BigInt& rank) {
  if (rank < 0) throw InvalidInput("rank must be nonnegative");
  std::size_t len = 0;
  BigInt base = 0;  // rank of the first string of length `len`
  while (rank - base >= (BigInt(1) << len)) {
    base += BigInt(1) << len;
    ++len;
    if (len > kMaxDecodedStringBits) throw TooLarge("unranked string too long");
  }
  BigInt value = rank - base;
  BitString s;
  for (std::size_t i = 0; i < len; ++i) {
    s.push_back(mp::bit_test(value, static_cast<unsigned>(len - 1 - i)) ? 1 : 0);
  }
  return s;
}

namespace {

// Integer square root by Newton iteration; exact floor.
BigInt isqrt(const BigInt& n) {
  if (n < 2) return n;
  BigInt x = BigInt(1) << (mp::msb(n) / 2 + 1);
  for (;;) {
    BigInt y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

}  // namespace

BitString pair_strings(const BitString& a, const BitString& b) {
  BigInt i = string_rank(a);
  BigInt j = string_rank(b);
  BigInt z = (i + j) * (i + j + 1) / 2 + j;
  return string_unrank(z);
}

std::pair<BitString, BitString> unpair_strings(const BitString& z) {
  BigInt n = string_rank(z);
  BigInt w = (isqrt(8 * n + 1) - 1) / 2;
  BigInt t = w * (w + 1) / 2;
  BigInt j = n - t;
  BigInt i = w - j;
  return {string_unrank(i), string_unrank(j)};
}

}  // namespace aitlab
