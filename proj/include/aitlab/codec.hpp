#pragma once
// Self-delimiting codes for naturals and strings, plus the bijective
// string pairing used everywhere a single string has to carry two.
//
// Naturals: 0 -> "00", 1 -> "01"; for n >= 2 with binary form 1 b1..bk,
// the code is "1" 0^(k-1) "1" b1..bk, so |e(n)| = 2*floor(log2 n) + 1.
// Strings: e(x) = e(|x|) x.
// Pairing: length-lexicographic rank into the naturals, Cantor pairing,
// and back; total and bijective on all strings.

#include <cstdint>
#include <utility>

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"

namespace aitlab {

inline constexpr std::uint64_t kMaxDecodedNat = std::uint64_t(1) << 62;
inline constexpr std::uint64_t kMaxDecodedStringBits = std::uint64_t(1) << 26;

BitString encode_nat(std::uint64_t n);

struct DecodedNat {
  std::uint64_t value;
  std::size_t consumed;
};
// Decodes one natural starting at `pos`; MalformedCode on truncation,
// TooLarge past kMaxDecodedNat.
DecodedNat decode_nat(const BitString& s, std::size_t pos = 0);

BitString encode_string(const BitString& x);

struct DecodedString {
  BitString value;
  std::size_t consumed;
};
// MalformedCode on truncation, TooLarge past kMaxDecodedStringBits.
DecodedString decode_string(const BitString& s, std::size_t pos = 0);

// Length-lexicographic rank: eps -> 0, "0" -> 1, "1" -> 2, "00" -> 3, ...
BigInt string_rank(const BitString& s);
BitString string_unrank(const BigInt& rank);

BitString pair_strings(const BitString& a, const BitString& b);
std::pair<BitString, BitString> unpair_strings(const BitString& z);

}  // namespace aitlab
