#pragma once
// Finite binary strings with value semantics. The empty string is a
// first-class value distinct from "0".

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace aitlab {

class BitString {
 public:
  BitString() = default;

  static BitString zeros(std::size_t n);
  static BitString ones(std::size_t n);
  // Accepts only '0' and '1' characters; throws MalformedCode otherwise.
  static BitString from_text(std::string_view text);
  // Big-endian value in exactly `width` bits; requires value < 2^width.
  static BitString from_uint(std::uint64_t value, std::size_t width);
  // Minimal-width big-endian form with no leading zeros; 0 maps to "0".
  static BitString binary(std::uint64_t value);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_[i]; }
  void set_bit(std::size_t i, int b) {
    bits_[i] = static_cast<std::uint8_t>(b & 1);
  }

  void push_back(int b) { bits_.push_back(static_cast<std::uint8_t>(b & 1)); }
  void pop_back() { bits_.pop_back(); }
  void clear() { bits_.clear(); }
  void append(const BitString& other);

  BitString slice(std::size_t pos, std::size_t len) const;
  BitString prefix(std::size_t len) const { return slice(0, len); }
  BitString suffix_from(std::size_t pos) const {
    return slice(pos, size() - pos);
  }
  BitString concat(const BitString& other) const;

  bool is_prefix_of(const BitString& other) const;
  bool comparable_with(const BitString& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  // Big-endian numeric value; requires size() <= 64.
  std::uint64_t to_uint() const;
  std::string text() const;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const BitString& a, const BitString& b) {
    return !(a == b);
  }

 private:
  std::vector<std::uint8_t> bits_;
};

BitString operator+(const BitString& a, const BitString& b);

// Strict lexicographic order; a proper prefix precedes its extensions.
struct LexLess {
  bool operator()(const BitString& a, const BitString& b) const;
};

// Length-lexicographic order: eps, 0, 1, 00, 01, 10, 11, 000, ...
struct LengthLexLess {
  bool operator()(const BitString& a, const BitString& b) const;
};

std::size_t hash_value(const BitString& s);

}  // namespace aitlab

template <>
struct std::hash<aitlab::BitString> {
  std::size_t operator()(const aitlab::BitString& s) const {
    return aitlab::hash_value(s);
  }
};
