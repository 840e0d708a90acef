#include "aitlab/bitstring.hpp"

#include <algorithm>

#include "aitlab/errors.hpp"

namespace aitlab {

BitString BitString::zeros(std::size_t n) {
  BitString s;
  s.bits_.assign(n, 0);
  return s;
}

BitString BitString::ones(std::size_t n) {
  BitString s;
  s.bits_.assign(n, 1);
  return s;
}

BitString BitString::from_text(std::string_view text) {
  BitString s;
  s.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw MalformedCode("bit string literal may contain only 0 and 1");
    }
    s.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return s;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  if (width > 64 || (width < 64 && value >> width != 0)) {
    throw InvalidInput("value does not fit the requested width");
  }
  BitString s;
  s.bits_.resize(width);
  for (std::size_t i = 0; i < width; ++i) {
    s.bits_[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1);
  }
  return s;
}

BitString BitString::binary(std::uint64_t value) {
  if (value == 0) return from_text("0");
  std::size_t width = 0;
  for (std::uint64_t v = value; v != 0; v >>= 1) ++width;
  return from_uint(value, width);
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos) {
    throw InvalidInput("slice out of range");
  }
  BitString s;
  s.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                 bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return s;
}

BitString BitString::concat(const BitString& other) const {
  BitString s = *this;
  s.append(other);
  return s;
}

bool BitString::is_prefix_of(const BitString& other) const {
  if (size() > other.size()) return false;
  return std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::uint64_t BitString::to_uint() const {
  if (size() > 64) throw TooLarge("numeric value of a string longer than 64 bits");
  std::uint64_t v = 0;
  for (std::uint8_t b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::text() const {
  std::string out;
  out.reserve(size());
  for (std::uint8_t b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

BitString operator+(const BitString& a, const BitString& b) {
  return a.concat(b);
}

bool LexLess::operator()(const BitString& a, const BitString& b) const {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.bit(i) != b.bit(i)) return a.bit(i) < b.bit(i);
  }
  return a.size() < b.size();
}

bool LengthLexLess::operator()(const BitString& a, const BitString& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return LexLess{}(a, b);
}

std::size_t hash_value(const BitString& s) {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < s.size(); ++i) {
    h ^= static_cast<std::size_t>(s.bit(i) + 1);
    h *= 1099511628211ull;
  }
  h ^= s.size();
  h *= 1099511628211ull;
  return h;
}

}  // namespace aitlab
