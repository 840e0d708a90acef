#include "aitlab/kraft.hpp"

#include <algorithm>
#include <map>

#include "aitlab/errors.hpp"

namespace aitlab {

KraftAllocator::KraftAllocator() { free_.push_back(BitString()); }

bool KraftAllocator::feasible(std::size_t length) const {
  return !free_.empty() && free_.front().size() <= length;
}

BitString KraftAllocator::allocate(std::size_t length) {
  // Longest free string not exceeding the request; free_ is sorted by
  // length, so that is the last entry of size <= length.
  auto it = std::upper_bound(
      free_.begin(), free_.end(), length,
      [](std::size_t len, const BitString& s) { return len < s.size(); });
  if (it == free_.begin()) {
    throw Infeasible("no free string short enough for the requested length");
  }
  --it;
  BitString base = *it;
  it = free_.erase(it);
  BitString codeword = base + BitString::zeros(length - base.size());
  // Fragments base 0^j 1 have lengths |base|+1..length, none of which were
  // present (base was the longest free string <= length), so the
  // distinct-lengths invariant is preserved.
  std::vector<BitString> fragments;
  for (std::size_t j = 0; base.size() + j + 1 <= length; ++j) {
    fragments.push_back(base + BitString::zeros(j) + BitString::ones(1));
  }
  free_.insert(it, fragments.begin(), fragments.end());
  allocated_.push_back(codeword);
  return codeword;
}

Dyadic KraftAllocator::allocated_mass() const {
  Dyadic sum;
  for (const BitString& s : allocated_) {
    sum = sum + Dyadic::pow2(-static_cast<std::int64_t>(s.size()));
  }
  return sum;
}

Dyadic KraftAllocator::free_mass() const {
  Dyadic sum;
  for (const BitString& s : free_) {
    sum = sum + Dyadic::pow2(-static_cast<std::int64_t>(s.size()));
  }
  return sum;
}

std::string KraftAllocator::dump_state() const {
  std::string out;
  for (const BitString& s : free_) {
    out += s.text();
    out += '\n';
  }
  return out;
}

std::vector<RevisionOutcome> allocate_revisions(
    const std::vector<LengthRequest>& stream) {
  KraftAllocator alloc;
  std::map<BitString, std::size_t, LengthLexLess> last;
  std::vector<RevisionOutcome> out;
  out.reserve(stream.size());
  for (const LengthRequest& req : stream) {
    auto it = last.find(req.label);
    if (it != last.end() && req.length >= it->second) {
      throw InvalidInput("revisions per label must be strictly decreasing");
    }
    last[req.label] = req.length;
    out.push_back(RevisionOutcome{req.label, req.length, alloc.allocate(req.length)});
  }
  return out;
}

}  // namespace aitlab
