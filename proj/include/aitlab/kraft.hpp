#pragma once
// Online Kraft-Chaitin codeword allocator. State is an antichain of free
// strings with pairwise distinct lengths (initially just the empty string).
// A length-l request takes the longest free string s with |s| <= l, emits
// s 0^(l-|s|), and returns the fragments s 0^j 1, j = 0..l-|s|-1, to the
// free set in increasing length order. Mass accounting is exact.

#include <cstdint>
#include <string>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"

namespace aitlab {

class KraftAllocator {
 public:
  KraftAllocator();

  // Throws Infeasible when no free string of length <= length exists
  // (equivalently, the running mass would exceed 1).
  BitString allocate(std::size_t length);
  bool feasible(std::size_t length) const;

  // Free strings sorted by length (lengths are pairwise distinct).
  const std::vector<BitString>& free_strings() const { return free_; }
  const std::vector<BitString>& allocations() const { return allocated_; }

  Dyadic allocated_mass() const;
  Dyadic free_mass() const;

  // One free string per line, sorted by length then lexicographically.
  std::string dump_state() const;

 private:
  std::vector<BitString> free_;       // sorted by length ascending
  std::vector<BitString> allocated_;  // in allocation order
};

struct LengthRequest {
  BitString label;
  std::size_t length;
};

struct RevisionOutcome {
  BitString label;
  std::size_t length;
  BitString codeword;
};

// Allocates a stream of (label, length) requests where later requests for
// the same label carry strictly smaller lengths. Throws InvalidInput on a
// non-decreasing revision and Infeasible exactly at the first request the
// allocator cannot satisfy.
std::vector<RevisionOutcome> allocate_revisions(
    const std::vector<LengthRequest>& stream);

}  // namespace aitlab
