#ifndef AITLAB_COMBINATORICS_HPP
#define AITLAB_COMBINATORICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"

namespace aitlab {

struct AdderRun {
  std::uint64_t steps = 0;
  std::uint64_t sum = 0;
};

// Carry-save addition: (a, b) -> (a xor b, (a and b) << 1) until the carry
// word is zero. Steps count loop-body executions, so (x, 0) costs one.
AdderRun adder_run(std::uint64_t x, std::uint64_t y);
std::uint64_t adder_steps(std::uint64_t x, std::uint64_t y);

struct AdderSweep {
  unsigned bits = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t max_steps = 0;
  Dyadic mean;  // total / 2^(2 bits), exact
};

// Exhaustive step statistics over all pairs of `bits`-bit operands.
AdderSweep adder_sweep(unsigned bits);

// Round-robin results: one bit per unordered pair {i < j} in row-major
// order, 1 meaning i beats j.
struct Tournament {
  unsigned n = 0;
  BitString edges;

  bool beats(unsigned i, unsigned j) const;
};

// Index of pair {i < j} in the canonical edge order.
std::size_t edge_index(unsigned n, unsigned i, unsigned j);

Tournament make_tournament(unsigned n, const BitString& edges);

// Literal form "n:<edgebits>".
Tournament parse_tournament(const std::string& text);
std::string serialize_tournament(const Tournament& t);

unsigned ceil_log2(unsigned n);

// Drops the edges inside a planted transitive vertex list, spending
// ceil(log2 n) bits per listed vertex instead: the list is stored in
// dominance order, so those edges are implied. Total length is exactly
// v*ceil(log2 n) + C(n,2) - C(v,2).
BitString encode_tournament(const Tournament& t,
                            const std::vector<unsigned>& transitive);
Tournament decode_tournament(unsigned n, unsigned v, const BitString& code);

// Size of the largest vertex subset linearly ordered by the beats
// relation. Exhaustive; capped at n <= 16.
unsigned max_transitive_size(const Tournament& t);

// Distribution of max_transitive_size over all 2^C(n,2) tournaments.
std::map<unsigned, std::uint64_t> transitive_size_histogram(unsigned n);

struct TournamentBoundRow {
  unsigned v = 0;
  std::uint64_t exact = 0;       // tournaments with max transitive size >= v
  std::uint64_t bound_log2 = 0;  // v ceil(log2 n) + C(n,2) - C(v,2)
  bool vacuous = false;          // bound at least the total tournament count
  bool holds = false;
};

// Compares the exact counts against the encoding bound 2^bound_log2 for
// every subtournament size v. The inequality is a theorem; rows at small v
// are typically vacuous and flagged as such.
std::vector<TournamentBoundRow> tournament_bound_check(unsigned n);

struct TripleSet {
  unsigned nx = 0;
  unsigned ny = 0;
  unsigned nz = 0;
  std::vector<std::tuple<unsigned, unsigned, unsigned>> triples;
};

struct ProjectionsReport {
  std::uint64_t count = 0;
  std::uint64_t xy = 0;
  std::uint64_t yz = 0;
  std::uint64_t xz = 0;
  bool holds = false;  // count^2 <= xy * yz * xz
};

// Exact projection cardinalities and the quadratic inequality between
// them. Ground sets are capped at 64 per axis.
ProjectionsReport projections_check(const TripleSet& a);

}  // namespace aitlab

#endif  // AITLAB_COMBINATORICS_HPP
