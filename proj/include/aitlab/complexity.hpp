#ifndef AITLAB_COMPLEXITY_HPP
#define AITLAB_COMPLEXITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

// Finite search horizon: description lengths up to max_len, each run
// metered by fuel. A larger horizon never increases an estimate.
struct Horizon {
  std::uint32_t max_len = 0;
  std::uint64_t fuel = 0;

  Horizon(std::uint32_t max_len, std::uint64_t fuel);
};

struct ComplexityEstimate {
  std::uint64_t value = 0;  // length of the best description found
  BitString witness;        // lexicographically least among that length
};

// Least description length within the horizon: scans candidates in
// (length, lex) order and returns the first s with eval(s, cond) = x.
std::optional<ComplexityEstimate> k_upper(const Machine& m, const BitString& x,
                                          const BitString& cond,
                                          const Horizon& h,
                                          RunMode mode = RunMode::kPlain);

using KTable = std::map<BitString, ComplexityEstimate, LengthLexLess>;

// One exhaustive sweep over descriptions of length <= max_len, recording
// the best estimate per produced output. Sharding splits candidates by
// length-lex rank; the merged table is identical for any shard count.
KTable k_table(const Machine& m, const BitString& cond, const Horizon& h,
               RunMode mode = RunMode::kPlain, unsigned shards = 1);

// Folds one shard's sweep results into an accumulating table, keeping the
// smaller value and breaking ties toward the length-lex least witness.
void merge_k_tables(KTable& into, const KTable& from);

std::string serialize_k_table(const KTable& table);

// Sum of 2^-value over a table; with prefix-mode estimates this lower
// bounds the machine's halting probability.
Dyadic table_mass(const KTable& table);

// Randomness deficiency |x| - K(x | binary(|x|)) within the horizon. When
// the search finds nothing the honest bound is nonpositive: zero for
// strings short enough that the sweep was exhaustive over their length.
std::int64_t deficiency(const Machine& m, const BitString& x,
                        const Horizon& h, RunMode mode = RunMode::kPlain);

// Exact scaled tail weight 2^k * prob; values above one simply report
// that the bound carries no information at this k.
Dyadic effective_p_value(std::uint64_t k, const Dyadic& prob);

// Direct lower bound on the a-priori mass of x: total 2^-|p| over
// prefix-halting descriptions p of x within the horizon.
Dyadic semimeasure_estimate(const Machine& m, const BitString& x,
                            const BitString& cond, const Horizon& h);

struct EmpiricalResult {
  std::map<BitString, std::uint64_t, LengthLexLess> counts;
  std::uint64_t samples = 0;
  std::uint64_t halted = 0;
};

// Monte Carlo halting statistics: each sample draws a length uniformly
// from [0, max_len], then uniform bits, and runs the machine plain.
EmpiricalResult empirical_a_priori(const Machine& m, const BitString& cond,
                                   std::uint32_t max_len, std::uint64_t fuel,
                                   std::uint64_t samples, std::uint64_t seed);

// Spearman rank correlation with average ranks on ties; NaN-free, returns
// 0 when either side is constant.
double spearman(const std::vector<std::pair<double, double>>& xy);

}  // namespace aitlab

#endif  // AITLAB_COMPLEXITY_HPP
