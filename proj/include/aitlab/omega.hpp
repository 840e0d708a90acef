#ifndef AITLAB_OMEGA_HPP
#define AITLAB_OMEGA_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/kraft.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

// Exact lower bound on the halting probability: total 2^-|p| over inputs
// that prefix-halt within the horizon. Monotone in the horizon, <= 1 for
// machines whose prefix domain is an antichain.
Dyadic omega_lower(const Machine& m, const BitString& cond, const Horizon& h,
                   unsigned shards = 1);

struct DomainReport {
  std::uint64_t domain_size = 0;
  bool prefix_free = true;
  // Offending (shorter, extension) pairs, adjacent in lexicographic order;
  // every prefix relation in the domain is witnessed by at least one.
  std::vector<std::pair<BitString, BitString>> violations;
};

// Exhaustively collects the prefix-halting domain within the horizon and
// audits it for comparable pairs.
DomainReport prefix_domain_check(const Machine& m, const BitString& cond,
                                 const Horizon& h, unsigned shards = 1);

// Feeds a revision stream through the codeword allocator and exposes the
// result as a decoder table. Every allocated codeword decodes to its
// label, so a label's shortest description is its final requested length.
TableMachine machine_from_requests(const std::vector<LengthRequest>& stream,
                                   std::string name = "requests");

// Splits a revision stream at `split`: labels settled entirely in the head
// pass through once at their final length, labels still being revised in
// the tail keep their whole revision family. The family for a label of
// final length k costs at most 2^(1-k), so the transform is feasible
// whenever the tail's final lengths fit twice over in the head's leftover
// budget; that is checked exactly and violated streams are rejected.
std::vector<LengthRequest> tail_double_transform(
    const std::vector<LengthRequest>& requests, std::size_t split);

// Exponent map with finite support; absent strings carry no mass.
using ExponentMap = std::map<BitString, std::uint64_t, LengthLexLess>;

Dyadic exponent_mass(const ExponentMap& k);

struct MergeStage {
  std::uint32_t t = 0;
  Dyadic sum_k;       // mass of the input stage
  Dyadic alpha;       // extra mass the revision is asked to carry
  Dyadic sum_kprime;  // mass of the revised stage
};

struct MergeResult {
  std::vector<ExponentMap> kprime;
  std::vector<MergeStage> trace;
};

// Stagewise revision K' of a pointwise non-increasing sequence K that adds
// alpha_t of mass: K'_0 = K_0, later stages take the pointwise minimum
// with the previous revision and close the remaining gap exactly with
// fresh strings outside every stage's support, one per term of the gap's
// binary expansion. The result satisfies, at every stage,
//   sum 2^-K_t + alpha_t - slack(t) <= sum 2^-K'_t <= sum 2^-K_t + alpha_t
// with the upper bound tight.
MergeResult merge_construction(
    const std::vector<ExponentMap>& k_stages, const std::vector<Dyadic>& alpha,
    const std::function<Dyadic(std::uint32_t)>& slack);

std::string serialize_trace(const std::vector<MergeStage>& trace);

struct MergeInstance {
  std::vector<ExponentMap> k_stages;
  std::vector<Dyadic> alpha;
};

// Deterministic random instance that satisfies the merge preconditions:
// supports grow, values only decrease, alpha is non-decreasing with
// alpha_0 = 0, and the combined mass stays below one.
MergeInstance random_merge_instance(std::uint64_t seed, std::size_t max_strings,
                                    std::size_t max_stages);

}  // namespace aitlab

#endif  // AITLAB_OMEGA_HPP
