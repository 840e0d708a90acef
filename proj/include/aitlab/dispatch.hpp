#pragma once
// The dispatch machine: a universal evaluator whose first ten input bits
// name a built-in behavior. Constant index i is the 10-bit big-endian form
// of i. Reserved indices:
//
//   0    embedded string-code evaluator on the rest of the input
//   1    evaluate the rest with the condition dropped to the empty string
//   2    output the condition
//   300  pair builder: e(p) then q, output pair(val(p, cond), val(q, ...))
//   301  reverse witness for the first pair component
//   302  reverse witness for the second pair component
//
// Odd slots 2i+1 apply a registered binary transform to the inner result;
// even slots 2i+2 re-condition the inner evaluation through a registered
// unary transform. Inputs shorter than ten bits, or naming an unregistered
// slot, diverge. All nested work shares one fuel budget: entering a
// dispatch layer costs one unit, applying a transform costs one unit, each
// interpreter step costs one unit, and each internal enumeration stage
// costs one unit.
//
// Indices 301/302 decode by re-running this machine's own dovetailed
// enumeration (the implementation has its own code in hand, so the
// fixed-point the construction asks for is realized directly): with
// condition z, programs of length <= n are dovetailed, every halting output
// w is split as pair(x, y), and
//
//   301: e(n) e(m) u  ->  the u-th x (0-based, qualification order) that
//        accumulates at least 2^m distinct partners y,
//   302: e(n) u with condition pair(x, z)  ->  the u-th partner y of x
//        (0-based, discovery order).
//
// In both forms u is the big-endian value of every input bit remaining
// after the length codes, so these two regions read their whole input.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/bitvm.hpp"
#include "aitlab/kraft.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

inline constexpr unsigned kDispatchConstantBits = 10;
inline constexpr unsigned kDispatchBase = 0;
inline constexpr unsigned kDispatchDropCond = 1;
inline constexpr unsigned kDispatchSelf = 2;
inline constexpr unsigned kDispatchPair = 300;
inline constexpr unsigned kDispatchReverseFirst = 301;
inline constexpr unsigned kDispatchReverseSecond = 302;

// 10-bit big-endian constant for index i (i < 1024).
BitString dispatch_constant(unsigned index);

struct BinaryTransform {
  std::string name;
  std::function<BitString(const BitString&, const BitString&)> apply;
};

struct UnaryTransform {
  std::string name;
  std::function<BitString(const BitString&)> apply;
};

// Slot assignment for the transform constants. Reserved indices are
// refused, as are duplicate slots, odd slots for unary transforms and even
// slots for binary ones.
class TransformRegistry {
 public:
  static TransformRegistry builtin();
  static TransformRegistry from_manifest(
      const std::vector<std::pair<unsigned, std::string>>& entries);

  void add_binary(unsigned slot, const std::string& name);
  void add_unary(unsigned slot, const std::string& name);

  const BinaryTransform* binary_at(unsigned slot) const;
  const UnaryTransform* unary_at(unsigned slot) const;

  // One "slot=<index> name=<transform-name>" line per entry, slot order.
  std::string manifest() const;

 private:
  std::map<unsigned, BinaryTransform> binary_;
  std::map<unsigned, UnaryTransform> unary_;
};

// Named transform lookup (the vocabulary manifests may use).
const BinaryTransform* find_binary_transform(const std::string& name);
const UnaryTransform* find_unary_transform(const std::string& name);

// Syntactic witness constructors. Each wraps a payload in one dispatch
// layer; evaluating the result transports the payload's output through
// the named behavior at a fixed 10-bit cost (10 + |e(p)| for pair_direct).
BitString self_witness();
BitString lift_cond(const BitString& p);
BitString apply_f(unsigned odd_slot, const BitString& p);
BitString recondition_g(unsigned even_slot, const BitString& p);
BitString pair_direct(const BitString& p, const BitString& q);

class DispatchMachine : public Machine {
 public:
  explicit DispatchMachine(TransformRegistry registry = TransformRegistry::builtin());

  RunResult eval(const BitString& input, const BitString& cond,
                 std::uint64_t fuel) const override;
  std::string name() const override { return "dispatch"; }

  const TransformRegistry& registry() const { return registry_; }

  struct ReverseWitnesses {
    BitString p301;
    BitString p302;
    unsigned m = 0;
    std::uint64_t index_first = 0;
    std::uint64_t index_second = 0;
  };

  // Replays the machine's own enumeration with condition z for `stages`
  // stages. If pair(x, y) is discovered with a description of length <= n,
  // returns the two decodable witnesses; otherwise nullopt.
  std::optional<ReverseWitnesses> reverse_witnesses(const BitString& x,
                                                    const BitString& y,
                                                    const BitString& z,
                                                    unsigned n,
                                                    std::uint32_t stages) const;

  RunResult eval_metered(BitReader& input, const BitString& cond,
                         Budget& budget) const;

 private:
  TransformRegistry registry_;
  UniversalBase base_;
};

// Prop-1 style rewrite around any machine D: inputs starting with d zeros
// run the embedded string-code evaluator on the remainder; every other
// input keeps D's behavior.
class ZeroRegionMachine : public Machine {
 public:
  ZeroRegionMachine(const Machine& inner, unsigned zeros);

  RunResult eval(const BitString& input, const BitString& cond,
                 std::uint64_t fuel) const override;
  std::string name() const override;

 private:
  const Machine* inner_;
  unsigned zeros_;
  UniversalBase base_;
};

ZeroRegionMachine optimal_to_universal(const Machine& d, unsigned zeros);

struct ZeroRegionReport {
  unsigned zeros = 0;
  std::uint32_t max_len = 0;
  std::uint64_t fuel = 0;
  // Outputs whose every minimal-length description starts with 0^zeros, or
  // that have at least one such minimal description; each entry is
  // (output, one offending minimal description).
  std::vector<std::pair<BitString, BitString>> shadowed_minimal;
  // Outputs where the embedded region supplies a strictly shorter
  // description (or a new output); (output, embedded description).
  std::vector<std::pair<BitString, BitString>> embedded_shorter;

  bool clean() const {
    return shadowed_minimal.empty() && embedded_shorter.empty();
  }
};

ZeroRegionReport check_zero_region(const Machine& d, unsigned zeros,
                                   const BitString& cond, std::uint32_t max_len,
                                   std::uint64_t fuel);

// One codeword of every length K(x)+1 .. K(x)+depth per entry, carved by a
// fresh allocator in (length-lex x, increasing length) order.
TableMachine geometric_machine(
    const std::map<BitString, unsigned, LengthLexLess>& k_values,
    unsigned depth);

}  // namespace aitlab
