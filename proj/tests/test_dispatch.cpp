#include "doctest.h"

#include <fstream>
#include <sstream>

#include "aitlab/bitvm.hpp"
#include "aitlab/codec.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/dispatch.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/verify.hpp"

using namespace aitlab;

namespace {

BitString bits(const char* text) { return BitString::from_text(text); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const DispatchMachine& machine() {
  static const DispatchMachine m;
  return m;
}

}  // namespace

TEST_CASE("constants are ten-bit big-endian") {
  CHECK(dispatch_constant(0) == bits("0000000000"));
  CHECK(dispatch_constant(2) == bits("0000000010"));
  CHECK(dispatch_constant(300) == bits("0100101100"));
  CHECK(dispatch_constant(301) == bits("0100101101"));
  CHECK_THROWS_AS(dispatch_constant(1024), InvalidInput);
}

TEST_CASE("short inputs and unregistered slots diverge") {
  CHECK(machine().eval(bits("000000001"), bits("1"), 100).status ==
        RunStatus::kDiverged);
  // Slot 15 is odd and empty in the builtin registry.
  CHECK(machine().eval(dispatch_constant(15) + bits("0000000010"), bits("1"),
                       100).status == RunStatus::kDiverged);
}

TEST_CASE("self constant outputs the condition") {
  RunResult r = machine().eval(self_witness(), bits("101"), 100);
  CHECK(r.halted());
  CHECK(r.output == bits("101"));
  CHECK(r.consumed == 10);
  CHECK(r.steps == 1);
  CHECK(self_witness().size() == 10);
}

TEST_CASE("drop constant erases the condition") {
  BitString p = lift_cond(self_witness());
  RunResult r = machine().eval(p, bits("101"), 100);
  CHECK(r.halted());
  CHECK(r.output == BitString());
  CHECK(r.consumed == 20);
  CHECK(r.steps == 2);
}

TEST_CASE("odd slots post-compose a binary transform") {
  BitString y = bits("1101");
  BitString p = self_witness();
  RunResult swapped = machine().eval(apply_f(3, p), y, 100);
  CHECK(swapped.halted());
  auto [a, b] = unpair_strings(y);
  CHECK(swapped.output == pair_strings(b, a));

  RunResult appended = machine().eval(apply_f(9, p), y, 100);
  CHECK(appended.output == y + bits("1"));

  RunResult doubled = machine().eval(apply_f(5, p), y, 100);
  CHECK(doubled.output == y + y);

  CHECK(apply_f(3, p).size() == p.size() + 10);
  CHECK_THROWS_AS(apply_f(4, p), InvalidInput);
  CHECK_THROWS_AS(apply_f(301, p), InvalidInput);
}

TEST_CASE("even slots pre-compose a condition rewrite") {
  BitString y = bits("1101");
  BitString p = self_witness();
  CHECK(machine().eval(recondition_g(4, p), y, 100).output == y);
  CHECK(machine().eval(recondition_g(6, p), y, 100).output ==
        pair_strings(y, BitString()));
  CHECK(machine().eval(recondition_g(8, p), y, 100).output ==
        unpair_strings(y).first);
  CHECK(machine().eval(recondition_g(10, p), y, 100).output ==
        BitString::binary(y.size()));
  CHECK_THROWS_AS(recondition_g(3, p), InvalidInput);
  CHECK_THROWS_AS(recondition_g(300, p), InvalidInput);
}

TEST_CASE("pair constant transports both evaluations") {
  BitString y = bits("10");
  BitString p = self_witness();
  BitString q = self_witness();
  BitString w = pair_direct(p, q);
  CHECK(w.size() == 10 + encode_string(p).size() + q.size());
  RunResult r = machine().eval(w, y, 1000);
  CHECK(r.halted());
  // The second leg runs under pair(first value, y).
  BitString expected = pair_strings(y, pair_strings(y, y));
  CHECK(r.output == expected);
}

TEST_CASE("registry refuses reserved and mismatched slots") {
  TransformRegistry r;
  CHECK_THROWS_AS(r.add_binary(2, "swap_pair"), InvalidInput);
  CHECK_THROWS_AS(r.add_binary(300, "swap_pair"), InvalidInput);
  CHECK_THROWS_AS(r.add_binary(4, "swap_pair"), InvalidInput);
  CHECK_THROWS_AS(r.add_unary(3, "identity"), InvalidInput);
  CHECK_THROWS_AS(r.add_binary(3, "no_such"), InvalidInput);
  r.add_binary(3, "swap_pair");
  CHECK_THROWS_AS(r.add_binary(3, "concat_cond"), InvalidInput);
  CHECK(r.binary_at(3) != nullptr);
  CHECK(r.unary_at(4) == nullptr);
}

TEST_CASE("registry manifest round trip") {
  TransformRegistry r = TransformRegistry::builtin();
  std::istringstream in(r.manifest());
  TransformRegistry back = TransformRegistry::from_manifest(
      parse_manifest(in).registry);
  for (unsigned slot : {3u, 5u, 7u, 9u, 11u, 13u}) {
    REQUIRE(back.binary_at(slot) != nullptr);
    CHECK(back.binary_at(slot)->name == r.binary_at(slot)->name);
  }
  for (unsigned slot : {4u, 6u, 8u, 10u}) {
    REQUIRE(back.unary_at(slot) != nullptr);
    CHECK(back.unary_at(slot)->name == r.unary_at(slot)->name);
  }
}

TEST_CASE("description sweep finds only the self constant at desk scale") {
  Horizon h(14, 10000);
  KTable t = k_table(machine(), bits("101"), h);
  REQUIRE(t.size() == 1);
  const ComplexityEstimate& e = t.begin()->second;
  CHECK(t.begin()->first == bits("101"));
  CHECK(e.value == 10);
  CHECK(e.witness == bits("0000000010"));
}

TEST_CASE("dovetail transcript of the dispatch machine is stable") {
  std::vector<DovetailEvent> events = dovetail(machine(), {}, 12);
  std::string expected =
      read_file(std::string(AITLAB_GOLDEN_DIR) + "/dovetail_dispatch_s12.txt");
  CHECK(serialize_events(events) == expected);
}

TEST_CASE("reverse witnesses decode a planted pair") {
  BitString x = bits("1");
  BitString y = bits("0");
  BitString z = bits("000");
  auto w = machine().reverse_witnesses(x, y, z, 12, 12);
  REQUIRE(w.has_value());
  CHECK(w->p301 == bits("01001011011001100000000000000000"));
  CHECK(w->p302 == bits("010010111010011000"));
  CHECK(w->p301.size() == 32);
  CHECK(w->p302.size() == 18);

  RunResult first = machine().eval(w->p301, z, 2000000);
  CHECK(first.halted());
  CHECK(first.output == x);
  RunResult second = machine().eval(w->p302, pair_strings(x, z), 2000000);
  CHECK(second.halted());
  CHECK(second.output == y);
}

TEST_CASE("reverse witnesses fail honestly when nothing qualifies") {
  CHECK_FALSE(machine()
                  .reverse_witnesses(bits("111111"), bits("0"), bits("1"), 4, 6)
                  .has_value());
}

TEST_CASE("zero region rewrite is clean exactly past the self constant") {
  Horizon h(14, 10000);
  ZeroRegionReport eight = check_zero_region(machine(), 8, bits("101"),
                                             h.max_len, h.fuel);
  CHECK_FALSE(eight.clean());
  CHECK_FALSE(eight.shadowed_minimal.empty());

  ZeroRegionReport nine = check_zero_region(machine(), 9, bits("101"),
                                            h.max_len, h.fuel);
  CHECK(nine.clean());
}

TEST_CASE("zero region rewrite preserves the sweep at the clean distance") {
  Horizon h(14, 10000);
  ZeroRegionMachine lifted = optimal_to_universal(machine(), 9);
  KTable original = k_table(machine(), bits("101"), h);
  KTable rewritten = k_table(lifted, bits("101"), h);
  CHECK(original.size() == rewritten.size());
  for (const auto& [output, est] : original) {
    REQUIRE(rewritten.count(output) == 1);
    CHECK(rewritten.at(output).value == est.value);
    CHECK(rewritten.at(output).witness == est.witness);
  }
}

TEST_CASE("zero region machine runs the embedded evaluator on zeros") {
  ZeroRegionMachine lifted = optimal_to_universal(machine(), 9);
  BitString prog = bits("001000100000");
  BitString embedded = BitString::zeros(9) + encode_string(prog);
  RunResult r = lifted.eval(embedded, bits("101"), 1000);
  CHECK(r.halted());
  CHECK(r.output == bits("11"));
  // Off the zero region the inner machine answers.
  RunResult self = lifted.eval(bits("0000000010"), bits("101"), 1000);
  CHECK(self.halted());
  CHECK(self.output == bits("101"));
}

TEST_CASE("geometric machine carries a truncated geometric mass") {
  std::map<BitString, unsigned, LengthLexLess> k_values;
  k_values[bits("1")] = 2;
  k_values[bits("00")] = 3;
  unsigned depth = 5;
  TableMachine m = geometric_machine(k_values, depth);

  std::map<BitString, Dyadic, LengthLexLess> mass;
  for (const auto& [codeword, output] : m.table()) {
    mass[output] = mass[output] +
                   Dyadic::pow2(-std::int64_t(codeword.size()));
    RunResult r = m.eval(codeword, {}, 10);
    CHECK(r.halted());
    CHECK(r.output == output);
  }
  REQUIRE(mass.size() == 2);
  Dyadic scale = Dyadic::one() - Dyadic::pow2(-std::int64_t(depth));
  CHECK(mass[bits("1")] == Dyadic::pow2(-2) * scale);
  CHECK(mass[bits("00")] == Dyadic::pow2(-3) * scale);
}

TEST_CASE("constant audit passes on the builtin machine") {
  Horizon h(14, 4000);
  for (const ConstantCheck& c : verify_dispatch_constants(machine(), h, 3)) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
}
