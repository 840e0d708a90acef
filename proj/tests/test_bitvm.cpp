#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "aitlab/bitvm.hpp"
#include "aitlab/codec.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/machine.hpp"

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

}  // namespace

TEST_CASE("two outputs then halt") {
  Program p = Program::parse(bits("001000100000"));
  RunResult r = run(p, {}, {}, 100);
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("11"));
  CHECK(r.consumed == 0);
  CHECK(r.steps == 3);
}

TEST_CASE("read twice, emit work, halt") {
  Program p = Program::parse(bits("1000100000110000"));
  RunResult r = run(p, bits("10"), {}, 100);
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("10"));
  CHECK(r.consumed == 2);
  CHECK(r.steps == 4);

  RunResult tight = run(p, bits("10"), {}, 3);
  CHECK(tight.status == RunStatus::kOutOfFuel);
  CHECK(tight.steps == 3);
}

TEST_CASE("blocked read diverges") {
  Program p = Program::parse(bits("10000000"));
  RunResult r = run(p, {}, {}, 100);
  CHECK(r.status == RunStatus::kDiverged);
  CHECK(r.steps == 1);
}

TEST_CASE("running off the program end diverges") {
  Program p = Program::parse(bits("0001"));
  RunResult r = run(p, {}, {}, 100);
  CHECK(r.status == RunStatus::kDiverged);
  CHECK(r.steps == 1);
}

TEST_CASE("truncated instruction bits are unreachable code") {
  // OUT1 then two stray bits: executing past the complete prefix diverges.
  Program p = Program::parse(bits("001011"));
  CHECK(p.instructions().size() == 1);
  RunResult r = run(p, {}, {}, 100);
  CHECK(r.status == RunStatus::kDiverged);
}

TEST_CASE("condition tape is end-detecting") {
  // CONDREAD, SKIPFLAG, JUMPB(0), OUTW, HALT: copy the condition, then stop.
  Program p = Program::parse(bits("1001" "1101" "1011" "0000" "0011" "0000"));
  RunResult r = run(p, {}, bits("101"), 100);
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("101"));
}

TEST_CASE("backward jump past the start diverges") {
  Program p = Program::parse(bits("10110000"));
  RunResult r = run(p, {}, {}, 100);
  CHECK(r.status == RunStatus::kDiverged);
}

TEST_CASE("string-code evaluator peels one header") {
  BitString prog = bits("001000100000");
  BitString input = encode_string(prog);
  RunResult r = eval_plain(input, {}, 100);
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("11"));

  UniversalBase base;
  RunResult m = base.eval(input, {}, 100);
  CHECK(m.status == RunStatus::kHalted);
  CHECK(m.output == bits("11"));
  CHECK(m.consumed == input.size());
  CHECK(m.steps == 3);
}

TEST_CASE("consumed counts the header plus the data reads") {
  BitString prog = bits("1000100000110000");
  BitString input = encode_string(prog) + bits("10");
  UniversalBase base;
  RunResult r = base.eval(input, {}, 100);
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("10"));
  CHECK(r.consumed == input.size());
  CHECK(r.steps == 4);
}

TEST_CASE("undecodable header diverges") {
  UniversalBase base;
  RunResult r = base.eval(bits("1"), {}, 100);
  CHECK(r.status == RunStatus::kDiverged);
}

TEST_CASE("prefix wrapper requires exact consumption") {
  BitString prog = bits("001000100000");
  BitString input = encode_string(prog);
  UniversalBase base;
  CHECK(eval_prefix(base, input, {}, 100).status == RunStatus::kHalted);
  CHECK(eval_prefix(base, input + bits("0"), {}, 100).status ==
        RunStatus::kDiverged);
  CHECK(eval_mode(base, RunMode::kPrefix, input, {}, 100).halted());
  CHECK(eval_mode(base, RunMode::kPlain, input + bits("0"), {}, 100).halted());
}

TEST_CASE("dovetail events match the stored transcript") {
  UniversalBase base;
  std::vector<DovetailEvent> events = dovetail(base, {}, 12);
  std::string expected =
      read_file(std::string(AITLAB_GOLDEN_DIR) + "/dovetail_bitvm_s12.txt");
  CHECK(serialize_events(events) == expected);
}

TEST_CASE("dovetail is shard-invariant") {
  UniversalBase base;
  std::vector<DovetailEvent> one = dovetail(base, {}, 10, 1);
  std::vector<DovetailEvent> four = dovetail(base, {}, 10, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == four[i]);
}

TEST_CASE("dovetail reports each input at its first halting stage") {
  UniversalBase base;
  for (const DovetailEvent& e : dovetail(base, {}, 11)) {
    CHECK(e.input.size() <= e.stage);
    RunResult at = base.eval(e.input, {}, e.stage);
    CHECK(at.halted());
    CHECK(at.output == e.output);
    CHECK(at.steps == e.steps);
    if (e.stage > 0 && e.input.size() <= e.stage - 1) {
      CHECK_FALSE(base.eval(e.input, {}, e.stage - 1).halted());
    }
  }
}

TEST_CASE("evaluating a wrapped program is running the program") {
  std::mt19937_64 gen(31);
  for (int round = 0; round < 300; ++round) {
    BitString q;
    std::size_t q_len = gen() % 24;
    for (std::size_t i = 0; i < q_len; ++i) {
      q.push_back(static_cast<int>(gen() % 2));
    }
    BitString r;
    std::size_t r_len = gen() % 8;
    for (std::size_t i = 0; i < r_len; ++i) {
      r.push_back(static_cast<int>(gen() % 2));
    }
    BitString y;
    std::size_t y_len = gen() % 5;
    for (std::size_t i = 0; i < y_len; ++i) {
      y.push_back(static_cast<int>(gen() % 2));
    }
    std::uint64_t fuel = 1 + gen() % 64;

    RunResult direct = run(Program::parse(q), r, y, fuel);
    RunResult wrapped = eval_plain(encode_string(q) + r, y, fuel);
    CHECK(wrapped.status == direct.status);
    CHECK(wrapped.output == direct.output);
    CHECK(wrapped.consumed == direct.consumed);
    CHECK(wrapped.steps == direct.steps);
  }
}

TEST_CASE("manifest round trip") {
  MachineManifest m;
  m.machine = "dispatch";
  m.mode = "prefix";
  m.fuel = 512;
  m.registry = {{3, "swap_pair"}, {4, "identity"}};
  std::string text = serialize_manifest(m);
  std::istringstream in(text);
  MachineManifest back = parse_manifest(in);
  CHECK(back.isa == m.isa);
  CHECK(back.machine == m.machine);
  CHECK(back.mode == m.mode);
  CHECK(back.fuel == m.fuel);
  CHECK(back.registry == m.registry);
}

TEST_CASE("manifest defaults") {
  std::istringstream in("");
  MachineManifest m = parse_manifest(in);
  CHECK(m.isa == "bitvm1");
  CHECK(m.machine == "bitvm");
  CHECK(m.mode == "plain");
  CHECK(m.fuel == 10000);
  CHECK(m.table_path.empty());
  CHECK(m.registry.empty());
}

TEST_CASE("table machine decodes exactly its codewords") {
  TableMachine::Table table;
  table[bits("00")] = bits("111");
  table[bits("01")] = BitString();
  TableMachine m(std::move(table));

  RunResult hit = m.eval(bits("00"), {}, 10);
  CHECK(hit.halted());
  CHECK(hit.output == bits("111"));
  CHECK(hit.consumed == 2);
  CHECK(hit.steps == 1);
  CHECK(m.eval(bits("0"), {}, 10).status == RunStatus::kDiverged);
  CHECK(m.eval(bits("000"), {}, 10).status == RunStatus::kDiverged);
  CHECK(m.eval(bits("00"), {}, 0).status == RunStatus::kOutOfFuel);

  std::ostringstream out;
  m.save(out);
  std::istringstream in(out.str());
  TableMachine back = TableMachine::load(in);
  CHECK(back.table() == m.table());
}
