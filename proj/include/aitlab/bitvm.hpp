#pragma once
// The bit-tape virtual machine and the string-code evaluator built on it.
//
// Sixteen fixed 4-bit opcodes; JF/JB carry a 4-bit immediate. State is a
// work string W, an append-only output string O, a one-bit flag F, a data
// cursor and a condition cursor. The data tape has no end marker: a blocked
// read diverges (a longer input may supply the bit). The condition tape is
// end-detecting through F. Each executed instruction costs one fuel unit.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

enum class Opcode : std::uint8_t {
  kHalt = 0x0,       // stop; output is O
  kOut0 = 0x1,       // append 0 to O
  kOut1 = 0x2,       // append 1 to O
  kOutW = 0x3,       // append W to O
  kWork0 = 0x4,      // append 0 to W
  kWork1 = 0x5,      // append 1 to W
  kWorkClear = 0x6,  // W := empty
  kWorkPop = 0x7,    // drop last bit of W (no-op when empty)
  kRead = 0x8,       // consume next data bit into W; blocked read diverges
  kCondRead = 0x9,   // next condition bit into W and F:=0, or F:=1 at end
  kJumpF = 0xa,      // jump forward imm+1 instructions
  kJumpB = 0xb,      // jump backward imm+2 instructions
  kSkipWEmpty = 0xc, // skip next instruction (with immediate) if W empty
  kSkipFlag = 0xd,   // skip next instruction (with immediate) if F=1
  kWorkShift = 0xe,  // remove first bit of W into F, or F:=1 when empty
  kNop = 0xf,
};

struct Instruction {
  Opcode op;
  std::uint8_t imm = 0;
};

// Positional decode of complete instructions. Bits past the last complete
// instruction are kept; execution diverges if the program counter reaches
// them (truncated opcode or immediate) or runs past the end.
class Program {
 public:
  static Program parse(const BitString& code);

  const BitString& code() const { return code_; }
  const std::vector<Instruction>& instructions() const { return instrs_; }

 private:
  BitString code_;
  std::vector<Instruction> instrs_;
};

// Core interpreter; consumed counts data bits. The reader form composes
// with evaluators that feed the machine from a longer stream.
RunResult run(const Program& program, const BitString& data,
              const BitString& cond, std::uint64_t fuel);
RunResult run_metered(const Program& program, BitReader& data,
                      const BitString& cond, Budget& budget);

// Universal-by-adjunction evaluator: parses s as encode_string(q)
// followed by remainder r and returns run(q, r, cond, fuel) verbatim
// (an undecodable prefix diverges).
RunResult eval_plain(const BitString& s, const BitString& cond,
                     std::uint64_t fuel);

// The same evaluator as a streaming Machine; consumed counts the string-code
// header as well as the data reads, which is what prefix wrapping needs.
class UniversalBase : public Machine {
 public:
  RunResult eval(const BitString& input, const BitString& cond,
                 std::uint64_t fuel) const override;
  std::string name() const override { return "bitvm"; }

  RunResult eval_metered(BitReader& input, const BitString& cond,
                         Budget& budget) const;
};

struct DovetailEvent {
  BitString input;
  BitString output;
  std::uint32_t stage = 0;
  std::uint64_t steps = 0;
};

bool operator==(const DovetailEvent& a, const DovetailEvent& b);

// Stage t runs every input of length <= t with fuel t; an input is reported
// once, at the first stage where its plain evaluation halts. Events are
// ordered by (stage, input length, input lex). The shard split partitions
// inputs by length-lex rank; the merged list is identical for every shard
// count.
std::vector<DovetailEvent> dovetail(const Machine& m, const BitString& cond,
                                    std::uint32_t stages, unsigned shards = 1);

// One "event input=... output=... stage=... steps=..." line per event.
std::string serialize_events(const std::vector<DovetailEvent>& events);

// Machine manifest: key=value lines (keys isa, machine, mode, fuel, table)
// plus registry lines "slot=<index> name=<transform-name>".
struct MachineManifest {
  std::string isa = "bitvm1";
  std::string machine = "bitvm";  // bitvm | dispatch | table
  std::string mode = "plain";     // plain | prefix
  std::uint64_t fuel = 10000;
  std::string table_path;
  std::vector<std::pair<unsigned, std::string>> registry;
};

MachineManifest parse_manifest(std::istream& in);
std::string serialize_manifest(const MachineManifest& m);

}  // namespace aitlab
