#pragma once
// Machine abstraction shared by the evaluators: a machine maps an input
// string and a condition string to an output, under an explicit fuel
// budget. Inputs are consumed as a stream; `consumed` reports how many
// input bits a halting run actually read, which is what the prefix-free
// wrapper keys on.

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "aitlab/bitstring.hpp"

namespace aitlab {

enum class RunStatus { kHalted, kOutOfFuel, kDiverged };

const char* to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::kDiverged;
  BitString output;
  std::uint64_t consumed = 0;  // input bits read; meaningful when halted
  std::uint64_t steps = 0;     // fuel units spent

  bool halted() const { return status == RunStatus::kHalted; }

  static RunResult halt(BitString out, std::uint64_t consumed, std::uint64_t steps) {
    return RunResult{RunStatus::kHalted, std::move(out), consumed, steps};
  }
  static RunResult out_of_fuel(std::uint64_t steps) {
    return RunResult{RunStatus::kOutOfFuel, {}, 0, steps};
  }
  static RunResult diverged(std::uint64_t steps) {
    return RunResult{RunStatus::kDiverged, {}, 0, steps};
  }
};

bool operator==(const RunResult& a, const RunResult& b);

// Fuel accounting as a chain of allowances. A top-level evaluation owns the
// root; a dovetailed sub-evaluation gets a fresh per-stage allowance linked
// under its caller, so every unit it spends also drains every enclosing
// allowance. A spend that fails at the sub-evaluation's own level is a
// local verdict (retry at a later stage); a trip anywhere above aborts the
// whole evaluation.
class Budget {
 public:
  explicit Budget(std::uint64_t local, Budget* parent = nullptr)
      : local_(local), parent_(parent) {}

  bool spend(std::uint64_t n) {
    if (local_ < n) {
      local_ = 0;
      tripped_ = true;
      return false;
    }
    if (parent_ != nullptr && !parent_->spend(n)) return false;
    local_ -= n;
    return true;
  }
  std::uint64_t remaining() const { return local_; }
  bool tripped() const { return tripped_; }
  bool ancestor_tripped() const {
    for (const Budget* b = parent_; b != nullptr; b = b->parent_) {
      if (b->tripped_) return true;
    }
    return false;
  }

 private:
  std::uint64_t local_;
  Budget* parent_;
  bool tripped_ = false;
};

// Read-only cursor over a BitString.
class BitReader {
 public:
  explicit BitReader(const BitString& s, std::size_t pos = 0) : s_(&s), pos_(pos) {}

  std::optional<int> next() {
    if (pos_ >= s_->size()) return std::nullopt;
    return s_->bit(pos_++);
  }
  void skip(std::size_t n) { pos_ = std::min(pos_ + n, s_->size()); }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return s_->size() - pos_; }
  const BitString& source() const { return *s_; }

 private:
  const BitString* s_;
  std::size_t pos_;
};

class Machine {
 public:
  virtual ~Machine() = default;

  // Plain evaluation: trailing unread input bits are permitted; reading
  // past the end of the input diverges.
  virtual RunResult eval(const BitString& input, const BitString& cond,
                         std::uint64_t fuel) const = 0;
  virtual std::string name() const = 0;
};

// Exact-consumption semantics: halts only when the underlying run halts
// having consumed every bit of the input. For machines that never detect
// the end of their input this makes the domain an antichain.
RunResult eval_prefix(const Machine& m, const BitString& input,
                      const BitString& cond, std::uint64_t fuel);

enum class RunMode { kPlain, kPrefix };

RunResult eval_mode(const Machine& m, RunMode mode, const BitString& input,
                    const BitString& cond, std::uint64_t fuel);

// Finite decoder table: halts exactly on its codewords, consuming the whole
// input. Lookup costs one fuel unit. The table is not required to be
// prefix-free; auditing that is the domain checker's job.
class TableMachine : public Machine {
 public:
  using Table = std::map<BitString, BitString, LengthLexLess>;

  explicit TableMachine(Table table, std::string name = "table");

  RunResult eval(const BitString& input, const BitString& cond,
                 std::uint64_t fuel) const override;
  std::string name() const override { return name_; }

  const Table& table() const { return table_; }

  // Serialization: one "codeword<TAB>output" line per entry.
  static TableMachine load(std::istream& in, std::string name = "table");
  void save(std::ostream& out) const;

 private:
  Table table_;
  std::string name_;
};

// Enumerates all strings of length <= max_len in (length, lex) order,
// optionally restricted to one shard by length-lex rank.
template <typename Fn>
void for_each_string(std::size_t max_len, Fn&& fn, unsigned shards = 1,
                     unsigned shard = 0) {
  std::uint64_t rank = 0;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::uint64_t count = std::uint64_t(1) << len;
    for (std::uint64_t v = 0; v < count; ++v, ++rank) {
      if (shards > 1 && rank % shards != shard) continue;
      fn(BitString::from_uint(v, len));
    }
  }
}

}  // namespace aitlab
