#include "aitlab/machine.hpp"

#include <istream>
#include <ostream>

#include "aitlab/errors.hpp"

namespace aitlab {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kHalted: return "HALTED";
    case RunStatus::kOutOfFuel: return "OUT_OF_FUEL";
    case RunStatus::kDiverged: return "DIVERGED";
  }
  return "UNKNOWN";
}

bool operator==(const RunResult& a, const RunResult& b) {
  if (a.status != b.status) return false;
  if (a.status != RunStatus::kHalted) return a.steps == b.steps;
  return a.output == b.output && a.consumed == b.consumed && a.steps == b.steps;
}

RunResult eval_prefix(const Machine& m, const BitString& input,
                      const BitString& cond, std::uint64_t fuel) {
  RunResult r = m.eval(input, cond, fuel);
  if (r.halted() && r.consumed != input.size()) {
    return RunResult::diverged(r.steps);
  }
  return r;
}

RunResult eval_mode(const Machine& m, RunMode mode, const BitString& input,
                    const BitString& cond, std::uint64_t fuel) {
  if (mode == RunMode::kPrefix) return eval_prefix(m, input, cond, fuel);
  return m.eval(input, cond, fuel);
}

TableMachine::TableMachine(Table table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {}

RunResult TableMachine::eval(const BitString& input, const BitString&,
                             std::uint64_t fuel) const {
  if (fuel < 1) return RunResult::out_of_fuel(0);
  auto it = table_.find(input);
  if (it == table_.end()) return RunResult::diverged(1);
  return RunResult::halt(it->second, input.size(), 1);
}

TableMachine TableMachine::load(std::istream& in, std::string name) {
  Table table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw MalformedCode("table line must be codeword<TAB>output");
    }
    BitString codeword = BitString::from_text(line.substr(0, tab));
    BitString output = BitString::from_text(line.substr(tab + 1));
    if (!table.emplace(std::move(codeword), std::move(output)).second) {
      throw InvalidInput("duplicate codeword in table");
    }
  }
  return TableMachine(std::move(table), std::move(name));
}

void TableMachine::save(std::ostream& out) const {
  for (const auto& [codeword, output] : table_) {
    out << codeword.text() << '\t' << output.text() << '\n';
  }
}

}  // namespace aitlab
