#include "aitlab/bitvm.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "aitlab/codec.hpp"
#include "aitlab/errors.hpp"

namespace aitlab {

Program Program::parse(const BitString& code) {
  Program p;
  p.code_ = code;
  std::size_t pos = 0;
  while (pos + 4 <= code.size()) {
    std::uint8_t op = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      op = static_cast<std::uint8_t>((op << 1) | code.bit(pos + i));
    }
    Opcode opcode = static_cast<Opcode>(op);
    std::uint8_t imm = 0;
    std::size_t width = 4;
    if (opcode == Opcode::kJumpF || opcode == Opcode::kJumpB) {
      if (pos + 8 > code.size()) break;  // truncated immediate
      for (std::size_t i = 0; i < 4; ++i) {
        imm = static_cast<std::uint8_t>((imm << 1) | code.bit(pos + 4 + i));
      }
      width = 8;
    }
    p.instrs_.push_back(Instruction{opcode, imm});
    pos += width;
  }
  return p;
}

RunResult run_metered(const Program& program, BitReader& data,
                      const BitString& cond, Budget& budget) {
  const auto& instrs = program.instructions();
  std::size_t pc = 0;
  BitString work;
  BitString out;
  bool flag = false;
  std::size_t cond_pos = 0;
  std::size_t start = data.pos();
  std::uint64_t steps = 0;

  for (;;) {
    if (pc >= instrs.size()) return RunResult::diverged(steps);
    if (!budget.spend(1)) return RunResult::out_of_fuel(steps);
    ++steps;
    const Instruction& ins = instrs[pc];
    std::size_t next = pc + 1;
    switch (ins.op) {
      case Opcode::kHalt:
        return RunResult::halt(out, data.pos() - start, steps);
      case Opcode::kOut0:
        out.push_back(0);
        break;
      case Opcode::kOut1:
        out.push_back(1);
        break;
      case Opcode::kOutW:
        out.append(work);
        break;
      case Opcode::kWork0:
        work.push_back(0);
        break;
      case Opcode::kWork1:
        work.push_back(1);
        break;
      case Opcode::kWorkClear:
        work.clear();
        break;
      case Opcode::kWorkPop:
        if (!work.empty()) work.pop_back();
        break;
      case Opcode::kRead: {
        std::optional<int> b = data.next();
        if (!b.has_value()) return RunResult::diverged(steps);
        work.push_back(*b);
        break;
      }
      case Opcode::kCondRead:
        if (cond_pos < cond.size()) {
          work.push_back(cond.bit(cond_pos++));
          flag = false;
        } else {
          flag = true;
        }
        break;
      case Opcode::kJumpF:
        next = pc + static_cast<std::size_t>(ins.imm) + 1;
        break;
      case Opcode::kJumpB: {
        std::size_t back = static_cast<std::size_t>(ins.imm) + 2;
        if (back > pc) return RunResult::diverged(steps);
        next = pc - back;
        break;
      }
      case Opcode::kSkipWEmpty:
        if (work.empty()) next = pc + 2;
        break;
      case Opcode::kSkipFlag:
        if (flag) next = pc + 2;
        break;
      case Opcode::kWorkShift:
        if (!work.empty()) {
          flag = work.bit(0) != 0;
          work = work.suffix_from(1);
        } else {
          flag = true;
        }
        break;
      case Opcode::kNop:
        break;
    }
    pc = next;
  }
}

RunResult run(const Program& program, const BitString& data,
              const BitString& cond, std::uint64_t fuel) {
  BitReader reader(data);
  Budget budget(fuel);
  return run_metered(program, reader, cond, budget);
}

RunResult eval_plain(const BitString& s, const BitString& cond,
                     std::uint64_t fuel) {
  DecodedString code;
  try {
    code = decode_string(s);
  } catch (const Error&) {
    return RunResult::diverged(0);
  }
  Program q = Program::parse(code.value);
  BitReader reader(s, code.consumed);
  Budget budget(fuel);
  return run_metered(q, reader, cond, budget);
}

RunResult UniversalBase::eval_metered(BitReader& input, const BitString& cond,
                                      Budget& budget) const {
  std::size_t start = input.pos();
  DecodedString code;
  try {
    code = decode_string(input.source(), start);
  } catch (const Error&) {
    return RunResult::diverged(0);
  }
  BitReader body(input.source(), start + code.consumed);
  Program q = Program::parse(code.value);
  RunResult r = run_metered(q, body, cond, budget);
  input = body;
  if (r.halted()) r.consumed += code.consumed;
  return r;
}

RunResult UniversalBase::eval(const BitString& input, const BitString& cond,
                              std::uint64_t fuel) const {
  BitReader reader(input);
  Budget budget(fuel);
  return eval_metered(reader, cond, budget);
}

bool operator==(const DovetailEvent& a, const DovetailEvent& b) {
  return a.input == b.input && a.output == b.output && a.stage == b.stage &&
         a.steps == b.steps;
}

std::vector<DovetailEvent> dovetail(const Machine& m, const BitString& cond,
                                    std::uint32_t stages, unsigned shards) {
  if (stages > 24) throw TooLarge("dovetail stage count out of range");
  std::vector<DovetailEvent> events;
  for (unsigned shard = 0; shard < shards; ++shard) {
    // Per input: 0 pending, 1 settled (halted or proven divergent).
    std::vector<std::uint8_t> settled(std::size_t(1) << (stages + 1), 0);
    for (std::uint32_t t = 1; t <= stages; ++t) {
      std::uint64_t rank = 0;
      for (std::size_t len = 0; len <= t; ++len) {
        std::uint64_t count = std::uint64_t(1) << len;
        for (std::uint64_t v = 0; v < count; ++v, ++rank) {
          if (shards > 1 && rank % shards != shard) continue;
          if (settled[rank]) continue;
          BitString input = BitString::from_uint(v, len);
          RunResult r = m.eval(input, cond, t);
          if (r.halted()) {
            settled[rank] = 1;
            events.push_back(DovetailEvent{input, r.output, t, r.steps});
          } else if (r.status == RunStatus::kDiverged) {
            settled[rank] = 1;
          }
        }
      }
    }
  }
  std::sort(events.begin(), events.end(),
            [](const DovetailEvent& a, const DovetailEvent& b) {
              if (a.stage != b.stage) return a.stage < b.stage;
              return LengthLexLess{}(a.input, b.input);
            });
  return events;
}

std::string serialize_events(const std::vector<DovetailEvent>& events) {
  std::string out;
  for (const DovetailEvent& e : events) {
    out += "event input=" + e.input.text() + " output=" + e.output.text() +
           " stage=" + std::to_string(e.stage) +
           " steps=" + std::to_string(e.steps) + "\n";
  }
  return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> split_fields(
    const std::string& line) {
  std::vector<std::pair<std::string, std::string>> fields;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    std::size_t eq = token.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("manifest token must be key=value: " + token);
    }
    fields.emplace_back(token.substr(0, eq), token.substr(eq + 1));
  }
  return fields;
}

std::uint64_t parse_number(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos ||
      text.size() > 18) {
    throw InvalidInput("expected a decimal number, got " + text);
  }
  return std::stoull(text);
}

}  // namespace

MachineManifest parse_manifest(std::istream& in) {
  MachineManifest m;
  std::string line;
  bool have_slot = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0].first == "slot") {
      if (fields.size() != 2 || fields[1].first != "name") {
        throw InvalidInput("registry line must be slot=<index> name=<name>");
      }
      unsigned slot = static_cast<unsigned>(parse_number(fields[0].second));
      for (const auto& [s, n] : m.registry) {
        if (s == slot) throw InvalidInput("duplicate registry slot " + fields[0].second);
      }
      m.registry.emplace_back(slot, fields[1].second);
      have_slot = true;
      continue;
    }
    for (const auto& [key, value] : fields) {
      if (key == "isa") {
        if (value != "bitvm1") throw InvalidInput("unsupported isa " + value);
        m.isa = value;
      } else if (key == "machine") {
        if (value != "bitvm" && value != "dispatch" && value != "table") {
          throw InvalidInput("unknown machine " + value);
        }
        m.machine = value;
      } else if (key == "mode") {
        if (value != "plain" && value != "prefix") {
          throw InvalidInput("unknown mode " + value);
        }
        m.mode = value;
      } else if (key == "fuel") {
        m.fuel = parse_number(value);
      } else if (key == "table") {
        m.table_path = value;
      } else {
        throw InvalidInput("unknown manifest key " + key);
      }
    }
  }
  (void)have_slot;
  return m;
}

std::string serialize_manifest(const MachineManifest& m) {
  std::string out;
  out += "isa=" + m.isa + "\n";
  out += "machine=" + m.machine + "\n";
  out += "mode=" + m.mode + "\n";
  out += "fuel=" + std::to_string(m.fuel) + "\n";
  if (!m.table_path.empty()) out += "table=" + m.table_path + "\n";
  for (const auto& [slot, name] : m.registry) {
    out += "slot=" + std::to_string(slot) + " name=" + name + "\n";
  }
  return out;
}

}  // namespace aitlab
