#include "aitlab/dispatch.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_set>
#include <utility>

#include "aitlab/codec.hpp"
#include "aitlab/errors.hpp"

namespace aitlab {
namespace {

bool reserved_slot(unsigned slot) {
  return slot == kDispatchBase || slot == kDispatchDropCond ||
         slot == kDispatchSelf || slot == kDispatchPair ||
         slot == kDispatchReverseFirst || slot == kDispatchReverseSecond;
}

const std::vector<BinaryTransform>& binary_catalog() {
  static const std::vector<BinaryTransform> catalog = {
      {"swap_pair",
       [](const BitString& x, const BitString&) {
         auto [a, b] = unpair_strings(x);
         return pair_strings(b, a);
       }},
      {"concat_cond",
       [](const BitString& x, const BitString& y) { return x + y; }},
      {"append0",
       [](const BitString& x, const BitString&) {
         BitString r = x;
         r.push_back(0);
         return r;
       }},
      {"append1",
       [](const BitString& x, const BitString&) {
         BitString r = x;
         r.push_back(1);
         return r;
       }},
      {"pair_first",
       [](const BitString& x, const BitString&) {
         return unpair_strings(x).first;
       }},
      {"pair_second",
       [](const BitString& x, const BitString&) {
         return unpair_strings(x).second;
       }},
  };
  return catalog;
}

const std::vector<UnaryTransform>& unary_catalog() {
  static const std::vector<UnaryTransform> catalog = {
      {"identity", [](const BitString& y) { return y; }},
      {"pair_with_empty",
       [](const BitString& y) { return pair_strings(y, BitString()); }},
      {"cond_first",
       [](const BitString& y) { return unpair_strings(y).first; }},
      {"cond_length",
       [](const BitString& y) { return BitString::binary(y.size()); }},
  };
  return catalog;
}

// Candidate lengths are clamped to keep the settled table desk-sized; a
// stage that would need longer candidates reports failure, which callers
// surface as an out-of-fuel verdict.
constexpr std::uint64_t kEnumLenCap = 22;

// Dovetailed self-enumeration over descriptions of bounded length: stage t
// runs every pending candidate of length <= min(t, max_len) with a fresh
// local allowance of t chained under the caller's budget. Halting outputs
// are deduplicated and split as pairs; both the event list and each
// partner list only ever grow, so anything defined in terms of their order
// is stable as stages advance.
class PairEnumeration {
 public:
  PairEnumeration(const DispatchMachine& machine, BitString cond,
                  std::uint64_t max_len)
      : machine_(&machine), cond_(std::move(cond)), max_len_(max_len) {}

  struct Event {
    BitString x;
    BitString y;
  };

  bool advance_stage(Budget& budget) {
    std::uint32_t t = ++stage_;
    if (!budget.spend(1)) return false;
    std::uint64_t len_cap = std::min<std::uint64_t>(t, max_len_);
    if (len_cap > kEnumLenCap) return false;
    std::size_t want = (std::size_t(1) << (len_cap + 1)) - 1;
    if (settled_.size() < want) settled_.resize(want, 0);
    std::size_t rank = 0;
    for (std::uint64_t len = 0; len <= len_cap; ++len) {
      std::uint64_t width = std::uint64_t(1) << len;
      for (std::uint64_t v = 0; v < width; ++v, ++rank) {
        if (settled_[rank]) continue;
        BitString cand = BitString::from_uint(v, std::size_t(len));
        Budget local(t, &budget);
        BitReader reader(cand);
        RunResult r = machine_->eval_metered(reader, cond_, local);
        if (local.ancestor_tripped()) return false;
        if (r.status == RunStatus::kOutOfFuel) continue;
        settled_[rank] = 1;
        if (r.halted()) record(r.output);
      }
    }
    return true;
  }

  const std::vector<Event>& events() const { return events_; }

  const std::vector<BitString>* partners(const BitString& x) const {
    auto it = partners_.find(x);
    return it == partners_.end() ? nullptr : &it->second;
  }

 private:
  void record(const BitString& w) {
    if (!seen_.insert(w).second) return;
    auto [x, y] = unpair_strings(w);
    events_.push_back({x, y});
    partners_[x].push_back(y);
  }

  const DispatchMachine* machine_;
  BitString cond_;
  std::uint64_t max_len_;
  std::uint32_t stage_ = 0;
  std::vector<std::uint8_t> settled_;
  std::unordered_set<BitString> seen_;
  std::vector<Event> events_;
  std::map<BitString, std::vector<BitString>, LengthLexLess> partners_;
};

// Big-endian value of every remaining input bit; saturates once past 63
// bits, which leaves the index unreachable and the evaluation to its fuel.
std::uint64_t read_tail_index(BitReader& input) {
  std::uint64_t value = 0;
  std::size_t bits = 0;
  while (auto b = input.next()) {
    ++bits;
    if (bits > 63) {
      value = std::numeric_limits<std::uint64_t>::max();
      continue;
    }
    if (value != std::numeric_limits<std::uint64_t>::max()) {
      value = (value << 1) | unsigned(*b);
    }
  }
  return value;
}

}  // namespace

BitString dispatch_constant(unsigned index) {
  if (index >= (1u << kDispatchConstantBits)) {
    throw InvalidInput("dispatch constant index out of range: " +
                       std::to_string(index));
  }
  return BitString::from_uint(index, kDispatchConstantBits);
}

const BinaryTransform* find_binary_transform(const std::string& name) {
  for (const auto& t : binary_catalog()) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const UnaryTransform* find_unary_transform(const std::string& name) {
  for (const auto& t : unary_catalog()) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

BitString self_witness() { return dispatch_constant(kDispatchSelf); }

BitString lift_cond(const BitString& p) {
  return dispatch_constant(kDispatchDropCond) + p;
}

BitString apply_f(unsigned odd_slot, const BitString& p) {
  if (odd_slot % 2 == 0 || reserved_slot(odd_slot)) {
    throw InvalidInput("binary transforms live at odd unreserved slots");
  }
  return dispatch_constant(odd_slot) + p;
}

BitString recondition_g(unsigned even_slot, const BitString& p) {
  if (even_slot % 2 == 1 || reserved_slot(even_slot)) {
    throw InvalidInput("unary transforms live at even unreserved slots");
  }
  return dispatch_constant(even_slot) + p;
}

BitString pair_direct(const BitString& p, const BitString& q) {
  return dispatch_constant(kDispatchPair) + encode_string(p) + q;
}

TransformRegistry TransformRegistry::builtin() {
  TransformRegistry r;
  r.add_binary(3, "swap_pair");
  r.add_unary(4, "identity");
  r.add_binary(5, "concat_cond");
  r.add_unary(6, "pair_with_empty");
  r.add_binary(7, "append0");
  r.add_unary(8, "cond_first");
  r.add_binary(9, "append1");
  r.add_unary(10, "cond_length");
  r.add_binary(11, "pair_first");
  r.add_binary(13, "pair_second");
  return r;
}

TransformRegistry TransformRegistry::from_manifest(
    const std::vector<std::pair<unsigned, std::string>>& entries) {
  TransformRegistry r;
  for (const auto& [slot, name] : entries) {
    if (slot % 2 == 1) {
      r.add_binary(slot, name);
    } else {
      r.add_unary(slot, name);
    }
  }
  return r;
}

void TransformRegistry::add_binary(unsigned slot, const std::string& name) {
  if (slot >= (1u << kDispatchConstantBits)) {
    throw InvalidInput("transform slot out of range: " + std::to_string(slot));
  }
  if (reserved_slot(slot)) {
    throw InvalidInput("transform slot is reserved: " + std::to_string(slot));
  }
  if (slot % 2 == 0) {
    throw InvalidInput("binary transforms take odd slots, got " +
                       std::to_string(slot));
  }
  if (binary_.count(slot) != 0 || unary_.count(slot) != 0) {
    throw InvalidInput("duplicate transform slot: " + std::to_string(slot));
  }
  const BinaryTransform* t = find_binary_transform(name);
  if (t == nullptr) throw InvalidInput("unknown binary transform: " + name);
  binary_.emplace(slot, *t);
}

void TransformRegistry::add_unary(unsigned slot, const std::string& name) {
  if (slot >= (1u << kDispatchConstantBits)) {
    throw InvalidInput("transform slot out of range: " + std::to_string(slot));
  }
  if (reserved_slot(slot)) {
    throw InvalidInput("transform slot is reserved: " + std::to_string(slot));
  }
  if (slot % 2 == 1) {
    throw InvalidInput("unary transforms take even slots, got " +
                       std::to_string(slot));
  }
  if (binary_.count(slot) != 0 || unary_.count(slot) != 0) {
    throw InvalidInput("duplicate transform slot: " + std::to_string(slot));
  }
  const UnaryTransform* t = find_unary_transform(name);
  if (t == nullptr) throw InvalidInput("unknown unary transform: " + name);
  unary_.emplace(slot, *t);
}

const BinaryTransform* TransformRegistry::binary_at(unsigned slot) const {
  auto it = binary_.find(slot);
  return it == binary_.end() ? nullptr : &it->second;
}

const UnaryTransform* TransformRegistry::unary_at(unsigned slot) const {
  auto it = unary_.find(slot);
  return it == unary_.end() ? nullptr : &it->second;
}

std::string TransformRegistry::manifest() const {
  std::map<unsigned, std::string> rows;
  for (const auto& [slot, t] : binary_) rows[slot] = t.name;
  for (const auto& [slot, t] : unary_) rows[slot] = t.name;
  std::string out;
  for (const auto& [slot, name] : rows) {
    out += "slot=" + std::to_string(slot) + " name=" + name + "\n";
  }
  return out;
}

DispatchMachine::DispatchMachine(TransformRegistry registry)
    : registry_(std::move(registry)) {}

RunResult DispatchMachine::eval(const BitString& input, const BitString& cond,
                                std::uint64_t fuel) const {
  Budget root(fuel);
  BitReader reader(input);
  RunResult r = eval_metered(reader, cond, root);
  r.steps = fuel - root.remaining();
  return r;
}

RunResult DispatchMachine::eval_metered(BitReader& input, const BitString& cond,
                                        Budget& budget) const {
  std::size_t start = input.pos();
  if (!budget.spend(1)) return RunResult::out_of_fuel(0);

  std::uint64_t index = 0;
  for (unsigned i = 0; i < kDispatchConstantBits; ++i) {
    auto b = input.next();
    if (!b) return RunResult::diverged(0);
    index = (index << 1) | unsigned(*b);
  }

  auto finish = [&](RunResult r) {
    if (r.halted()) r.consumed = input.pos() - start;
    return r;
  };

  switch (index) {
    case kDispatchBase:
      return finish(base_.eval_metered(input, cond, budget));

    case kDispatchDropCond:
      return finish(eval_metered(input, BitString(), budget));

    case kDispatchSelf:
      return RunResult::halt(cond, input.pos() - start, 0);

    case kDispatchPair: {
      DecodedString p_code;
      try {
        p_code = decode_string(input.source(), input.pos());
      } catch (const Error&) {
        return RunResult::diverged(0);
      }
      input.skip(p_code.consumed);
      BitReader p_reader(p_code.value);
      RunResult first = eval_metered(p_reader, cond, budget);
      if (!first.halted()) return first;
      RunResult second =
          eval_metered(input, pair_strings(first.output, cond), budget);
      if (!second.halted()) return second;
      return finish(
          RunResult::halt(pair_strings(first.output, second.output), 0, 0));
    }

    case kDispatchReverseFirst: {
      DecodedNat n_code;
      DecodedNat m_code;
      try {
        n_code = decode_nat(input.source(), input.pos());
        m_code = decode_nat(input.source(), input.pos() + n_code.consumed);
      } catch (const Error&) {
        return RunResult::diverged(0);
      }
      input.skip(n_code.consumed + m_code.consumed);
      std::uint64_t u = read_tail_index(input);
      std::uint64_t threshold =
          m_code.value < 63 ? std::uint64_t(1) << m_code.value
                            : std::numeric_limits<std::uint64_t>::max();
      PairEnumeration en(*this, cond, n_code.value);
      std::vector<BitString> qualified;
      std::map<BitString, std::uint64_t, LengthLexLess> counts;
      std::size_t next_event = 0;
      auto pump = [&]() {
        for (; next_event < en.events().size(); ++next_event) {
          const auto& ev = en.events()[next_event];
          if (++counts[ev.x] == threshold) qualified.push_back(ev.x);
        }
      };
      while (qualified.size() <= u) {
        if (!en.advance_stage(budget)) return RunResult::out_of_fuel(0);
        pump();
      }
      return finish(RunResult::halt(qualified[std::size_t(u)], 0, 0));
    }

    case kDispatchReverseSecond: {
      DecodedNat n_code;
      try {
        n_code = decode_nat(input.source(), input.pos());
      } catch (const Error&) {
        return RunResult::diverged(0);
      }
      input.skip(n_code.consumed);
      std::uint64_t u = read_tail_index(input);
      auto [x, z] = unpair_strings(cond);
      PairEnumeration en(*this, z, n_code.value);
      while (true) {
        const std::vector<BitString>* part = en.partners(x);
        if (part != nullptr && part->size() > u) {
          return finish(RunResult::halt((*part)[std::size_t(u)], 0, 0));
        }
        if (!en.advance_stage(budget)) return RunResult::out_of_fuel(0);
      }
    }

    default: {
      if (const BinaryTransform* f = registry_.binary_at(unsigned(index))) {
        RunResult inner = eval_metered(input, cond, budget);
        if (!inner.halted()) return inner;
        if (!budget.spend(1)) return RunResult::out_of_fuel(0);
        return finish(RunResult::halt(f->apply(inner.output, cond), 0, 0));
      }
      if (const UnaryTransform* g = registry_.unary_at(unsigned(index))) {
        if (!budget.spend(1)) return RunResult::out_of_fuel(0);
        return finish(eval_metered(input, g->apply(cond), budget));
      }
      return RunResult::diverged(0);
    }
  }
}

std::optional<DispatchMachine::ReverseWitnesses>
DispatchMachine::reverse_witnesses(const BitString& x, const BitString& y,
                                   const BitString& z, unsigned n,
                                   std::uint32_t stages) const {
  if (n > kEnumLenCap) {
    throw TooLarge("reverse witness length bound out of range: " +
                   std::to_string(n));
  }
  PairEnumeration en(*this, z, n);
  Budget open(std::numeric_limits<std::uint64_t>::max());
  for (std::uint32_t t = 0; t < stages; ++t) {
    if (!en.advance_stage(open)) break;
  }
  const std::vector<BitString>* part = en.partners(x);
  if (part == nullptr) return std::nullopt;
  auto hit = std::find(part->begin(), part->end(), y);
  if (hit == part->end()) return std::nullopt;

  std::uint64_t count = part->size();
  unsigned m = unsigned(std::bit_width(count)) - 1;
  std::uint64_t threshold = std::uint64_t(1) << m;

  std::map<BitString, std::uint64_t, LengthLexLess> counts;
  std::uint64_t next_index = 0;
  std::optional<std::uint64_t> index_first;
  for (const auto& ev : en.events()) {
    if (++counts[ev.x] == threshold) {
      if (ev.x == x) index_first = next_index;
      ++next_index;
    }
  }
  if (!index_first.has_value()) return std::nullopt;

  ReverseWitnesses w;
  w.m = m;
  w.index_first = *index_first;
  w.index_second = std::uint64_t(hit - part->begin());
  w.p301 = dispatch_constant(kDispatchReverseFirst) + encode_nat(n) +
           encode_nat(m) + BitString::from_uint(w.index_first, n - m + 1);
  w.p302 = dispatch_constant(kDispatchReverseSecond) + encode_nat(n) +
           BitString::from_uint(w.index_second, m + 1);
  return w;
}

ZeroRegionMachine::ZeroRegionMachine(const Machine& inner, unsigned zeros)
    : inner_(&inner), zeros_(zeros) {}

RunResult ZeroRegionMachine::eval(const BitString& input, const BitString& cond,
                                  std::uint64_t fuel) const {
  bool in_region = input.size() >= zeros_;
  for (unsigned i = 0; in_region && i < zeros_; ++i) {
    in_region = input.bit(i) == 0;
  }
  if (!in_region) return inner_->eval(input, cond, fuel);
  Budget root(fuel);
  BitReader reader(input, zeros_);
  RunResult r = base_.eval_metered(reader, cond, root);
  r.steps = fuel - root.remaining();
  if (r.halted()) r.consumed += zeros_;
  return r;
}

std::string ZeroRegionMachine::name() const {
  return inner_->name() + "+zeros" + std::to_string(zeros_);
}

ZeroRegionMachine optimal_to_universal(const Machine& d, unsigned zeros) {
  return ZeroRegionMachine(d, zeros);
}

ZeroRegionReport check_zero_region(const Machine& d, unsigned zeros,
                                   const BitString& cond, std::uint32_t max_len,
                                   std::uint64_t fuel) {
  if (max_len > 24) {
    throw TooLarge("zero-region sweep length out of range: " +
                   std::to_string(max_len));
  }
  ZeroRegionReport report;
  report.zeros = zeros;
  report.max_len = max_len;
  report.fuel = fuel;

  struct Entry {
    std::uint64_t min_len;
    std::vector<BitString> minimal;
  };
  std::map<BitString, Entry, LengthLexLess> best;
  for_each_string(max_len, [&](const BitString& s) {
    RunResult r = d.eval(s, cond, fuel);
    if (!r.halted()) return;
    auto it = best.find(r.output);
    if (it == best.end()) {
      best.emplace(r.output, Entry{s.size(), {s}});
    } else if (it->second.min_len == s.size()) {
      it->second.minimal.push_back(s);
    }
  });

  auto in_region = [&](const BitString& s) {
    if (s.size() < zeros) return false;
    for (unsigned i = 0; i < zeros; ++i) {
      if (s.bit(i) != 0) return false;
    }
    return true;
  };

  for (const auto& [output, entry] : best) {
    for (const auto& s : entry.minimal) {
      if (in_region(s)) {
        report.shadowed_minimal.emplace_back(output, s);
        break;
      }
    }
  }

  if (max_len >= zeros) {
    UniversalBase base;
    std::map<BitString, bool, LengthLexLess> reported;
    for_each_string(max_len - zeros, [&](const BitString& z) {
      RunResult r = base.eval(z, cond, fuel);
      if (!r.halted()) return;
      auto it = best.find(r.output);
      std::uint64_t embedded_len = zeros + z.size();
      if (it != best.end() && it->second.min_len <= embedded_len) return;
      if (reported.count(r.output) != 0) return;
      reported.emplace(r.output, true);
      report.embedded_shorter.emplace_back(r.output,
                                           BitString::zeros(zeros) + z);
    });
  }
  return report;
}

TableMachine geometric_machine(
    const std::map<BitString, unsigned, LengthLexLess>& k_values,
    unsigned depth) {
  if (depth == 0) throw InvalidInput("geometric depth must be positive");
  if (depth > 64) throw TooLarge("geometric depth out of range");
  KraftAllocator alloc;
  TableMachine::Table table;
  for (const auto& [x, k] : k_values) {
    if (k > 4096) throw TooLarge("geometric length base out of range");
    for (unsigned i = 1; i <= depth; ++i) {
      table.emplace(alloc.allocate(std::size_t(k) + i), x);
    }
  }
  return TableMachine(std::move(table), "geometric");
}

}  // namespace aitlab
