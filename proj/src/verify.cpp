#include "aitlab/verify.hpp"

#include <map>
#include <random>

#include "aitlab/bitvm.hpp"
#include "aitlab/codec.hpp"

namespace aitlab {

namespace {

std::uint64_t floor_log2(std::uint64_t n) {
  std::uint64_t k = 0;
  while (n > 1) {
    n >>= 1;
    ++k;
  }
  return k;
}

BitString random_bits(std::mt19937_64& gen, std::size_t max_len) {
  std::size_t len = std::size_t(gen() % (max_len + 1));
  BitString s;
  for (std::size_t i = 0; i < len; ++i) {
    s.push_back(static_cast<int>(gen() % 2));
  }
  return s;
}

class CheckRun {
 public:
  CheckRun(const DispatchMachine& u, const Horizon& h) : u_(&u), h_(h) {}

  const KTable& table(const BitString& cond) {
    auto it = tables_.find(cond);
    if (it == tables_.end()) {
      it = tables_.emplace(cond, k_table(*u_, cond, h_)).first;
    }
    return it->second;
  }

  ConstantCheck row(const std::string& name) {
    ConstantCheck c;
    c.name = name;
    c.pass = true;
    return c;
  }

  void expect(ConstantCheck& c, bool ok, const std::string& what) {
    ++c.checks;
    if (ok || !c.pass) return;
    c.pass = false;
    c.detail = what;
  }

  // The target table must cover `output` at least as well as the
  // transported length whenever that length is inside the horizon.
  void expect_covered(ConstantCheck& c, const BitString& cond,
                      const BitString& output, std::uint64_t length) {
    if (length > h_.max_len) return;
    const KTable& t = table(cond);
    auto it = t.find(output);
    expect(c, it != t.end() && it->second.value <= length,
           "table misses " + output.text() + " within " +
               std::to_string(length));
  }

  const DispatchMachine& machine() const { return *u_; }
  const Horizon& horizon() const { return h_; }

 private:
  const DispatchMachine* u_;
  Horizon h_;
  std::map<BitString, KTable, LengthLexLess> tables_;
};

}  // namespace

std::vector<ConstantCheck> verify_dispatch_constants(const DispatchMachine& u,
                                                     const Horizon& h,
                                                     std::uint64_t seed) {
  CheckRun run(u, h);
  const std::vector<BitString> conds = {BitString(), BitString::from_text("0"),
                                        BitString::from_text("101")};
  std::vector<ConstantCheck> rows;

  {
    ConstantCheck c = run.row("self");
    for (const BitString& y : conds) {
      RunResult r = u.eval(self_witness(), y, h.fuel);
      run.expect(c, r.halted() && r.output == y && r.consumed == 10,
                 "self rule failed under " + y.text());
      run.expect_covered(c, y, y, 10);
    }
    rows.push_back(c);
  }

  {
    ConstantCheck c = run.row("lift");
    for (const BitString& y : conds) {
      for (const auto& [x, est] : run.table(BitString())) {
        BitString w = lift_cond(est.witness);
        RunResult r = u.eval(w, y, h.fuel);
        run.expect(c, r.halted() && r.output == x,
                   "lifted witness for " + x.text() + " failed under " +
                       y.text());
        run.expect(c, w.size() == est.value + 10, "lift length off");
        run.expect_covered(c, y, x, est.value + 10);
      }
    }
    rows.push_back(c);
  }

  for (unsigned slot = 3; slot < 1u << kDispatchConstantBits; slot += 2) {
    const BinaryTransform* f = u.registry().binary_at(slot);
    if (f == nullptr) continue;
    ConstantCheck c = run.row("f" + std::to_string(slot) + "_" + f->name);
    for (const BitString& y : conds) {
      for (const auto& [x, est] : run.table(y)) {
        BitString expected = f->apply(x, y);
        BitString w = apply_f(slot, est.witness);
        RunResult r = u.eval(w, y, h.fuel);
        run.expect(c, r.halted() && r.output == expected,
                   "transform transport failed for " + x.text() +
                       " under " + y.text());
        run.expect(c, w.size() == est.value + 10, "transform length off");
        run.expect_covered(c, y, expected, est.value + 10);
      }
    }
    rows.push_back(c);
  }

  for (unsigned slot = 4; slot < 1u << kDispatchConstantBits; slot += 2) {
    const UnaryTransform* g = u.registry().unary_at(slot);
    if (g == nullptr) continue;
    ConstantCheck c = run.row("g" + std::to_string(slot) + "_" + g->name);
    for (const BitString& y : conds) {
      BitString inner_cond = g->apply(y);
      for (const auto& [x, est] : run.table(inner_cond)) {
        BitString w = recondition_g(slot, est.witness);
        RunResult r = u.eval(w, y, h.fuel);
        run.expect(c, r.halted() && r.output == x,
                   "recondition transport failed for " + x.text() +
                       " under " + y.text());
        run.expect(c, w.size() == est.value + 10, "recondition length off");
        run.expect_covered(c, y, x, est.value + 10);
      }
    }
    rows.push_back(c);
  }

  {
    ConstantCheck c = run.row("pair300");
    for (const BitString& z : conds) {
      for (const auto& [x, estp] : run.table(z)) {
        for (const auto& [yv, estq] : run.table(pair_strings(x, z))) {
          BitString w = pair_direct(estp.witness, estq.witness);
          RunResult r = u.eval(w, z, h.fuel);
          run.expect(c, r.halted() && r.output == pair_strings(x, yv),
                     "pair transport failed for " + x.text() + "," +
                         yv.text() + " under " + z.text());
          std::uint64_t budget =
              estp.value + 2 * floor_log2(estp.value) + estq.value + 12;
          run.expect(c, w.size() <= budget, "pair budget exceeded");
          run.expect_covered(c, z, pair_strings(x, yv), w.size());
        }
      }
    }
    rows.push_back(c);
  }

  {
    ConstantCheck c = run.row("base0");
    std::mt19937_64 gen(seed);
    for (int i = 0; i < 1000; ++i) {
      BitString q = random_bits(gen, 10);
      BitString r_bits = random_bits(gen, 8);
      BitString y = random_bits(gen, 6);
      BitString body = encode_string(q) + r_bits;
      BitString w = dispatch_constant(kDispatchBase) + body;
      RunResult outer = u.eval(w, y, h.fuel);
      UniversalBase base;
      RunResult inner = base.eval(body, y, h.fuel - 1);
      bool ok = outer.status == inner.status && outer.output == inner.output;
      if (ok && outer.halted()) {
        ok = outer.consumed == inner.consumed + 10;
      }
      run.expect(c, ok, "embedded evaluator disagrees on triple " +
                            std::to_string(i));
    }
    rows.push_back(c);
  }

  return rows;
}

}  // namespace aitlab
