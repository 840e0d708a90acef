#include "doctest.h"

#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/bitvm.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/kraft.hpp"
#include "aitlab/machine.hpp"
#include "aitlab/omega.hpp"

using namespace aitlab;

namespace {

BitString bits(const char* text) { return BitString::from_text(text); }

ExponentMap exponents(
    std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  ExponentMap m;
  for (const auto& [label, value] : entries) {
    m.emplace(bits(label), value);
  }
  return m;
}

Dyadic flat_slack(std::uint32_t) { return Dyadic::one(); }

}  // namespace

TEST_CASE("halting mass climbs the familiar ladder") {
  UniversalBase base;
  Dyadic previous;
  for (std::uint32_t t = 1; t <= 10; ++t) {
    Dyadic value = omega_lower(base, {}, Horizon(t, 10000));
    CHECK(previous <= value);
    previous = value;
    if (t <= 8) CHECK(value == Dyadic::zero());
  }
  CHECK(omega_lower(base, {}, Horizon(9, 10000)) == Dyadic::pow2(-9));
  CHECK(previous == Dyadic::pow2(-8));
  CHECK(previous <= Dyadic::one());
}

TEST_CASE("halting mass is shard-invariant") {
  UniversalBase base;
  Horizon h(10, 10000);
  Dyadic one = omega_lower(base, {}, h, 1);
  CHECK(omega_lower(base, {}, h, 4) == one);
  CHECK(omega_lower(base, {}, h, 7) == one);
}

TEST_CASE("prefix domain of the string-code evaluator is an antichain") {
  UniversalBase base;
  DomainReport r = prefix_domain_check(base, {}, Horizon(10, 10000));
  CHECK(r.domain_size == 3);
  CHECK(r.prefix_free);
  CHECK(r.violations.empty());
}

TEST_CASE("prefix violations are reported with witnesses") {
  TableMachine::Table table;
  table[bits("0")] = BitString();
  table[bits("01")] = BitString();
  table[bits("11")] = BitString();
  TableMachine m(std::move(table));
  DomainReport r = prefix_domain_check(m, {}, Horizon(4, 10));
  CHECK(r.domain_size == 3);
  CHECK_FALSE(r.prefix_free);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].first == bits("0"));
  CHECK(r.violations[0].second == bits("01"));
}

TEST_CASE("request machines decode every allocated codeword") {
  std::vector<LengthRequest> stream = {
      {bits("1"), 3}, {bits("01"), 5}, {BitString(), 4}, {bits("1"), 2}};
  TableMachine m = machine_from_requests(stream);
  CHECK(m.table().size() == 4);

  Horizon h(6, 10);
  KTable t = k_table(m, {}, h, RunMode::kPrefix);
  REQUIRE(t.count(bits("1")) == 1);
  CHECK(t.at(bits("1")).value == 2);
  REQUIRE(t.count(bits("01")) == 1);
  CHECK(t.at(bits("01")).value == 5);
  REQUIRE(t.count(BitString()) == 1);
  CHECK(t.at(BitString()).value == 4);

  DomainReport r = prefix_domain_check(m, {}, h);
  CHECK(r.prefix_free);
  CHECK(r.domain_size == 4);
}

TEST_CASE("tail doubling keeps settled labels and replays revised ones") {
  std::vector<LengthRequest> requests = {
      {bits("1"), 2}, {bits("01"), 3}, {bits("01"), 2}};
  std::vector<LengthRequest> out = tail_double_transform(requests, 1);
  REQUIRE(out.size() == 3);
  CHECK(out[0].label == bits("1"));
  CHECK(out[0].length == 2);
  CHECK(out[1].label == bits("01"));
  CHECK(out[1].length == 3);
  CHECK(out[2].label == bits("01"));
  CHECK(out[2].length == 2);
  CHECK(allocate_revisions(out).size() == 3);
}

TEST_CASE("tail doubling squashes head revisions to their final length") {
  std::vector<LengthRequest> requests = {
      {bits("1"), 4}, {bits("01"), 4}, {bits("1"), 3}};
  std::vector<LengthRequest> out = tail_double_transform(requests, 3);
  REQUIRE(out.size() == 2);
  CHECK(out[0].label == bits("1"));
  CHECK(out[0].length == 3);
  CHECK(out[1].label == bits("01"));
  CHECK(out[1].length == 4);
}

TEST_CASE("tail doubling rejects streams it cannot afford") {
  std::vector<LengthRequest> tight = {{bits("1"), 1}, {bits("01"), 1}};
  CHECK_THROWS_AS(tail_double_transform(tight, 1), BudgetExceeded);
  std::vector<LengthRequest> loose = {{bits("1"), 2}, {bits("01"), 2}};
  CHECK(tail_double_transform(loose, 1).size() == 2);
  std::vector<LengthRequest> grows = {{bits("1"), 2}, {bits("1"), 2}};
  CHECK_THROWS_AS(tail_double_transform(grows, 1), InvalidInput);
}

TEST_CASE("exponent maps weigh their support") {
  CHECK(exponent_mass(exponents({})) == Dyadic::zero());
  CHECK(exponent_mass(exponents({{"1", 1}, {"01", 2}})) == Dyadic(3, 2));
}

TEST_CASE("merge preserves stage zero and closes later gaps exactly") {
  std::vector<ExponentMap> k = {
      exponents({{"1", 3}}),
      exponents({{"1", 3}, {"10", 4}}),
      exponents({{"1", 2}, {"10", 4}}),
  };
  std::vector<Dyadic> alpha = {Dyadic::zero(), Dyadic::pow2(-5),
                               Dyadic::pow2(-4) + Dyadic::pow2(-6)};
  MergeResult r = merge_construction(k, alpha, flat_slack);
  REQUIRE(r.trace.size() == 3);
  REQUIRE(r.kprime.size() == 3);

  CHECK(r.trace[0].sum_kprime == exponent_mass(k[0]));
  for (std::size_t t = 1; t < 3; ++t) {
    CHECK(r.trace[t].sum_kprime == r.trace[t].sum_k + alpha[t]);
  }
  // The revision never undercuts the stage it revises.
  for (std::size_t t = 0; t < 3; ++t) {
    for (const auto& [x, value] : k[t]) {
      REQUIRE(r.kprime[t].count(x) == 1);
      CHECK(r.kprime[t].at(x) <= value);
    }
  }
  // Fresh strings stay clear of every stage's support.
  for (const auto& [x, value] : r.kprime[2]) {
    if (k[2].count(x) == 0) {
      CHECK(k[0].count(x) == 0);
      CHECK(k[1].count(x) == 0);
    }
  }
}

TEST_CASE("merge accepts stage-zero mass only within the slack") {
  std::vector<ExponentMap> k = {exponents({{"1", 3}})};
  std::vector<Dyadic> alpha = {Dyadic::pow2(-4)};
  auto tight = [](std::uint32_t t) {
    return t == 0 ? Dyadic::pow2(-6) : Dyadic::one();
  };
  CHECK_THROWS_AS(merge_construction(k, alpha, tight), BudgetExceeded);
  auto loose = [](std::uint32_t) { return Dyadic::pow2(-3); };
  MergeResult r = merge_construction(k, alpha, loose);
  CHECK(r.trace[0].sum_kprime == exponent_mass(k[0]));
}

TEST_CASE("merge validates its preconditions") {
  CHECK_THROWS_AS(merge_construction({}, {}, flat_slack), InvalidInput);
  CHECK_THROWS_AS(
      merge_construction({exponents({{"1", 3}})}, {}, flat_slack),
      InvalidInput);

  std::vector<ExponentMap> shrinking_support = {exponents({{"1", 3}}),
                                                exponents({{"01", 3}})};
  std::vector<Dyadic> alpha2 = {Dyadic::zero(), Dyadic::zero()};
  CHECK_THROWS_AS(merge_construction(shrinking_support, alpha2, flat_slack),
                  InvalidInput);

  std::vector<ExponentMap> growing_value = {exponents({{"1", 3}}),
                                            exponents({{"1", 4}})};
  CHECK_THROWS_AS(merge_construction(growing_value, alpha2, flat_slack),
                  InvalidInput);

  std::vector<ExponentMap> fine = {exponents({{"1", 3}}),
                                   exponents({{"1", 3}})};
  std::vector<Dyadic> sagging = {Dyadic::zero() + Dyadic::pow2(-2),
                                 Dyadic::pow2(-3)};
  CHECK_THROWS_AS(merge_construction(fine, sagging, flat_slack), InvalidInput);
}

TEST_CASE("merge rejects an alpha step it cannot describe") {
  std::vector<ExponentMap> k = {exponents({{"1", 3}}),
                                exponents({{"1", 3}})};
  std::vector<Dyadic> alpha = {Dyadic::zero(), Dyadic(2, 0)};
  CHECK_THROWS_AS(merge_construction(k, alpha, flat_slack), BudgetExceeded);
}

TEST_CASE("trace rows serialize one stage per line") {
  std::vector<MergeStage> trace = {
      {0, Dyadic(1, 3), Dyadic::zero(), Dyadic(1, 3)},
      {1, Dyadic(1, 3), Dyadic(1, 5), Dyadic(5, 5)},
  };
  CHECK(serialize_trace(trace) ==
        "stage t=0 sum_k=1/2^3 alpha=0/2^0 sum_kprime=1/2^3\n"
        "stage t=1 sum_k=1/2^3 alpha=1/2^5 sum_kprime=5/2^5\n");
}

TEST_CASE("random instances satisfy the merge contract end to end") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    MergeInstance inst = random_merge_instance(seed, 40, 60);
    REQUIRE(inst.k_stages.size() == inst.alpha.size());
    REQUIRE(!inst.k_stages.empty());
    CHECK(inst.alpha[0] == Dyadic::zero());

    MergeResult r = merge_construction(
        inst.k_stages, inst.alpha,
        [](std::uint32_t t) { return Dyadic::pow2(-std::int64_t(t)); });
    std::size_t stages = inst.k_stages.size();
    for (std::size_t t = 0; t < stages; ++t) {
      Dyadic low =
          exponent_mass(inst.k_stages[t]) + inst.alpha[t];
      Dyadic slack_t = Dyadic::pow2(-std::int64_t(t));
      CHECK(r.trace[t].sum_kprime <= low);
      CHECK(low <= r.trace[t].sum_kprime + slack_t);
      CHECK(r.trace[t].sum_kprime <= Dyadic::one());
      if (t > 0) {
        CHECK(r.trace[t].sum_kprime == low);
      }
    }
  }
}
