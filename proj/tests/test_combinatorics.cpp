#include "doctest.h"

#include <algorithm>
#include <random>

#include "aitlab/bitstring.hpp"
#include "aitlab/combinatorics.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/errors.hpp"

using namespace aitlab;

namespace {

BitString bits(const char* text) { return BitString::from_text(text); }

Tournament random_tournament(unsigned n, std::mt19937_64& gen) {
  BitString edges;
  for (unsigned i = 0; i < n * (n - 1) / 2; ++i) {
    edges.push_back(static_cast<int>(gen() % 2));
  }
  return make_tournament(n, edges);
}

}  // namespace

TEST_CASE("adder step counts") {
  CHECK(adder_run(5, 3).steps == 4);
  CHECK(adder_run(5, 3).sum == 8);
  CHECK(adder_run(0, 0).steps == 1);
  CHECK(adder_run(9, 0).steps == 1);
  CHECK(adder_run(255, 1).steps == 9);
  CHECK(adder_run(255, 1).sum == 256);
  CHECK(adder_steps(12, 12) == adder_run(12, 12).steps);
  for (std::uint64_t x = 0; x < 40; ++x) {
    for (std::uint64_t y = 0; y < 40; ++y) {
      CHECK(adder_run(x, y).sum == x + y);
    }
  }
  CHECK_THROWS_AS(adder_run(std::uint64_t(1) << 62, 1), InvalidInput);
}

TEST_CASE("eight-bit adder sweep is the frozen census") {
  AdderSweep s = adder_sweep(8);
  CHECK(s.bits == 8);
  CHECK(s.total_steps == 207247);
  CHECK(s.max_steps == 9);
  CHECK(s.mean == Dyadic(207247, 16));
  CHECK(s.mean <= Dyadic(4, 0));
  CHECK_THROWS_AS(adder_sweep(13), TooLarge);
  CHECK_THROWS_AS(adder_sweep(0), TooLarge);
}

TEST_CASE("edge indexing is row major over pairs") {
  CHECK(edge_index(4, 0, 1) == 0);
  CHECK(edge_index(4, 0, 2) == 1);
  CHECK(edge_index(4, 0, 3) == 2);
  CHECK(edge_index(4, 1, 2) == 3);
  CHECK(edge_index(4, 2, 3) == 5);
  Tournament t = make_tournament(3, bits("110"));
  CHECK(t.beats(0, 1));
  CHECK(t.beats(0, 2));
  CHECK(t.beats(2, 1));
  CHECK_FALSE(t.beats(1, 0));
}

TEST_CASE("tournament literals round trip") {
  Tournament t = parse_tournament("4:101010");
  CHECK(t.n == 4);
  CHECK(serialize_tournament(t) == "4:101010");
  CHECK_THROWS_AS(parse_tournament("4:10101"), MalformedCode);
  CHECK_THROWS_AS(parse_tournament("x:1"), MalformedCode);
  CHECK_THROWS_AS(make_tournament(4, bits("10101")), InvalidInput);
}

TEST_CASE("ceil log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
}

TEST_CASE("planted-list codes have the promised length and round trip") {
  std::mt19937_64 gen(21);
  for (int round = 0; round < 50; ++round) {
    unsigned n = 4 + unsigned(gen() % 6);
    Tournament t = random_tournament(n, gen);
    // Plant a dominance chain on a random vertex subset.
    unsigned v = 2 + unsigned(gen() % (n - 1));
    std::vector<unsigned> listed;
    for (unsigned i = 0; i < n && listed.size() < v; ++i) {
      if (gen() % 2 == 0 || n - i == v - listed.size()) listed.push_back(i);
    }
    v = unsigned(listed.size());
    for (std::size_t a = 0; a < listed.size(); ++a) {
      for (std::size_t b = a + 1; b < listed.size(); ++b) {
        t.edges.set_bit(edge_index(n, listed[a], listed[b]), 1);
      }
    }
    BitString code = encode_tournament(t, listed);
    CHECK(code.size() ==
          v * ceil_log2(n) + (n * (n - 1)) / 2 - (v * (v - 1)) / 2);
    Tournament back = decode_tournament(n, v, code);
    CHECK(back.n == t.n);
    CHECK(back.edges == t.edges);
  }
}

TEST_CASE("encoding refuses lists that are not dominance chains") {
  Tournament t = make_tournament(3, bits("110"));
  // 0 beats 1, 0 beats 2, 2 beats 1: {0,2,1} is the chain, {0,1,2} is not.
  CHECK(encode_tournament(t, {0, 2, 1}).size() == 2 * 3 + 3 - 3);
  CHECK_THROWS_AS(encode_tournament(t, {0, 1, 2}), InvalidWitness);
  CHECK_THROWS_AS(encode_tournament(t, {0, 0}), InvalidWitness);
  CHECK_THROWS_AS(encode_tournament(t, {0, 5}), InvalidWitness);
}

TEST_CASE("decoding rejects malformed codes") {
  Tournament t = make_tournament(3, bits("110"));
  BitString code = encode_tournament(t, {0, 2});
  CHECK_THROWS_AS(decode_tournament(3, 4, code), MalformedCode);
  CHECK_THROWS_AS(decode_tournament(3, 2, code + bits("0")), MalformedCode);
  // Right length, but the two index fields name the same vertex.
  BitString dup = bits("0000") + bits("00");
  CHECK_THROWS_AS(decode_tournament(3, 2, dup), MalformedCode);
  // Right length, but the first field names vertex three of three.
  BitString oob = bits("1111") + bits("00");
  CHECK_THROWS_AS(decode_tournament(3, 2, oob), MalformedCode);
}

TEST_CASE("transitive size census at five") {
  std::map<unsigned, std::uint64_t> hist = transitive_size_histogram(5);
  REQUIRE(hist.size() == 3);
  CHECK(hist.at(3) == 184);
  CHECK(hist.at(4) == 720);
  CHECK(hist.at(5) == 120);
  std::uint64_t total = 0;
  for (const auto& [v, count] : hist) total += count;
  CHECK(total == std::uint64_t(1) << 10);
  CHECK_THROWS_AS(transitive_size_histogram(7), TooLarge);
}

TEST_CASE("every four player tournament holds a three chain") {
  std::map<unsigned, std::uint64_t> hist = transitive_size_histogram(4);
  CHECK(hist.count(1) == 0);
  CHECK(hist.count(2) == 0);
  CHECK(hist.at(4) == 24);
}

TEST_CASE("counting bound rows") {
  std::vector<TournamentBoundRow> rows = tournament_bound_check(5);
  REQUIRE(rows.size() == 5);
  for (const TournamentBoundRow& row : rows) {
    CHECK(row.holds);
    CHECK(row.bound_log2 ==
          row.v * ceil_log2(5) + 10 - (row.v * (row.v - 1)) / 2);
  }
  // At n=5 every bound exponent reaches C(5,2), so no row bites.
  for (const TournamentBoundRow& row : rows) CHECK(row.vacuous);
}

TEST_CASE("max transitive size agrees with an all-pairs subset scan") {
  std::mt19937_64 gen(8);
  for (int round = 0; round < 30; ++round) {
    Tournament t = random_tournament(5, gen);
    unsigned best = 0;
    for (unsigned mask = 1; mask < 32; ++mask) {
      std::vector<unsigned> vs;
      for (unsigned i = 0; i < 5; ++i) {
        if (mask & (1u << i)) vs.push_back(i);
      }
      std::sort(vs.begin(), vs.end(), [&](unsigned a, unsigned b) {
        unsigned wa = 0;
        unsigned wb = 0;
        for (unsigned i = 0; i < 5; ++i) {
          if (!(mask & (1u << i))) continue;
          if (i != a && t.beats(a, i)) ++wa;
          if (i != b && t.beats(b, i)) ++wb;
        }
        return wa > wb;
      });
      bool ordered = true;
      for (std::size_t i = 0; i < vs.size() && ordered; ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
          if (!t.beats(vs[i], vs[j])) {
            ordered = false;
            break;
          }
        }
      }
      if (ordered) best = std::max(best, unsigned(vs.size()));
    }
    CHECK(max_transitive_size(t) == best);
    CHECK(best >= 3);
  }
}

TEST_CASE("projection counting on crafted sets") {
  TripleSet diag{4, 4, 4, {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}};
  ProjectionsReport r = projections_check(diag);
  CHECK(r.count == 3);
  CHECK(r.xy == 3);
  CHECK(r.yz == 3);
  CHECK(r.xz == 3);
  CHECK(r.holds);

  TripleSet dup{2, 2, 2, {{0, 0, 0}, {0, 0, 0}}};
  CHECK(projections_check(dup).count == 1);

  TripleSet empty{1, 1, 1, {}};
  ProjectionsReport e = projections_check(empty);
  CHECK(e.count == 0);
  CHECK(e.holds);

  TripleSet oob{2, 2, 2, {{2, 0, 0}}};
  CHECK_THROWS_AS(projections_check(oob), InvalidInput);
  TripleSet wide{65, 1, 1, {}};
  CHECK_THROWS_AS(projections_check(wide), TooLarge);
}

TEST_CASE("projection inequality on random sets") {
  std::mt19937_64 gen(17);
  for (int round = 0; round < 500; ++round) {
    TripleSet a{8, 8, 8, {}};
    std::size_t triples = std::size_t(gen() % 120);
    for (std::size_t j = 0; j < triples; ++j) {
      a.triples.push_back(
          {unsigned(gen() % 8), unsigned(gen() % 8), unsigned(gen() % 8)});
    }
    ProjectionsReport r = projections_check(a);
    CHECK(r.holds);
    CHECK(r.count * r.count <= r.xy * r.yz * r.xz);
  }
}
