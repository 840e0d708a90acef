#include "aitlab/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "aitlab/errors.hpp"

namespace aitlab {

namespace {

constexpr std::uint64_t kAdderOperandCap = std::uint64_t(1) << 62;

std::size_t pairs(std::uint64_t n) { return std::size_t(n * (n - 1) / 2); }

}  // namespace

AdderRun adder_run(std::uint64_t x, std::uint64_t y) {
  if (x >= kAdderOperandCap || y >= kAdderOperandCap) {
    throw InvalidInput("adder operands must be below 2^62");
  }
  AdderRun run;
  std::uint64_t a = x;
  std::uint64_t b = y;
  do {
    ++run.steps;
    std::uint64_t sum = a ^ b;
    std::uint64_t carry = (a & b) << 1;
    a = sum;
    b = carry;
  } while (b != 0);
  run.sum = a;
  return run;
}

std::uint64_t adder_steps(std::uint64_t x, std::uint64_t y) {
  return adder_run(x, y).steps;
}

AdderSweep adder_sweep(unsigned bits) {
  if (bits == 0 || bits > 12) {
    throw TooLarge("adder sweep supports 1..12 operand bits");
  }
  AdderSweep sweep;
  sweep.bits = bits;
  std::uint64_t count = std::uint64_t(1) << bits;
  for (std::uint64_t x = 0; x < count; ++x) {
    for (std::uint64_t y = 0; y < count; ++y) {
      std::uint64_t steps = adder_run(x, y).steps;
      sweep.total_steps += steps;
      sweep.max_steps = std::max(sweep.max_steps, steps);
    }
  }
  sweep.mean = Dyadic(BigInt(sweep.total_steps), 2 * bits);
  return sweep;
}

std::size_t edge_index(unsigned n, unsigned i, unsigned j) {
  if (i >= j || j >= n) throw InvalidInput("edge index needs i < j < n");
  // Row i holds pairs {i, i+1} .. {i, n-1}.
  return std::size_t(i) * n - pairs(std::uint64_t(i) + 1) + (j - i - 1);
}

bool Tournament::beats(unsigned i, unsigned j) const {
  if (i == j || i >= n || j >= n) {
    throw InvalidInput("beats needs two distinct vertices");
  }
  if (i < j) return edges.bit(edge_index(n, i, j)) == 1;
  return edges.bit(edge_index(n, j, i)) == 0;
}

Tournament make_tournament(unsigned n, const BitString& edges) {
  if (n == 0 || n > 64) throw TooLarge("vertex count must be in 1..64");
  if (edges.size() != pairs(n)) {
    throw InvalidInput("tournament on " + std::to_string(n) + " vertices needs " +
                       std::to_string(pairs(n)) + " edge bits");
  }
  return Tournament{n, edges};
}

Tournament parse_tournament(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw MalformedCode("tournament literal must be n:<edgebits>");
  }
  std::string head = text.substr(0, colon);
  if (head.empty() || head.size() > 2 ||
      head.find_first_not_of("0123456789") != std::string::npos) {
    throw MalformedCode("bad vertex count in tournament literal: " + head);
  }
  unsigned n = unsigned(std::stoul(head));
  std::string bits = text.substr(colon + 1);
  if (bits.find_first_not_of("01") != std::string::npos) {
    throw MalformedCode("edge bits must be 0/1");
  }
  if (n == 0 || n > 64) throw TooLarge("vertex count must be in 1..64");
  if (bits.size() != pairs(n)) {
    throw MalformedCode("expected " + std::to_string(pairs(n)) +
                        " edge bits, got " + std::to_string(bits.size()));
  }
  return Tournament{n, BitString::from_text(bits)};
}

std::string serialize_tournament(const Tournament& t) {
  return std::to_string(t.n) + ":" + t.edges.text();
}

unsigned ceil_log2(unsigned n) {
  if (n == 0) throw InvalidInput("ceil_log2(0)");
  unsigned bits = 0;
  while ((std::uint64_t(1) << bits) < n) ++bits;
  return bits;
}

BitString encode_tournament(const Tournament& t,
                            const std::vector<unsigned>& transitive) {
  make_tournament(t.n, t.edges);
  std::set<unsigned> members;
  for (unsigned v : transitive) {
    if (v >= t.n) throw InvalidWitness("listed vertex out of range");
    if (!members.insert(v).second) throw InvalidWitness("repeated vertex");
  }
  for (std::size_t a = 0; a < transitive.size(); ++a) {
    for (std::size_t b = a + 1; b < transitive.size(); ++b) {
      if (!t.beats(transitive[a], transitive[b])) {
        throw InvalidWitness("listed vertices are not in dominance order");
      }
    }
  }
  unsigned width = ceil_log2(t.n);
  BitString code;
  for (unsigned v : transitive) {
    code = code + BitString::from_uint(v, width);
  }
  for (unsigned i = 0; i + 1 < t.n; ++i) {
    for (unsigned j = i + 1; j < t.n; ++j) {
      if (members.count(i) != 0 && members.count(j) != 0) continue;
      code.push_back(t.edges.bit(edge_index(t.n, i, j)));
    }
  }
  return code;
}

Tournament decode_tournament(unsigned n, unsigned v, const BitString& code) {
  if (n == 0 || n > 64) throw TooLarge("vertex count must be in 1..64");
  if (v > n) throw MalformedCode("transitive list longer than vertex count");
  unsigned width = ceil_log2(n);
  std::size_t expect = std::size_t(v) * width + pairs(n) - pairs(v);
  if (code.size() != expect) {
    throw MalformedCode("expected " + std::to_string(expect) + " bits, got " +
                        std::to_string(code.size()));
  }
  std::vector<unsigned> listed;
  std::set<unsigned> members;
  std::size_t pos = 0;
  for (unsigned k = 0; k < v; ++k) {
    unsigned vertex = 0;
    for (unsigned b = 0; b < width; ++b) {
      vertex = (vertex << 1) | unsigned(code.bit(pos++));
    }
    if (vertex >= n) throw MalformedCode("vertex field out of range");
    if (!members.insert(vertex).second) {
      throw MalformedCode("repeated vertex field");
    }
    listed.push_back(vertex);
  }
  BitString edges = BitString::zeros(pairs(n));
  for (unsigned i = 0; i + 1 < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      if (members.count(i) != 0 && members.count(j) != 0) continue;
      edges.set_bit(edge_index(n, i, j), code.bit(pos++));
    }
  }
  for (std::size_t a = 0; a < listed.size(); ++a) {
    for (std::size_t b = a + 1; b < listed.size(); ++b) {
      unsigned i = listed[a];
      unsigned j = listed[b];
      if (i < j) {
        edges.set_bit(edge_index(n, i, j), 1);
      } else {
        edges.set_bit(edge_index(n, j, i), 0);
      }
    }
  }
  return Tournament{n, edges};
}

unsigned max_transitive_size(const Tournament& t) {
  make_tournament(t.n, t.edges);
  if (t.n > 16) throw TooLarge("exhaustive subset sweep capped at 16 vertices");
  unsigned best = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << t.n); ++mask) {
    unsigned size = unsigned(std::popcount(mask));
    if (size <= best) continue;
    // Transitive iff the within-subset scores are pairwise distinct.
    std::uint32_t seen = 0;
    bool ok = true;
    for (unsigned i = 0; ok && i < t.n; ++i) {
      if ((mask >> i & 1) == 0) continue;
      unsigned score = 0;
      for (unsigned j = 0; j < t.n; ++j) {
        if (i == j || (mask >> j & 1) == 0) continue;
        if (t.beats(i, j)) ++score;
      }
      if (seen >> score & 1) ok = false;
      seen |= std::uint32_t(1) << score;
    }
    if (ok) best = size;
  }
  return best;
}

std::map<unsigned, std::uint64_t> transitive_size_histogram(unsigned n) {
  if (n == 0 || n > 6) throw TooLarge("exhaustive tournament sweep capped at 6");
  std::map<unsigned, std::uint64_t> hist;
  std::size_t edge_bits = pairs(n);
  for (std::uint64_t id = 0; id < (std::uint64_t(1) << edge_bits); ++id) {
    Tournament t{n, BitString::from_uint(id, edge_bits)};
    ++hist[max_transitive_size(t)];
  }
  return hist;
}

std::vector<TournamentBoundRow> tournament_bound_check(unsigned n) {
  std::map<unsigned, std::uint64_t> hist = transitive_size_histogram(n);
  std::vector<TournamentBoundRow> rows;
  for (unsigned v = 1; v <= n; ++v) {
    TournamentBoundRow row;
    row.v = v;
    for (const auto& [size, count] : hist) {
      if (size >= v) row.exact += count;
    }
    row.bound_log2 = std::uint64_t(v) * ceil_log2(n) + pairs(n) - pairs(v);
    row.vacuous = std::uint64_t(v) * ceil_log2(n) >= pairs(v);
    row.holds = row.bound_log2 >= 64 ||
                row.exact <= (std::uint64_t(1) << row.bound_log2);
    rows.push_back(row);
  }
  return rows;
}

ProjectionsReport projections_check(const TripleSet& a) {
  if (a.nx == 0 || a.ny == 0 || a.nz == 0 || a.nx > 64 || a.ny > 64 ||
      a.nz > 64) {
    throw TooLarge("ground sets must be in 1..64");
  }
  std::set<std::tuple<unsigned, unsigned, unsigned>> unique;
  std::set<std::pair<unsigned, unsigned>> xy;
  std::set<std::pair<unsigned, unsigned>> yz;
  std::set<std::pair<unsigned, unsigned>> xz;
  for (const auto& [x, y, z] : a.triples) {
    if (x >= a.nx || y >= a.ny || z >= a.nz) {
      throw InvalidInput("triple outside the ground sets");
    }
    unique.emplace(x, y, z);
    xy.emplace(x, y);
    yz.emplace(y, z);
    xz.emplace(x, z);
  }
  ProjectionsReport report;
  report.count = unique.size();
  report.xy = xy.size();
  report.yz = yz.size();
  report.xz = xz.size();
  report.holds = report.count * report.count <= report.xy * report.yz * report.xz;
  return report;
}

}  // namespace aitlab
