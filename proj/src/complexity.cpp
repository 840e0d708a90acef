#include "aitlab/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aitlab/errors.hpp"

namespace aitlab {

Horizon::Horizon(std::uint32_t max_len_in, std::uint64_t fuel_in)
    : max_len(max_len_in), fuel(fuel_in) {
  if (max_len == 0) throw InvalidInput("horizon max_len must be positive");
  if (fuel == 0) throw InvalidInput("horizon fuel must be positive");
  if (max_len > 26) {
    throw TooLarge("horizon max_len out of range: " + std::to_string(max_len));
  }
}

std::optional<ComplexityEstimate> k_upper(const Machine& m, const BitString& x,
                                          const BitString& cond,
                                          const Horizon& h, RunMode mode) {
  std::optional<ComplexityEstimate> found;
  for_each_string(h.max_len, [&](const BitString& s) {
    if (found.has_value()) return;
    RunResult r = eval_mode(m, mode, s, cond, h.fuel);
    if (r.halted() && r.output == x) {
      found = ComplexityEstimate{s.size(), s};
    }
  });
  return found;
}

KTable k_table(const Machine& m, const BitString& cond, const Horizon& h,
               RunMode mode, unsigned shards) {
  if (shards == 0) throw InvalidInput("shard count must be positive");
  KTable table;
  for (unsigned shard = 0; shard < shards; ++shard) {
    KTable part;
    for_each_string(
        h.max_len,
        [&](const BitString& s) {
          RunResult r = eval_mode(m, mode, s, cond, h.fuel);
          if (!r.halted()) return;
          auto it = part.find(r.output);
          if (it == part.end()) {
            part.emplace(r.output, ComplexityEstimate{s.size(), s});
          }
        },
        shards, shard);
    merge_k_tables(table, part);
  }
  return table;
}

void merge_k_tables(KTable& into, const KTable& from) {
  for (const auto& [output, est] : from) {
    auto it = into.find(output);
    if (it == into.end()) {
      into.emplace(output, est);
      continue;
    }
    ComplexityEstimate& have = it->second;
    if (est.value < have.value ||
        (est.value == have.value &&
         LengthLexLess{}(est.witness, have.witness))) {
      have = est;
    }
  }
}

std::string serialize_k_table(const KTable& table) {
  std::vector<KTable::const_iterator> rows;
  for (auto it = table.begin(); it != table.end(); ++it) rows.push_back(it);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a->second.value != b->second.value) {
      return a->second.value < b->second.value;
    }
    if (a->first.size() != b->first.size()) {
      return a->first.size() < b->first.size();
    }
    return LexLess{}(a->first, b->first);
  });
  std::string out;
  for (const auto& it : rows) {
    out += "entry output=" + it->first.text() +
           " value=" + std::to_string(it->second.value) +
           " witness=" + it->second.witness.text() + "\n";
  }
  return out;
}

Dyadic table_mass(const KTable& table) {
  Dyadic total;
  for (const auto& [output, est] : table) {
    total = total + Dyadic::pow2(-static_cast<std::int64_t>(est.value));
  }
  return total;
}

std::int64_t deficiency(const Machine& m, const BitString& x, const Horizon& h,
                        RunMode mode) {
  BitString cond = BitString::binary(x.size());
  auto est = k_upper(m, x, cond, h, mode);
  auto size = static_cast<std::int64_t>(x.size());
  if (est.has_value()) return size - static_cast<std::int64_t>(est->value);
  return std::min<std::int64_t>(0, size - (std::int64_t(h.max_len) + 1));
}

Dyadic effective_p_value(std::uint64_t k, const Dyadic& prob) {
  return prob.scaled_pow2(static_cast<std::int64_t>(k));
}

Dyadic semimeasure_estimate(const Machine& m, const BitString& x,
                            const BitString& cond, const Horizon& h) {
  Dyadic total;
  for_each_string(h.max_len, [&](const BitString& s) {
    RunResult r = eval_prefix(m, s, cond, h.fuel);
    if (r.halted() && r.output == x) {
      total = total + Dyadic::pow2(-static_cast<std::int64_t>(s.size()));
    }
  });
  return total;
}

EmpiricalResult empirical_a_priori(const Machine& m, const BitString& cond,
                                   std::uint32_t max_len, std::uint64_t fuel,
                                   std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  EmpiricalResult result;
  result.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::size_t len = std::size_t(gen() % (std::uint64_t(max_len) + 1));
    BitString s;
    for (std::size_t j = 0; j < len; ++j) {
      s.push_back(static_cast<int>(gen() % 2));
    }
    RunResult r = m.eval(s, cond, fuel);
    if (r.halted()) {
      ++result.halted;
      ++result.counts[r.output];
    }
  }
  return result;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double mean = (double(i) + double(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<std::pair<double, double>>& xy) {
  std::size_t n = xy.size();
  if (n < 2) return 0.0;
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = xy[i].first;
    ys[i] = xy[i].second;
  }
  std::vector<double> rx = average_ranks(xs);
  std::vector<double> ry = average_ranks(ys);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / double(n);
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / double(n);
  double cov = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  if (vx == 0.0 || vy == 0.0) return 0.0;
  return cov / std::sqrt(vx * vy);
}

}  // namespace aitlab
