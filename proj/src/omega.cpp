#include "aitlab/omega.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "aitlab/codec.hpp"
#include "aitlab/errors.hpp"

namespace aitlab {

Dyadic omega_lower(const Machine& m, const BitString& cond, const Horizon& h,
                   unsigned shards) {
  if (shards == 0) throw InvalidInput("shard count must be positive");
  Dyadic total;
  for (unsigned shard = 0; shard < shards; ++shard) {
    Dyadic part;
    for_each_string(
        h.max_len,
        [&](const BitString& s) {
          RunResult r = eval_prefix(m, s, cond, h.fuel);
          if (r.halted()) {
            part = part + Dyadic::pow2(-static_cast<std::int64_t>(s.size()));
          }
        },
        shards, shard);
    total = total + part;
  }
  return total;
}

DomainReport prefix_domain_check(const Machine& m, const BitString& cond,
                                 const Horizon& h, unsigned shards) {
  if (shards == 0) throw InvalidInput("shard count must be positive");
  std::vector<BitString> domain;
  for (unsigned shard = 0; shard < shards; ++shard) {
    for_each_string(
        h.max_len,
        [&](const BitString& s) {
          RunResult r = eval_prefix(m, s, cond, h.fuel);
          if (r.halted()) domain.push_back(s);
        },
        shards, shard);
  }
  // In lexicographic order (prefixes first) every extension of s follows s
  // contiguously, so one adjacent scan finds a witness for every prefix
  // relation present.
  std::sort(domain.begin(), domain.end(), LexLess{});
  DomainReport report;
  report.domain_size = domain.size();
  for (std::size_t i = 0; i + 1 < domain.size(); ++i) {
    if (domain[i].is_prefix_of(domain[i + 1])) {
      report.violations.emplace_back(domain[i], domain[i + 1]);
    }
  }
  report.prefix_free = report.violations.empty();
  return report;
}

TableMachine machine_from_requests(const std::vector<LengthRequest>& stream,
                                   std::string name) {
  std::vector<RevisionOutcome> outcomes = allocate_revisions(stream);
  TableMachine::Table table;
  for (const RevisionOutcome& o : outcomes) {
    table.emplace(o.codeword, o.label);
  }
  return TableMachine(std::move(table), std::move(name));
}

std::vector<LengthRequest> tail_double_transform(
    const std::vector<LengthRequest>& requests, std::size_t split) {
  struct LabelInfo {
    std::vector<std::size_t> lengths;  // in stream order, strictly decreasing
    bool in_tail = false;
  };
  std::map<BitString, LabelInfo, LengthLexLess> labels;
  std::vector<BitString> order;  // labels by first appearance
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const LengthRequest& r = requests[i];
    auto it = labels.find(r.label);
    if (it == labels.end()) {
      it = labels.emplace(r.label, LabelInfo{}).first;
      order.push_back(r.label);
    } else if (!it->second.lengths.empty() &&
               r.length >= it->second.lengths.back()) {
      throw InvalidInput("revision must shrink: label " + r.label.text());
    }
    it->second.lengths.push_back(r.length);
    if (i >= split) it->second.in_tail = true;
  }

  Dyadic head_mass;
  Dyadic tail_mass;
  for (const auto& [label, info] : labels) {
    Dyadic final_mass =
        Dyadic::pow2(-static_cast<std::int64_t>(info.lengths.back()));
    if (info.in_tail) {
      tail_mass = tail_mass + final_mass;
    } else {
      head_mass = head_mass + final_mass;
    }
  }
  if (Dyadic::one() < head_mass ||
      Dyadic::one() - head_mass < tail_mass + tail_mass) {
    throw BudgetExceeded("doubled tail does not fit: head " +
                         head_mass.str() + ", tail " + tail_mass.str());
  }

  std::vector<LengthRequest> out;
  for (const BitString& label : order) {
    const LabelInfo& info = labels.at(label);
    if (info.in_tail) {
      for (std::size_t len : info.lengths) out.push_back({label, len});
    } else {
      out.push_back({label, info.lengths.back()});
    }
  }
  return out;
}

Dyadic exponent_mass(const ExponentMap& k) {
  Dyadic total;
  for (const auto& [x, value] : k) {
    total = total + Dyadic::pow2(-static_cast<std::int64_t>(value));
  }
  return total;
}

MergeResult merge_construction(
    const std::vector<ExponentMap>& k_stages, const std::vector<Dyadic>& alpha,
    const std::function<Dyadic(std::uint32_t)>& slack) {
  if (k_stages.empty()) throw InvalidInput("merge needs at least one stage");
  if (k_stages.size() != alpha.size()) {
    throw InvalidInput("merge stage and alpha counts differ");
  }
  for (std::size_t t = 0; t + 1 < k_stages.size(); ++t) {
    for (const auto& [x, value] : k_stages[t]) {
      auto it = k_stages[t + 1].find(x);
      if (it == k_stages[t + 1].end() || it->second > value) {
        throw InvalidInput("stage values must be pointwise non-increasing");
      }
    }
    if (alpha[t + 1] < alpha[t]) {
      throw InvalidInput("alpha must be non-decreasing");
    }
  }

  // Fresh strings must stay clear of every input stage so later pointwise
  // minima cannot disturb mass already added.
  std::set<BitString, LengthLexLess> reserved;
  for (const ExponentMap& stage : k_stages) {
    for (const auto& [x, value] : stage) reserved.insert(x);
  }
  BigInt fresh_rank = 0;
  auto fresh_string = [&]() {
    for (;;) {
      BitString s = string_unrank(fresh_rank);
      ++fresh_rank;
      if (reserved.insert(s).second) return s;
    }
  };

  MergeResult result;
  if (slack(0) < alpha[0]) {
    throw BudgetExceeded("stage-0 mass gap " + alpha[0].str() +
                         " exceeds the stage-0 slack");
  }
  result.kprime.push_back(k_stages[0]);
  result.trace.push_back(MergeStage{0, exponent_mass(k_stages[0]), alpha[0],
                                    exponent_mass(k_stages[0])});

  for (std::size_t t = 1; t < k_stages.size(); ++t) {
    ExponentMap revised = result.kprime.back();
    for (const auto& [x, value] : k_stages[t]) {
      auto it = revised.find(x);
      if (it == revised.end()) {
        revised.emplace(x, value);
      } else if (value < it->second) {
        it->second = value;
      }
    }
    Dyadic base = exponent_mass(k_stages[t]);
    Dyadic carried = exponent_mass(revised) - base;
    if (alpha[t] < carried) {
      throw BudgetExceeded("stage " + std::to_string(t) + " already carries " +
                           carried.str() + " above alpha " + alpha[t].str());
    }
    Dyadic gap = alpha[t] - carried;
    for (std::int64_t e : gap.binary_expansion()) {
      if (e < 0) {
        throw BudgetExceeded("alpha increment at stage " + std::to_string(t) +
                             " exceeds one");
      }
      revised.emplace(fresh_string(), static_cast<std::uint64_t>(e));
    }
    result.kprime.push_back(revised);
    result.trace.push_back(MergeStage{static_cast<std::uint32_t>(t), base,
                                      alpha[t], exponent_mass(revised)});
  }
  return result;
}

std::string serialize_trace(const std::vector<MergeStage>& trace) {
  std::string out;
  for (const MergeStage& row : trace) {
    out += "stage t=" + std::to_string(row.t) + " sum_k=" + row.sum_k.str() +
           " alpha=" + row.alpha.str() +
           " sum_kprime=" + row.sum_kprime.str() + "\n";
  }
  return out;
}

MergeInstance random_merge_instance(std::uint64_t seed,
                                    std::size_t max_strings,
                                    std::size_t max_stages) {
  if (max_strings == 0 || max_stages == 0) {
    throw InvalidInput("merge instance needs strings and stages");
  }
  std::mt19937_64 gen(seed);
  std::size_t strings = 1 + std::size_t(gen() % max_strings);
  std::size_t stages = 1 + std::size_t(gen() % max_stages);

  // Labels all start with 1 so they can never collide with the fresh
  // strings the construction draws (those start at the length-lex origin
  // and the instance reserves its own support anyway).
  std::vector<BitString> pool;
  for (std::size_t i = 0; i < strings; ++i) {
    BitString label;
    label.push_back(1);
    std::size_t len = 3 + std::size_t(gen() % 10);
    for (std::size_t j = 0; j < len; ++j) {
      label.push_back(static_cast<int>(gen() % 2));
    }
    pool.push_back(label);
  }

  MergeInstance inst;
  ExponentMap current;
  std::size_t next_label = 0;
  Dyadic alpha;
  // Later stages may cut any value down to 6 and adopt the rest of the
  // pool, so this is the largest mass the stage sequence can ever reach;
  // bumps guarded against it keep every stage a semimeasure.
  Dyadic potential = Dyadic(BigInt(pool.size()), 0) * Dyadic::pow2(-6);
  for (std::size_t t = 0; t < stages; ++t) {
    if (t == 0) {
      std::size_t initial = 1 + std::size_t(gen() % pool.size());
      for (std::size_t i = 0; i < initial; ++i, ++next_label) {
        current.emplace(pool[next_label], 8 + gen() % 9);
      }
    } else {
      // Grow the support occasionally, then shave a few values.
      if (next_label < pool.size() && gen() % 3 == 0) {
        current.emplace(pool[next_label], 8 + gen() % 9);
        ++next_label;
      }
      std::size_t cuts = gen() % 3;
      for (std::size_t c = 0; c < cuts && !current.empty(); ++c) {
        auto it = current.begin();
        std::advance(it, std::size_t(gen() % current.size()));
        if (it->second > 6) --it->second;
      }
      Dyadic bump = Dyadic::pow2(-std::int64_t(4 + gen() % 16));
      if (potential + alpha + bump <= Dyadic::one()) {
        alpha = alpha + bump;
      }
    }
    inst.k_stages.push_back(current);
    inst.alpha.push_back(t == 0 ? Dyadic::zero() : alpha);
  }
  return inst;
}

}  // namespace aitlab
