// Batch front door for the lab: machine runs, description sweeps, halting
// mass bounds, codeword allocation, the staged mass merge, p-values, the
// dispatch constant audit, and the counting demos. Reports are line
// records (or JSON lines with --format jsonl) and are byte-stable for a
// fixed configuration, including across shard counts.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aitlab/bitstring.hpp"
#include "aitlab/bitvm.hpp"
#include "aitlab/codec.hpp"
#include "aitlab/combinatorics.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/dispatch.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/errors.hpp"
#include "aitlab/kraft.hpp"
#include "aitlab/machine.hpp"
#include "aitlab/omega.hpp"
#include "aitlab/report.hpp"
#include "aitlab/verify.hpp"

namespace {

using namespace aitlab;

struct Options {
  std::string machine = "dispatch";
  std::string manifest;
  std::string input;
  std::string cond;
  std::uint32_t max_len = 0;
  std::uint64_t fuel = 0;  // 0 means: manifest value (or its default)
  std::uint32_t stages = 0;
  std::uint64_t seed = 7;
  unsigned shards = 1;
  std::string format = "text";
  std::string out;
  std::uint64_t k = 0;
  std::string prob;
  std::uint64_t samples = 100000;
};

struct Bundle {
  std::unique_ptr<Machine> machine;
  RunMode mode = RunMode::kPlain;
  std::uint64_t fuel = 10000;
};

Bundle make_bundle(const Options& o) {
  MachineManifest m;
  if (!o.manifest.empty()) {
    std::ifstream in(o.manifest);
    if (!in) throw InvalidInput("cannot open manifest " + o.manifest);
    m = parse_manifest(in);
  } else {
    m.machine = o.machine;
  }
  Bundle b;
  if (m.machine == "bitvm") {
    b.machine = std::make_unique<UniversalBase>();
  } else if (m.machine == "dispatch") {
    TransformRegistry reg =
        m.registry.empty() ? TransformRegistry::builtin()
                           : TransformRegistry::from_manifest(m.registry);
    b.machine = std::make_unique<DispatchMachine>(std::move(reg));
  } else if (m.machine == "table") {
    if (m.table_path.empty()) {
      throw InvalidInput("a table machine needs table=<path> in its manifest");
    }
    std::ifstream in(m.table_path);
    if (!in) throw InvalidInput("cannot open table " + m.table_path);
    b.machine = std::make_unique<TableMachine>(TableMachine::load(in));
  } else {
    throw InvalidInput("unknown machine " + m.machine);
  }
  b.mode = m.mode == "prefix" ? RunMode::kPrefix : RunMode::kPlain;
  b.fuel = m.fuel;
  if (o.fuel != 0) b.fuel = o.fuel;
  if (b.fuel == 0) throw InvalidInput("fuel must be positive");
  return b;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InvalidInput("cannot open output file " + o.out);
  file << text;
}

std::string render(const Options& o, const std::vector<Record>& rows) {
  return serialize_records(rows, parse_report_format(o.format));
}

BitString parse_label(const std::string& token) {
  if (token == "-") return BitString();
  return BitString::from_text(token);
}

std::uint64_t parse_decimal(const std::string& token) {
  if (token.empty() || token.size() > 18 ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidInput("expected a decimal number, got " + token);
  }
  return std::stoull(token);
}

std::vector<Record> k_table_rows(const KTable& table) {
  return parse_records(serialize_k_table(table));
}

int cmd_eval(const Options& o) {
  Bundle b = make_bundle(o);
  RunResult r = eval_mode(*b.machine, b.mode, BitString::from_text(o.input),
                          BitString::from_text(o.cond), b.fuel);
  Record row;
  row.name = to_string(r.status);
  row.add("output", r.output.text());
  row.add("steps", r.steps);
  row.add("consumed", r.consumed);
  emit(o, render(o, {row}));
  return 0;
}

int cmd_search(const Options& o) {
  Bundle b = make_bundle(o);
  Horizon h(o.max_len, b.fuel);
  BitString target = BitString::from_text(o.input);
  BitString cond = BitString::from_text(o.cond);
  auto est = k_upper(*b.machine, target, cond, h, b.mode);
  Record row;
  if (est.has_value()) {
    row.name = "entry";
    row.add("output", target.text());
    row.add("value", est->value);
    row.add("witness", est->witness.text());
  } else {
    row.name = "unfound";
    row.add("output", target.text());
    row.add("max-len", std::uint64_t(h.max_len));
    row.add("fuel", h.fuel);
  }
  emit(o, render(o, {row}));
  return 0;
}

int cmd_table(const Options& o) {
  Bundle b = make_bundle(o);
  Horizon h(o.max_len, b.fuel);
  KTable t = k_table(*b.machine, BitString::from_text(o.cond), h, b.mode,
                     o.shards);
  emit(o, render(o, k_table_rows(t)));
  return 0;
}

int cmd_omega(const Options& o) {
  Bundle b = make_bundle(o);
  Horizon h(o.max_len, b.fuel);
  BitString cond = BitString::from_text(o.cond);
  Dyadic mass = omega_lower(*b.machine, cond, h, o.shards);
  DomainReport domain = prefix_domain_check(*b.machine, cond, h, o.shards);
  std::vector<Record> rows;
  Record head;
  head.name = "omega";
  head.add("value", mass.str());
  rows.push_back(head);
  Record dom;
  dom.name = "domain";
  dom.add("size", domain.domain_size);
  dom.add("prefix-free", domain.prefix_free ? "true" : "false");
  rows.push_back(dom);
  for (const auto& [shorter, longer] : domain.violations) {
    Record v;
    v.name = "violation";
    v.add("shorter", shorter.text());
    v.add("longer", longer.text());
    rows.push_back(v);
  }
  emit(o, render(o, rows));
  return 0;
}

int cmd_alloc(const Options& o) {
  std::istream* in = &std::cin;
  std::ifstream file;
  if (!o.input.empty()) {
    file.open(o.input);
    if (!file) throw InvalidInput("cannot open requests file " + o.input);
    in = &file;
  }
  std::vector<LengthRequest> stream;
  std::string line;
  while (std::getline(*in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string label;
    std::string length;
    if (!(fields >> label >> length)) {
      throw InvalidInput("request line must be <label> <length>: " + line);
    }
    stream.push_back({parse_label(label),
                      std::size_t(parse_decimal(length))});
  }
  std::vector<RevisionOutcome> outcomes = allocate_revisions(stream);
  KraftAllocator replay;
  std::vector<Record> rows;
  for (const RevisionOutcome& done : outcomes) {
    replay.allocate(done.length);
    Record row;
    row.name = "alloc";
    row.add("label", done.label.text());
    row.add("length", std::uint64_t(done.length));
    row.add("codeword", done.codeword.text());
    rows.push_back(row);
  }
  Record mass;
  mass.name = "mass";
  mass.add("allocated", replay.allocated_mass().str());
  mass.add("free", replay.free_mass().str());
  rows.push_back(mass);
  for (const BitString& s : replay.free_strings()) {
    Record row;
    row.name = "free";
    row.add("string", s.text());
    rows.push_back(row);
  }
  emit(o, render(o, rows));
  return 0;
}

int cmd_merge(const Options& o) {
  std::uint32_t stages = o.stages == 0 ? 20 : o.stages;
  if (stages > 200) throw InvalidInput("merge demo caps stages at 200");
  MergeInstance inst = random_merge_instance(o.seed, 50, stages);
  MergeResult result = merge_construction(
      inst.k_stages, inst.alpha,
      [](std::uint32_t t) { return Dyadic::pow2(-std::int64_t(t)); });
  if (parse_report_format(o.format) == ReportFormat::kText) {
    emit(o, serialize_trace(result.trace));
    return 0;
  }
  std::vector<Record> rows;
  for (const MergeStage& stage : result.trace) {
    Record row;
    row.name = "stage";
    row.add("t", std::uint64_t(stage.t));
    row.add("sum_k", stage.sum_k.str());
    row.add("alpha", stage.alpha.str());
    row.add("sum_kprime", stage.sum_kprime.str());
    rows.push_back(row);
  }
  emit(o, render(o, rows));
  return 0;
}

int cmd_pvalue(const Options& o) {
  Dyadic prob = Dyadic::parse(o.prob);
  Dyadic value = effective_p_value(o.k, prob);
  if (parse_report_format(o.format) == ReportFormat::kText) {
    emit(o, value.str() + "\n");
    return 0;
  }
  Record row;
  row.name = "pvalue";
  row.add("value", value.str());
  emit(o, render(o, {row}));
  return 0;
}

int cmd_verify_constants(const Options& o) {
  Bundle b = make_bundle(o);
  auto* dispatch = dynamic_cast<const DispatchMachine*>(b.machine.get());
  if (dispatch == nullptr) {
    throw InvalidInput("constant verification runs on the dispatch machine");
  }
  Horizon h(o.max_len == 0 ? 16 : o.max_len, b.fuel);
  std::vector<ConstantCheck> checks =
      verify_dispatch_constants(*dispatch, h, o.seed);
  std::vector<Record> rows;
  bool all_pass = true;
  for (const ConstantCheck& c : checks) {
    Record row;
    row.name = "check";
    row.add("name", c.name);
    row.add("checks", c.checks);
    row.add("pass", c.pass ? "true" : "false");
    rows.push_back(row);
    if (!c.pass) {
      all_pass = false;
      std::cerr << "FAIL " << c.name << ": " << c.detail << "\n";
    }
  }
  emit(o, render(o, rows));
  return all_pass ? 0 : 1;
}

int cmd_demo_adder(const Options& o) {
  std::vector<Record> rows;
  for (auto [x, y] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {5, 3}, {9, 0}, {255, 1}}) {
    AdderRun run = adder_run(x, y);
    Record row;
    row.name = "adder";
    row.add("x", x);
    row.add("y", y);
    row.add("steps", run.steps);
    row.add("sum", run.sum);
    rows.push_back(row);
  }
  AdderSweep sweep = adder_sweep(8);
  Record row;
  row.name = "sweep";
  row.add("bits", std::uint64_t(sweep.bits));
  row.add("total", sweep.total_steps);
  row.add("max", sweep.max_steps);
  row.add("mean", sweep.mean.str());
  row.add("bound", std::uint64_t(4));
  row.add("pass", sweep.mean <= Dyadic(4, 0) ? "true" : "false");
  rows.push_back(row);
  emit(o, render(o, rows));
  return 0;
}

int cmd_demo_tournament(const Options& o) {
  std::vector<Record> rows;
  std::map<unsigned, std::uint64_t> hist = transitive_size_histogram(5);
  std::uint64_t total = 0;
  for (const auto& [v, count] : hist) {
    Record row;
    row.name = "histogram";
    row.add("v", std::uint64_t(v));
    row.add("count", count);
    rows.push_back(row);
    total += count;
  }
  Record sum;
  sum.name = "histogram-total";
  sum.add("count", total);
  rows.push_back(sum);
  for (const TournamentBoundRow& bound : tournament_bound_check(5)) {
    Record row;
    row.name = "bound";
    row.add("v", std::uint64_t(bound.v));
    row.add("exact", bound.exact);
    row.add("bound-log2", bound.bound_log2);
    row.add("vacuous", bound.vacuous ? "true" : "false");
    row.add("holds", bound.holds ? "true" : "false");
    rows.push_back(row);
  }
  std::map<unsigned, std::uint64_t> four = transitive_size_histogram(4);
  Record transitive;
  transitive.name = "transitive";
  transitive.add("n", std::uint64_t(4));
  transitive.add("count", four.count(4) != 0 ? four.at(4) : 0);
  rows.push_back(transitive);

  // One planted round trip, deterministic from the seed.
  std::mt19937_64 gen(o.seed);
  unsigned n = 8;
  unsigned v = 4;
  BitString edges;
  for (std::size_t i = 0; i < std::size_t(n) * (n - 1) / 2; ++i) {
    edges.push_back(static_cast<int>(gen() % 2));
  }
  Tournament t = make_tournament(n, edges);
  std::vector<unsigned> listed = {1, 4, 6, 7};
  for (std::size_t a = 0; a < listed.size(); ++a) {
    for (std::size_t bidx = a + 1; bidx < listed.size(); ++bidx) {
      t.edges.set_bit(edge_index(n, listed[a], listed[bidx]), 1);
    }
  }
  BitString code = encode_tournament(t, listed);
  Tournament back = decode_tournament(n, v, code);
  Record trip;
  trip.name = "roundtrip";
  trip.add("n", std::uint64_t(n));
  trip.add("v", std::uint64_t(v));
  trip.add("code-bits", std::uint64_t(code.size()));
  trip.add("ok", back.edges == t.edges ? "true" : "false");
  rows.push_back(trip);
  emit(o, render(o, rows));
  return 0;
}

int cmd_demo_projections(const Options& o) {
  std::vector<Record> rows;
  auto report_row = [](const std::string& label, const ProjectionsReport& r) {
    Record row;
    row.name = "projections";
    row.add("case", label);
    row.add("count", r.count);
    row.add("xy", r.xy);
    row.add("yz", r.yz);
    row.add("xz", r.xz);
    row.add("holds", r.holds ? "true" : "false");
    return row;
  };
  TripleSet single{1, 1, 1, {{0, 0, 0}}};
  rows.push_back(report_row("single", projections_check(single)));
  TripleSet cube{2, 2, 2, {}};
  for (unsigned x = 0; x < 2; ++x) {
    for (unsigned y = 0; y < 2; ++y) {
      for (unsigned z = 0; z < 2; ++z) cube.triples.push_back({x, y, z});
    }
  }
  rows.push_back(report_row("cube", projections_check(cube)));

  std::mt19937_64 gen(o.seed);
  std::uint64_t holds = 0;
  const std::uint64_t sets = 100;
  for (std::uint64_t i = 0; i < sets; ++i) {
    TripleSet a{8, 8, 8, {}};
    std::size_t triples = std::size_t(gen() % 150);
    for (std::size_t j = 0; j < triples; ++j) {
      a.triples.push_back({unsigned(gen() % 8), unsigned(gen() % 8),
                           unsigned(gen() % 8)});
    }
    if (projections_check(a).holds) ++holds;
  }
  Record sweep;
  sweep.name = "sweep";
  sweep.add("sets", sets);
  sweep.add("holds", holds);
  sweep.add("pass", holds == sets ? "true" : "false");
  rows.push_back(sweep);
  emit(o, render(o, rows));
  return 0;
}

int cmd_empirical(const Options& o) {
  Bundle b = make_bundle(o);
  EmpiricalResult result =
      empirical_a_priori(*b.machine, BitString::from_text(o.cond), o.max_len,
                         b.fuel, o.samples, o.seed);
  std::vector<Record> rows;
  Record head;
  head.name = "summary";
  head.add("samples", result.samples);
  head.add("halted", result.halted);
  rows.push_back(head);
  std::vector<std::pair<BitString, std::uint64_t>> entries(
      result.counts.begin(), result.counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return LexLess{}(a.first, b.first);
  });
  for (const auto& [output, count] : entries) {
    Record row;
    row.name = "entry";
    row.add("output", output.text());
    row.add("frequency", count);
    rows.push_back(row);
  }
  emit(o, render(o, rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algorithmic information lab"};
  app.require_subcommand(1);
  Options o;

  auto add_machine_flags = [&](CLI::App* cmd) {
    cmd->add_option("--machine", o.machine, "bitvm | dispatch | table");
    cmd->add_option("--manifest", o.manifest, "machine manifest path");
  };
  auto add_report_flags = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "text | jsonl");
    cmd->add_option("--out", o.out, "write the report to this path");
  };

  CLI::App* eval = app.add_subcommand("eval", "run one input");
  add_machine_flags(eval);
  add_report_flags(eval);
  eval->add_option("--input", o.input, "input bits")->required();
  eval->add_option("--cond", o.cond, "condition bits");
  eval->add_option("--fuel", o.fuel, "fuel budget");

  CLI::App* search = app.add_subcommand("search", "find a least description");
  add_machine_flags(search);
  add_report_flags(search);
  search->add_option("--input", o.input, "target output bits")->required();
  search->add_option("--cond", o.cond, "condition bits");
  search->add_option("--max-len", o.max_len, "description length cap")
      ->required();
  search->add_option("--fuel", o.fuel, "fuel budget");

  CLI::App* table = app.add_subcommand("table", "sweep all descriptions");
  add_machine_flags(table);
  add_report_flags(table);
  table->add_option("--cond", o.cond, "condition bits");
  table->add_option("--max-len", o.max_len, "description length cap")
      ->required();
  table->add_option("--fuel", o.fuel, "fuel budget");
  table->add_option("--shards", o.shards, "sweep shard count");

  CLI::App* omega = app.add_subcommand("omega", "halting mass lower bound");
  add_machine_flags(omega);
  add_report_flags(omega);
  omega->add_option("--cond", o.cond, "condition bits");
  omega->add_option("--max-len", o.max_len, "input length cap")->required();
  omega->add_option("--fuel", o.fuel, "fuel budget");
  omega->add_option("--shards", o.shards, "sweep shard count");

  CLI::App* alloc = app.add_subcommand("alloc", "allocate codewords");
  add_report_flags(alloc);
  alloc->add_option("--input", o.input,
                    "requests file (default stdin), lines: <label> <length>");

  CLI::App* merge = app.add_subcommand("merge", "staged mass merge trace");
  add_report_flags(merge);
  merge->add_option("--seed", o.seed, "instance seed");
  merge->add_option("--stages", o.stages, "stage cap (default 20)");

  CLI::App* pvalue = app.add_subcommand("pvalue", "scaled tail weight");
  add_report_flags(pvalue);
  pvalue->add_option("--k", o.k, "complexity bound")->required();
  pvalue->add_option("--prob", o.prob, "probability as num/2^exp")->required();

  CLI::App* verify = app.add_subcommand("verify-constants",
                                        "audit dispatch constants");
  add_machine_flags(verify);
  add_report_flags(verify);
  verify->add_option("--max-len", o.max_len, "sweep length cap (default 16)");
  verify->add_option("--fuel", o.fuel, "fuel budget");
  verify->add_option("--seed", o.seed, "seed for the embedded-rule triples");

  CLI::App* demo_adder = app.add_subcommand("demo-adder", "adder step counts");
  add_report_flags(demo_adder);

  CLI::App* demo_tournament =
      app.add_subcommand("demo-tournament", "tournament encodings");
  add_report_flags(demo_tournament);
  demo_tournament->add_option("--seed", o.seed, "round-trip instance seed");

  CLI::App* demo_projections =
      app.add_subcommand("demo-projections", "projection counting");
  add_report_flags(demo_projections);
  demo_projections->add_option("--seed", o.seed, "random sweep seed");

  CLI::App* empirical = app.add_subcommand("empirical", "sampled halting stats");
  add_machine_flags(empirical);
  add_report_flags(empirical);
  empirical->add_option("--cond", o.cond, "condition bits");
  empirical->add_option("--max-len", o.max_len, "sample length cap")
      ->required();
  empirical->add_option("--fuel", o.fuel, "fuel budget");
  empirical->add_option("--seed", o.seed, "sampling seed");
  empirical->add_option("--samples", o.samples, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(o);
    if (search->parsed()) return cmd_search(o);
    if (table->parsed()) return cmd_table(o);
    if (omega->parsed()) return cmd_omega(o);
    if (alloc->parsed()) return cmd_alloc(o);
    if (merge->parsed()) return cmd_merge(o);
    if (pvalue->parsed()) return cmd_pvalue(o);
    if (verify->parsed()) return cmd_verify_constants(o);
    if (demo_adder->parsed()) return cmd_demo_adder(o);
    if (demo_tournament->parsed()) return cmd_demo_tournament(o);
    if (demo_projections->parsed()) return cmd_demo_projections(o);
    if (empirical->parsed()) return cmd_empirical(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
