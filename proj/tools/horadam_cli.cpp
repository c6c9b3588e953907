// Command-line front end: exact Horadam sequence/quaternion terms, tables,
// grid verification of the quaternion identities, and a naive-vs-fast
// benchmark. Exit codes: 0 ok, 1 verification failure or evaluator mismatch,
// 2 usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horadam/identities.hpp"
#include "horadam/io.hpp"
#include "horadam/qsequences.hpp"
#include "horadam/sequences.hpp"

namespace {

using namespace horadam;

struct GlobalOpts {
  std::string format = "human";  // json | csv | human
  std::string output;            // empty: stdout
};

class Sink {
 public:
  explicit Sink(const GlobalOpts& opts) {
    if (!opts.output.empty()) {
      file_.open(opts.output);
      if (!file_) throw std::runtime_error("cannot open " + opts.output);
      out_ = &file_;
    }
  }
  std::ostream& out() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

struct ParamFlags {
  std::string w0 = "0", w1 = "1", p = "1", q = "1";

  HoradamParams parse() const {
    return {Rat::parse_int(w0), Rat::parse_int(w1), Rat::parse_int(p),
            Rat::parse_int(q)};
  }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags, bool with_initials) {
  if (with_initials) {
    cmd->add_option("--w0", flags.w0, "initial term w_0");
    cmd->add_option("--w1", flags.w1, "initial term w_1");
  }
  cmd->add_option("-p,--p", flags.p, "recurrence coefficient p");
  cmd->add_option("-q,--q", flags.q, "recurrence coefficient q");
}

long parse_long(const std::string& text) {
  std::size_t used = 0;
  long value = std::stol(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad integer: " + text);
  return value;
}

GridRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const long v = parse_long(text);
    return {v, v};
  }
  return {parse_long(text.substr(0, dots)), parse_long(text.substr(dots + 2))};
}

int cmd_term(const GlobalOpts& g, const ParamFlags& flags, long n) {
  const HoradamParams params = flags.parse();
  const Rat value = term_fast(params, n);
  Sink sink(g);
  if (g.format == "json") {
    sink.out() << Json{{"n", n}, {"value", value.str()}}.dump() << "\n";
  } else if (g.format == "csv") {
    sink.out() << "n,w\n" << n << "," << value.str() << "\n";
  } else {
    sink.out() << value.str() << "\n";
  }
  return 0;
}

int cmd_qterm(const GlobalOpts& g, const std::string& kind,
              const ParamFlags& flags, long n) {
  const HoradamParams base = flags.parse();
  SequenceKind seq = SequenceKind::general(base);
  if (kind == "pq-fib") seq = SequenceKind::pq_fibonacci(base.p, base.q);
  else if (kind == "pq-lucas") seq = SequenceKind::pq_lucas(base.p, base.q);
  else if (kind != "general") throw CLI::ValidationError("--kind", kind);

  const Quaternion value = horadam_quaternion(seq.params, n);
  Sink sink(g);
  if (g.format == "json") {
    sink.out() << quaternion_to_json(value).dump() << "\n";
  } else if (g.format == "csv") {
    sink.out() << "n,a0,a1,a2,a3\n"
               << n << "," << value.a0.str() << "," << value.a1.str() << ","
               << value.a2.str() << "," << value.a3.str() << "\n";
  } else {
    sink.out() << value.str() << "\n";
  }
  return 0;
}

int cmd_table(const GlobalOpts& g, const ParamFlags& flags, long from,
              long to) {
  if (from > to) throw CLI::ValidationError("--from/--to", "from > to");
  const HoradamParams params = flags.parse();
  TermCache cache(params);
  Sink sink(g);
  if (g.format == "csv") sink.out() << "n,w,W_a0,W_a1,W_a2,W_a3\n";
  for (long n = from; n <= to; ++n) {
    const Rat& w = cache.at(n);
    const Quaternion wq{cache.at(n), cache.at(n + 1), cache.at(n + 2),
                        cache.at(n + 3)};
    if (g.format == "json") {
      sink.out() << Json{{"n", n},
                         {"w", w.str()},
                         {"W", quaternion_to_json(wq)}}
                        .dump()
                 << "\n";
    } else if (g.format == "csv") {
      sink.out() << n << "," << w.str() << "," << wq.a0.str() << ","
                 << wq.a1.str() << "," << wq.a2.str() << "," << wq.a3.str()
                 << "\n";
    } else {
      sink.out() << "n=" << n << "  w=" << w.str() << "  W=" << wq.str()
                 << "\n";
    }
  }
  return 0;
}

struct VerifyFlags {
  std::string ids = "all";
  std::vector<std::string> grid_terms;
  std::string idx_range, k_range;
  bool default_grid = false;
  bool per_identity = false;
  bool strict = false;
  long max_failures = 0;  // 0: print all
};

GridSpec build_grid(const VerifyFlags& flags) {
  GridSpec grid;
  auto apply = [&grid](const std::string& term) {
    const auto eq = term.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--grid", "expected key=value: " + term);
    const std::string key = term.substr(0, eq);
    const GridRange range = parse_range(term.substr(eq + 1));
    if (key == "p") grid.p = range;
    else if (key == "q") { grid.q = range; grid.include_zero_q = true; }
    else if (key == "w") grid.initials = range;
    else if (key == "z") grid.second_initials = range;
    else if (key == "idx" || key == "n") grid.indices = range;
    else if (key == "k") grid.k = range;
    else throw CLI::ValidationError("--grid", "unknown key: " + key);
  };
  for (const auto& term : flags.grid_terms) {
    std::stringstream ss(term);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (!piece.empty()) apply(piece);
    }
  }
  if (!flags.idx_range.empty()) grid.indices = parse_range(flags.idx_range);
  if (!flags.k_range.empty()) grid.k = parse_range(flags.k_range);
  return grid;
}

int cmd_verify(const GlobalOpts& g, const VerifyFlags& flags) {
  std::vector<std::string> ids;
  if (flags.ids == "all") {
    ids = identity_ids();
  } else {
    std::stringstream ss(flags.ids);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty()) continue;
      if (!identity_exists(piece)) throw UnknownIdentity(piece);
      ids.push_back(piece);
    }
    if (ids.empty()) throw CLI::ValidationError("--ids", "no identities");
  }

  const GridSpec grid = build_grid(flags);
  const GridOutcome outcome = check_grid(ids, grid);
  const auto verdicts = derive_verdicts(outcome);

  Sink sink(g);
  long printed = 0;
  for (const auto& report : outcome.failures) {
    if (flags.max_failures > 0 && printed >= flags.max_failures) break;
    sink.out() << report_to_json(report).dump() << "\n";
    ++printed;
  }
  for (const auto& verdict : verdicts)
    sink.out() << verdict_to_json(verdict).dump() << "\n";
  if (flags.per_identity) {
    for (const auto& [id, tally] : outcome.per_identity) {
      Json j{{"type", "identity_summary"}, {"id", id}};
      const Json counts = tally_to_json(tally);
      for (const auto& [key, value] : counts.items()) j[key] = value;
      sink.out() << j.dump() << "\n";
    }
  }
  Json summary{{"type", "summary"}};
  const Json totals = tally_to_json(outcome.totals);
  for (const auto& [key, value] : totals.items()) summary[key] = value;
  sink.out() << summary.dump() << "\n";

  bool hard_failure = false;
  for (const auto& [id, tally] : outcome.per_identity) {
    if (tally.failed == 0) continue;
    if (flags.strict || !identity_is_informational(id)) hard_failure = true;
  }
  return hard_failure ? 1 : 0;
}

int cmd_bench(const GlobalOpts& g, const ParamFlags& flags,
              std::vector<long> ns, long reps) {
  if (reps < 1) throw CLI::ValidationError("--reps", "must be >= 1");
  for (long n : ns)
    if (n < 0) throw CLI::ValidationError("--n-list", "entries must be >= 0");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  const HoradamParams params = flags.parse();
  using Clock = std::chrono::steady_clock;
  Sink sink(g);
  if (g.format == "csv" || g.format == "human")
    sink.out() << "n,bits,naive_us,fast_us\n";
  for (long n : ns) {
    const Rat via_naive = term_naive(params, n);
    const Rat via_fast = term_fast(params, n);
    if (via_naive != via_fast) {
      std::cerr << "evaluator mismatch at n=" << n << ": naive="
                << via_naive.str() << " fast=" << via_fast.str() << "\n";
      return 1;
    }
    const auto time_us = [&](auto&& fn) {
      const auto start = Clock::now();
      for (long i = 0; i < reps; ++i) fn();
      const auto total = Clock::now() - start;
      return std::chrono::duration_cast<std::chrono::microseconds>(total)
                 .count() /
             reps;
    };
    const long long naive_us = time_us([&] { term_naive(params, n); });
    const long long fast_us = time_us([&] { term_fast(params, n); });
    const std::size_t bits =
        mpz_sizeinbase(via_fast.numerator().get_mpz_t(), 2);
    if (g.format == "json") {
      sink.out() << Json{{"n", n},
                         {"bits", bits},
                         {"naive_us", naive_us},
                         {"fast_us", fast_us}}
                        .dump()
                 << "\n";
    } else {
      sink.out() << n << "," << bits << "," << naive_us << "," << fast_us
                 << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts global;
  CLI::App app{"Exact Horadam / (p,q)-Fibonacci quaternion calculator and "
               "identity verifier"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--output", global.output, "write output to a file");

  ParamFlags term_params;
  long term_n = 0;
  auto* term = app.add_subcommand("term", "print one sequence term w_n");
  add_param_flags(term, term_params, true);
  term->add_option("-n,--n", term_n, "index (may be negative)")->required();

  ParamFlags qterm_params;
  long qterm_n = 0;
  std::string qterm_kind = "general";
  auto* qterm =
      app.add_subcommand("qterm", "print one quaternion term W_n / U_n / V_n");
  qterm->add_option("--kind", qterm_kind, "general | pq-fib | pq-lucas")
      ->check(CLI::IsMember({"general", "pq-fib", "pq-lucas"}));
  add_param_flags(qterm, qterm_params, true);
  qterm->add_option("-n,--n", qterm_n, "index (may be negative)")->required();

  ParamFlags table_params;
  long table_from = 0, table_to = 0;
  auto* table =
      app.add_subcommand("table", "print rows of (n, w_n, W_n components)");
  add_param_flags(table, table_params, true);
  table->add_option("--from", table_from, "first index")->required();
  table->add_option("--to", table_to, "last index")->required();

  VerifyFlags verify_flags;
  auto* verify =
      app.add_subcommand("verify", "check identities over a parameter grid");
  verify->add_option("--ids", verify_flags.ids,
                     "comma-separated identity ids, or 'all'");
  verify->add_flag("--default-grid", verify_flags.default_grid,
                   "use the built-in default grid (this is also the default)");
  verify->add_option("--grid", verify_flags.grid_terms,
                     "override grid ranges, e.g. p=-2..2,q=0,w=-1..1");
  verify->add_option("--n", verify_flags.idx_range,
                     "range for the indices n,m,r,s, e.g. 0..50");
  verify->add_option("--k", verify_flags.k_range, "range for k, e.g. 0..5");
  verify->add_flag("--per-identity", verify_flags.per_identity,
                   "emit one summary line per identity");
  verify->add_flag("--strict", verify_flags.strict,
                   "count informational (as-written) failures in the exit code");
  verify->add_option("--max-failures", verify_flags.max_failures,
                     "print at most this many failure lines (0: all)");

  ParamFlags bench_params;
  std::vector<long> bench_ns;
  long bench_reps = 1;
  auto* bench = app.add_subcommand(
      "bench", "compare naive vs matrix-power evaluation (asserts equality)");
  add_param_flags(bench, bench_params, true);
  bench->add_option("--n-list", bench_ns, "indices to benchmark (n >= 0)")
      ->required()
      ->delimiter(',');
  bench->add_option("--reps", bench_reps, "repetitions per measurement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(term))
      return cmd_term(global, term_params, term_n);
    if (app.got_subcommand(qterm))
      return cmd_qterm(global, qterm_kind, qterm_params, qterm_n);
    if (app.got_subcommand(table))
      return cmd_table(global, table_params, table_from, table_to);
    if (app.got_subcommand(verify)) return cmd_verify(global, verify_flags);
    if (app.got_subcommand(bench))
      return cmd_bench(global, bench_params, bench_ns, bench_reps);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
