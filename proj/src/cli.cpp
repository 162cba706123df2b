#include "pbrel/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pbrel/cutting_planes.hpp"
#include "pbrel/errors.hpp"
#include "pbrel/generators.hpp"
#include "pbrel/solver.hpp"

namespace pbrel {

InstanceStats analyze_trace(const DerivationTrace& trace, const DetectorConfig& cfg, bool exact) {
  InstanceStats s;
  for (const TraceStep& step : trace.steps) {
    if (step.rule == Rule::Cancel) ++s.cancellations;
    if (!is_dumped_rule(step.rule)) continue;
    ++s.constraints_dumped;
    const RelevanceReport report = detect_all(step.result, cfg, exact);
    const std::size_t irrelevant = report.irrelevant().size();
    if (irrelevant > 0) ++s.constraints_with_irrelevant;
    s.irrelevant_literals_total += irrelevant;
    s.checks_performed += report.checks;
    if (report.skipped) ++s.skipped_constraints;
  }
  return s;
}

namespace {

struct DetectorFlags {
  std::vector<std::uint32_t> moduli{4547};
  std::size_t max_literals = 500;
  bool exact = false;

  void attach(CLI::App* cmd, bool with_exact) {
    cmd->add_option("--p", moduli, "Moduli for the incomplete detector (comma separated)")->delimiter(',');
    cmd->add_option("--max-lits", max_literals, "Skip constraints with more literals than this");
    if (with_exact) cmd->add_flag("--exact", exact, "Use the exact subset-sum oracle instead");
  }

  DetectorConfig config() const {
    DetectorConfig cfg;
    cfg.moduli = moduli;
    cfg.max_literals = max_literals;
    cfg.validate();
    return cfg;
  }
};

std::string join_literals(const std::vector<Literal>& lits) {
  if (lits.empty()) return "none";
  std::string out;
  for (Literal l : lits) {
    if (!out.empty()) out += ' ';
    out += to_string(l);
  }
  return out;
}

RelevanceReport detect(const PBConstraint& c, const DetectorConfig& cfg, bool exact, std::ostream& err) {
  if (!exact) return detect_all(c, cfg, false);
  try {
    return detect_all(c, cfg, true);
  } catch (const OracleCapacityExceeded& e) {
    err << "warning: " << e.what() << "; falling back to modular detection\n";
    return detect_all(c, cfg, false);
  }
}

int cmd_check(const std::string& text, const DetectorFlags& flags, std::ostream& out, std::ostream& err) {
  const DetectorConfig cfg = flags.config();
  for (const PBConstraint& c : parse_normalized(text)) {
    out << "constraint: " << to_string(c) << '\n';
    const RelevanceReport report = detect(c, cfg, flags.exact, err);
    if (report.skipped) out << "skipped: more than " << cfg.max_literals << " literals\n";
    for (const auto& [lit, verdict] : report.verdicts) out << to_string(lit) << ": " << to_string(verdict) << '\n';
    out << "checks: " << report.checks << '\n';
    out << "irrelevant: " << join_literals(report.irrelevant()) << '\n';
  }
  return 0;
}

int cmd_simplify(const std::string& input, const std::string& output, const std::string& strategy_name,
                 const DetectorFlags& flags, std::ostream& out, std::ostream& err) {
  const RemovalStrategy strategy = parse_removal_strategy(strategy_name);
  const DetectorConfig cfg = flags.config();
  const OpbDocument doc = parse_opb(read_file(input));
  for (const std::string& w : doc.warnings) err << "warning: " << w << '\n';

  // Report lines go to stdout when the instance is written to a file.
  std::ostream& report = output.empty() ? err : out;
  std::string body;
  std::uint64_t written = 0;
  std::uint64_t changed = 0;
  std::uint64_t removed = 0;
  for (std::size_t i = 0; i < doc.constraints.size(); ++i) {
    const RawConstraint& raw = doc.constraints[i];
    std::vector<PBConstraint> parts = normalize(raw);
    bool modified = false;
    for (PBConstraint& c : parts) {
      const std::vector<Literal> irrelevant = detect(c, cfg, flags.exact, err).irrelevant();
      if (irrelevant.empty()) continue;
      const PBConstraint simplified = remove_irrelevant(saturate(c), irrelevant, strategy);
      report << "constraint " << i + 1 << ": removed " << join_literals(irrelevant) << ": " << to_string(c)
             << " => " << to_string(simplified) << '\n';
      removed += irrelevant.size();
      c = simplified;
      modified = true;
    }
    if (!modified) {
      // Unchanged constraints keep their original relation.
      body += write_constraint(raw) + "\n";
      ++written;
      continue;
    }
    ++changed;
    for (const PBConstraint& c : parts) {
      if (c.is_tautology()) {
        body += "* tautology omitted\n";
        continue;
      }
      body += write_constraint(to_raw(c)) + "\n";
      ++written;
    }
  }
  const std::uint64_t vars = std::max<std::uint64_t>(doc.declared_variables.value_or(0), doc.max_var());
  const std::string text =
      "* #variable= " + std::to_string(vars) + " #constraint= " + std::to_string(written) + "\n" + body;
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
  report << "simplified " << changed << " of " << doc.constraints.size() << " constraints, removed " << removed
         << " literals using strategy " << to_string(strategy) << '\n';
  return 0;
}

struct SolveFlags {
  std::string mode = "gr";
  std::string elim = "none";
  std::string dump;
  std::optional<std::uint64_t> max_conflicts;
  std::optional<double> max_seconds;
  std::uint64_t luby = 0;
  bool seedless = false;
};

int cmd_solve(const std::string& input, const SolveFlags& flags, const DetectorFlags& detector, std::ostream& out,
              std::ostream& err) {
  SolverOptions options;
  options.analysis.mode = parse_analysis_mode(flags.mode);
  options.analysis.elimination = parse_elimination(flags.elim);
  options.analysis.detector = detector.config();
  options.limits.max_conflicts = flags.max_conflicts;
  options.limits.max_seconds = flags.max_seconds;
  options.luby_unit = flags.luby;
  options.record_trace = !flags.dump.empty();

  const OpbDocument doc = parse_opb(read_file(input));
  for (const std::string& w : doc.warnings) err << "warning: " << w << '\n';
  const std::vector<PBConstraint> formula = normalized_constraints(doc);
  const Var num_vars = std::max<Var>(static_cast<Var>(doc.declared_variables.value_or(0)), doc.max_var());

  const SolveResult result = solve(formula, options, num_vars);
  out << "s " << to_string(result.status) << '\n';
  if (result.status == SolveStatus::Sat) {
    out << 'v';
    for (Var v = 1; v <= num_vars; ++v) out << ' ' << to_string(Literal{v, result.model.is_true(Literal::pos(v))});
    out << '\n';
    for (const PBConstraint& c : formula) {
      if (!evaluate(c, result.model)) throw InternalInvariantViolation("model falsifies " + to_string(c));
    }
    out << "c model verified against " << formula.size() << " constraints\n";
  }
  const SolverStats& s = result.stats;
  out << "c conflicts " << s.conflicts << '\n'
      << "c decisions " << s.decisions << '\n'
      << "c propagations " << s.propagations << '\n'
      << "c learned " << s.learned << '\n'
      << "c cancellations " << s.cancellations << '\n'
      << "c irrelevant_detected " << s.irrelevant_literals_detected << '\n'
      << "c irrelevant_removed " << s.irrelevant_literals_removed << '\n'
      << "c restarts " << s.restarts << '\n';
  if (result.trace) write_file(flags.dump, write_trace(*result.trace));

  switch (result.status) {
    case SolveStatus::Sat:
      return kExitSat;
    case SolveStatus::Unsat:
      return kExitUnsat;
    case SolveStatus::Unknown:
      break;
  }
  return kExitUnknown;
}

struct FileAnalysis {
  InstanceStats stats;
  std::vector<std::string> errors;
  std::string failure;
};

FileAnalysis analyze_file(const std::string& path, const DetectorConfig& cfg, bool exact) {
  FileAnalysis fa;
  try {
    TraceReadResult read = read_trace_lenient(read_file(path));
    fa.errors = std::move(read.errors);
    fa.stats = analyze_trace(read.trace, cfg, exact);
  } catch (const std::exception& e) {
    fa.failure = e.what();
  }
  fa.stats.instance = std::filesystem::path(path).stem().string();
  fa.stats.family = family_of(path);
  return fa;
}

int cmd_analyze(const std::vector<std::string>& files, const std::string& output, unsigned jobs,
                const DetectorFlags& flags, std::ostream& out, std::ostream& err) {
  const DetectorConfig cfg = flags.config();
  std::vector<FileAnalysis> results(files.size());
  jobs = std::max(1u, jobs);
  for (std::size_t first = 0; first < files.size(); first += jobs) {
    const std::size_t last = std::min(files.size(), first + jobs);
    std::vector<std::future<FileAnalysis>> batch;
    for (std::size_t i = first; i < last; ++i) {
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, analyze_file,
                                 std::cref(files[i]), std::cref(cfg), flags.exact));
    }
    for (std::size_t i = first; i < last; ++i) results[i] = batch[i - first].get();
  }

  int status = 0;
  std::vector<InstanceStats> rows;
  InstanceStats total;
  std::uint64_t malformed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const FileAnalysis& fa = results[i];
    if (!fa.failure.empty()) {
      err << "error: " << files[i] << ": " << fa.failure << '\n';
      status = kExitError;
      continue;
    }
    for (const std::string& e : fa.errors) err << files[i] << ": " << e << '\n';
    if (!fa.errors.empty()) err << files[i] << ": skipped " << fa.errors.size() << " malformed records\n";
    malformed += fa.errors.size();
    rows.push_back(fa.stats);
    total.constraints_dumped += fa.stats.constraints_dumped;
    total.constraints_with_irrelevant += fa.stats.constraints_with_irrelevant;
    total.irrelevant_literals_total += fa.stats.irrelevant_literals_total;
    total.checks_performed += fa.stats.checks_performed;
    total.skipped_constraints += fa.stats.skipped_constraints;
    total.cancellations += fa.stats.cancellations;
  }

  const std::string csv = write_stats_csv(rows);
  std::ostream& summary = output.empty() ? err : out;
  if (output.empty()) {
    out << csv;
  } else {
    write_file(output, csv);
  }
  summary << "instances " << rows.size() << '\n'
          << "constraints_dumped " << total.constraints_dumped << '\n'
          << "constraints_with_irrelevant " << total.constraints_with_irrelevant << '\n'
          << "irrelevant_literals_total " << total.irrelevant_literals_total << '\n'
          << "checks_performed " << total.checks_performed << '\n'
          << "skipped_constraints " << total.skipped_constraints << '\n'
          << "cancellations " << total.cancellations << '\n'
          << "malformed_records " << malformed << '\n';
  return status;
}

int cmd_generate(const std::string& family, int n, const std::string& output, std::ostream& out) {
  if (family != "vertexcover-complete") throw InvalidArgument("unknown instance family '" + family + "'");
  const std::vector<PBConstraint> instance = generate_vertexcover_complete(n);
  const std::string text = write_opb(instance, n);
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Irrelevant-literal detection and cutting-planes solving for pseudo-Boolean constraints", "pbrel"};
  app.require_subcommand(1);

  DetectorFlags detector;

  std::string constraint_text;
  auto* check = app.add_subcommand("check", "Report irrelevant literals of one constraint");
  check->add_option("constraint", constraint_text, "Constraint in OPB syntax, e.g. \"+2 x1 +1 x2 >= 2\"")->required();
  detector.attach(check, true);

  std::string input;
  std::string output;
  std::string strategy = "slack";
  auto* simplify = app.add_subcommand("simplify", "Remove irrelevant literals from every constraint of an instance");
  simplify->add_option("input", input, "OPB instance")->required();
  simplify->add_option("-o,--output", output, "Write the simplified instance here instead of stdout");
  simplify->add_option("--strategy", strategy, "weaken, simple or slack")
      ->check(CLI::IsMember({"weaken", "simple", "slack"}));
  detector.attach(simplify, true);

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Decide satisfiability with conflict-driven search");
  solve_cmd->add_option("input", input, "OPB instance")->required();
  solve_cmd->add_option("--mode", solve_flags.mode, "Conflict analysis: gr or div")
      ->check(CLI::IsMember({"gr", "div"}));
  solve_cmd->add_option("--elim", solve_flags.elim, "Irrelevant-literal elimination during analysis")
      ->check(CLI::IsMember({"none", "weaken", "simple", "slack"}));
  solve_cmd->add_option("--dump", solve_flags.dump, "Write the derivation trace (JSON lines) here");
  solve_cmd->add_option("--max-conflicts", solve_flags.max_conflicts, "Give up after this many conflicts");
  solve_cmd->add_option("--max-seconds", solve_flags.max_seconds, "Give up after this much wall-clock time");
  solve_cmd->add_option("--luby", solve_flags.luby, "Restart with this Luby unit (0 disables restarts)");
  solve_cmd->add_flag("--seedless", solve_flags.seedless, "Deterministic decision order (always on)");
  detector.attach(solve_cmd, false);

  std::vector<std::string> traces;
  unsigned jobs = 1;
  auto* analyze = app.add_subcommand("analyze", "Run the detector on every dumped constraint of trace files");
  analyze->add_option("traces", traces, "Trace files written by solve --dump")->required();
  analyze->add_option("-o,--output", output, "Write the CSV here instead of stdout");
  analyze->add_option("-j,--jobs", jobs, "Number of files processed concurrently");
  detector.attach(analyze, true);

  std::string family;
  int n = 0;
  auto* generate = app.add_subcommand("generate", "Write a benchmark instance");
  generate->add_option("family", family, "Instance family (vertexcover-complete)")->required();
  generate->add_option("n", n, "Instance size")->required();
  generate->add_option("-o,--output", output, "Write here instead of stdout");

  std::vector<std::string> argv_store{"pbrel"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitError;
  }

  try {
    if (*check) return cmd_check(constraint_text, detector, out, err);
    if (*simplify) return cmd_simplify(input, output, strategy, detector, out, err);
    if (*solve_cmd) return cmd_solve(input, solve_flags, detector, out, err);
    if (*analyze) return cmd_analyze(traces, output, jobs, detector, out, err);
    if (*generate) return cmd_generate(family, n, output, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace pbrel
