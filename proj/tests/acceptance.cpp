// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance               run every criterion
//   acceptance --criterion N run one (repeatable)

#include <CLI11.hpp>

#include <chrono>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "pbrel/analysis.hpp"
#include "pbrel/cutting_planes.hpp"
#include "pbrel/generators.hpp"
#include "pbrel/relevance.hpp"
#include "pbrel/solver.hpp"
#include "pbrel/trace.hpp"

using namespace pbrel;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

using Check = std::function<void(Outcome&)>;

ConflictAnalysisConfig config(AnalysisMode mode, Elimination e) {
  ConflictAnalysisConfig cfg;
  cfg.mode = mode;
  cfg.elimination = e;
  return cfg;
}

std::uint64_t mask_of(const Assignment& a, int nvars) {
  std::uint64_t m = 0;
  for (Var v = 1; v <= nvars; ++v) {
    if (a.is_true(Literal::pos(v))) m |= std::uint64_t{1} << (v - 1);
  }
  return m;
}

// 1. Equivalent forms of the running example and their slacks.
void criterion1(Outcome& o) {
  const PBConstraint full = pc("+10 x1 +5 x2 +5 x3 +2 x4 +1 x5 +1 x6 >= 15");
  const PBConstraint simple = pc("+10 x1 +5 x2 +5 x3 >= 15");
  const PBConstraint weakened = pc("+10 x1 +5 x2 +5 x3 >= 11");
  o.expect(oracle::equivalent(full, simple, 6), "full <-> 10a+5b+5c>=15");
  o.expect(oracle::equivalent(full, weakened, 6), "full <-> 10a+5b+5c>=11");
  o.expect(slack(full) == 9 && slack(simple) == 5 && slack(weakened) == 9, "slacks 9, 5, 9");
  const RelevanceReport r = detect_all(full, DetectorConfig{}, true);
  const std::vector<Literal> irr = r.irrelevant();
  o.expect(irr == (std::vector<Literal>{x(4), x(5), x(6)}), "d, e, f irrelevant");
  o.expect(remove_simple(full, irr) == simple, "simple removal");
  o.expect(remove_by_weakening(full, irr) == weakened, "removal by weakening");
  o.detail << "slacks " << slack(full) << ", " << slack(simple) << ", " << slack(weakened);
}

// 2. Rule outputs.
void criterion2(Outcome& o) {
  const PBConstraint w = weaken(pc("+3 x1 +3 x2 +1 x3 +1 x4 >= 4"), x(4));
  o.expect(w == pc("+3 x1 +3 x2 +1 x3 >= 3"), "weaken");
  o.expect(exact_is_irrelevant(w, x(3)), "c irrelevant after weakening");
  o.expect(divide(pc("+6 x1 +5 x2 +1 x3 >= 6"), 2) == pc("+3 x1 +3 x2 +1 x3 >= 3"), "divide");
  const PBConstraint s = add(pc("+4 x1 +3 x2 +3 x3 >= 6"), pc("+2 x1 +3 x2 +2 x4 >= 3"));
  o.expect(s == pc("+6 x1 +6 x2 +3 x3 +2 x4 >= 9"), "add");
  o.expect(exact_is_irrelevant(s, x(4)), "d irrelevant after addition");
  const PBConstraint c = cancel(pc("+4 x2 +3 ~x5 +3 x3 +2 x1 >= 6"), pc("+4 x1 +3 x5 +2 x2 +2 x4 >= 6"), x(5));
  o.expect(c == s, "cancellation gives the same constraint");
  o.detail << "weaken " << to_string(w) << "; add/cancel " << to_string(c);
}

// 3. The conflict analysis chain in both modes.
void criterion3(Outcome& o) {
  const PBConstraint circ = pc("+4 x1 +4 x2 +3 ~x5 +3 x7 +3 x8 +2 x9 +2 x10 >= 16");
  const PBConstraint reason = pc("+6 x1 +6 x2 +4 x3 +3 x4 +3 x5 +2 x6 >= 10");
  const PBConstraint diamond = weaken(reason, x(3));
  o.expect(diamond == pc("+6 x1 +6 x2 +3 x4 +3 x5 +2 x6 >= 6") && slack(diamond) == 14, "diamond, slack 14");
  o.expect(detect_all(diamond, DetectorConfig{}).irrelevant() == std::vector<Literal>{x(6)}, "f irrelevant in diamond");
  const PBConstraint star = cancel(circ, diamond, 5);
  o.expect(star == pc("+10 x1 +10 x2 +3 x4 +3 x7 +3 x8 +2 x6 +2 x9 +2 x10 >= 19"), "star");
  const PBConstraint diamond_w = remove_by_weakening(diamond, std::vector<Literal>{x(6)});
  o.expect(slack(diamond_w) == 10, "diamond_w slack 10");
  const PBConstraint star_w = cancel(circ, diamond_w, 5);
  o.expect(oracle::entails(star_w, star, 10) && !oracle::entails(star, star_w, 10), "star_w strictly stronger than star");
  const PBConstraint diamond_r = remove_simple(diamond, std::vector<Literal>{x(6)});
  o.expect(slack(diamond_r) == 12, "diamond_r slack 12");
  const PBConstraint star_r = cancel(circ, diamond_r, 5);
  o.expect(oracle::entails(star_w, star_r, 10) && oracle::entails(star_r, star, 10), "star_w |= star_r |= star");

  // Division-based reduction of the reason for d under {~a, ~b, c, ~d, ~e, f}.
  const PBConstraint rs = pc("+17 x1 +17 x2 +8 x3 +4 x4 +2 x5 +2 x6 >= 23");
  const Assignment trail{nx(1), nx(2), x(3), nx(4), nx(5), x(6)};
  const PBConstraint nabla = weaken(rs, x(6));
  o.expect(slack(nabla) == 27, "nabla slack 27");
  o.expect(exact_is_irrelevant(nabla, x(5)) && detect_all(nabla, DetectorConfig{}).irrelevant() == std::vector<Literal>{x(5)},
           "e irrelevant in nabla");
  const PBConstraint delta = pc("+5 x1 +5 x2 +2 x3 +1 x4 +1 x5 >= 6");
  o.expect(divide(nabla, 4) == delta, "delta");
  const PBConstraint nabla_w = remove_by_weakening(nabla, std::vector<Literal>{x(5)});
  o.expect(slack(nabla_w) == 27, "nabla_w slack 27");
  const PBConstraint delta_w = divide(nabla_w, 4);
  o.expect(oracle::equivalent(delta_w, pc("+1 x1 +1 x2 >= 1"), 4), "delta_w equivalent to a+b>=1");
  const PBConstraint nabla_r = remove_simple(nabla, std::vector<Literal>{x(5)});
  o.expect(slack(nabla_r) == 25, "nabla_r slack 25");
  o.expect(divide(nabla_r, 4) == pc("+5 x1 +5 x2 +2 x3 +1 x4 >= 6"), "delta_r");

  // The same chain through the instrumented analysis entry points, replayed.
  for (Elimination e : {Elimination::Off, Elimination::Weaken, Elimination::Simple}) {
    DerivationTrace t;
    SolverStats stats;
    Deriver deriver(&t, &stats);
    const Derived in = deriver.input(rs, 0);
    const Derived out = reduce_reason_div(deriver, in, x(4), trail, config(AnalysisMode::DivisionBased, e), stats);
    const PBConstraint want = e == Elimination::Off ? delta : e == Elimination::Weaken ? delta_w : divide(nabla_r, 4);
    o.expect(out.constraint == want, std::string("reduce_reason_div with ") + to_string(e));
    o.expect(replay(t).ok(), "division trace replays");
  }
  o.detail << "star " << to_string(star) << "; delta " << to_string(delta);
}

// 4. Modular detector on the modulus example.
void criterion4(Outcome& o) {
  const PBConstraint c = pc("+12 x1 +6 x2 +6 x3 +2 x4 +2 x5 >= 18");
  DetectorConfig p5;
  p5.moduli = {5};
  DetectorConfig p6;
  p6.moduli = {6};
  const RelevanceReport r5 = detect_all(c, p5);
  const RelevanceReport r6 = detect_all(c, p6);
  o.expect(r5.irrelevant().empty(), "p=5 proves nothing");
  o.expect(r6.irrelevant() == (std::vector<Literal>{x(4), x(5)}), "p=6 proves d, e");
  o.expect(r6.checks == 2, "two checks with p=6");
  o.detail << "p=5: " << r5.irrelevant().size() << " proven; p=6: " << r6.irrelevant().size() << " proven in "
           << r6.checks << " checks";
}

// 5. k x1 + x2 + ... + xk >= k simplifies to the unit clause.
void criterion5(Outcome& o) {
  const PBConstraint unit = pc("+1 x1 >= 1");
  for (int k = 2; k <= 50; ++k) {
    std::vector<Term> terms{{1, true, k}};
    for (int v = 2; v <= k; ++v) terms.push_back(Term{v, true, 1});
    const PBConstraint c = PBConstraint::from_terms(terms, k);
    const std::vector<Literal> irr = detect_all(c, DetectorConfig{}).irrelevant();
    o.expect(irr.size() == static_cast<std::size_t>(k - 1), "k-1 irrelevant literals for k=" + std::to_string(k));
    const PBConstraint w = remove_irrelevant(c, irr, RemovalStrategy::Weaken);
    o.expect(w == unit, "weakening yields x1>=1 for k=" + std::to_string(k));
    const PBConstraint s = remove_irrelevant(c, irr, RemovalStrategy::Simple);
    o.expect(divide(s, k) == unit, "simple removal yields k x1>=k for k=" + std::to_string(k));
    const PBConstraint sb = remove_irrelevant(c, irr, RemovalStrategy::SlackBased);
    o.expect(divide(sb, k) == unit || sb == unit, "slack-based removal for k=" + std::to_string(k));
    if (k <= 12) o.expect(oracle::equivalent(c, unit, k), "equivalence for k=" + std::to_string(k));
  }
  o.detail << "k = 2..50";
}

// 6. Modular detector soundness against the exact oracle.
void criterion6(Outcome& o) {
  oracle::Rng rng(6006);
  std::uint64_t proven = 0;
  std::uint64_t unsound = 0;
  for (int i = 0; i < 10000; ++i) {
    const int n = oracle::uniform(rng, 1, 12);
    const PBConstraint c = oracle::random_saturated(rng, n, oracle::uniform(rng, 1, n), 50);
    DetectorConfig cfg;
    cfg.moduli.clear();
    for (int j = 0, m = oracle::uniform(rng, 1, 3); j < m; ++j) {
      const int pick = oracle::uniform(rng, 2, 98);
      cfg.moduli.push_back(pick == 98 ? 4547u : static_cast<std::uint32_t>(pick));
    }
    const RelevanceReport r = detect_all(c, cfg);
    for (const Term& t : c.terms()) {
      const bool claimed = incomplete_is_irrelevant(c, t.literal(), cfg) == Verdict::ProvenIrrelevant;
      const bool reported = r.verdicts.at(t.literal()) == Verdict::ProvenIrrelevant;
      if (!claimed && !reported) continue;
      ++proven;
      if (!oracle::flip_irrelevant(c, t.var, n)) ++unsound;
    }
  }
  o.expect(unsound == 0, std::to_string(unsound) + " unsound verdicts");
  o.expect(proven > 0, "detector proved something");
  o.detail << "10000 constraints, " << proven << " literals proven irrelevant, " << unsound << " unsound";
}

// 7. Exact oracle against definition-level enumeration.
void criterion7(Outcome& o) {
  oracle::Rng rng(7007);
  std::uint64_t literals = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t irrelevant = 0;
  for (int i = 0; i < 2000; ++i) {
    const int n = oracle::uniform(rng, 1, 10);
    const PBConstraint c = i % 2 == 0 ? oracle::random_constraint(rng, n, oracle::uniform(rng, 1, n), 20)
                                      : oracle::random_saturated(rng, n, oracle::uniform(rng, 1, n), 20);
    for (const Term& t : c.terms()) {
      ++literals;
      const bool exact = exact_is_irrelevant(c, t.literal());
      irrelevant += exact ? 1 : 0;
      if (exact != oracle::flip_irrelevant(c, t.var, n)) ++mismatches;
    }
  }
  o.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.detail << "2000 constraints, " << literals << " literals (" << irrelevant << " irrelevant), " << mismatches
           << " mismatches";
}

// 8. Entailment and equivalence of the rules by truth table.
void criterion8(Outcome& o) {
  oracle::Rng rng(8008);
  std::uint64_t violations = 0;
  auto require = [&](bool ok, const char* rule) {
    if (!ok) {
      ++violations;
      o.expect(false, rule);
    }
  };
  for (int i = 0; i < 1000; ++i) {
    const int n = oracle::uniform(rng, 2, 14);
    const PBConstraint a = oracle::random_constraint(rng, n, oracle::uniform(rng, 1, std::min(n, 8)), 12);
    const PBConstraint b = oracle::random_constraint(rng, n, oracle::uniform(rng, 1, std::min(n, 8)), 12);

    require(oracle::equivalent(a, saturate(a), n), "saturate");
    const Term& t = a.terms()[static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<int>(a.size()) - 1))];
    require(oracle::entails(a, weaken(a, t.literal()), n), "weaken");
    require(oracle::entails(a, divide(a, oracle::uniform(rng, 1, 6)), n), "divide");
    require(oracle::equivalent(a, multiply(a, oracle::uniform(rng, 1, 6)), n), "multiply");
    require(oracle::entails({a, b}, add(a, b), n), "add");

    // Cancellation: flip one shared variable of b so the pivot is opposed.
    std::vector<Term> terms(b.terms().begin(), b.terms().end());
    bool placed = false;
    for (Term& u : terms) {
      if (u.var == t.var) {
        u.positive = !t.positive;
        placed = true;
      }
    }
    if (!placed) terms.push_back(Term{t.var, !t.positive, oracle::uniform(rng, 1, 12)});
    const PBConstraint opposed = PBConstraint::from_terms(terms, b.degree());
    require(oracle::entails({a, opposed}, cancel(a, opposed, t.var), n), "cancel");
  }
  o.expect(violations == 0, std::to_string(violations) + " violations");
  o.detail << "1000 inputs x 6 rules, " << violations << " violations";
}

// 9. Solver verdicts against brute force.
void criterion9(Outcome& o) {
  oracle::Rng rng(9009);
  std::uint64_t sat = 0;
  std::uint64_t unsat = 0;
  std::uint64_t wrong = 0;
  std::uint64_t bad_models = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = oracle::uniform(rng, 1, 20);
    const std::vector<PBConstraint> f = oracle::random_formula(rng, n, oracle::uniform(rng, 1, 30));
    const bool expected = oracle::brute_force_sat(f, n).has_value();
    (expected ? sat : unsat) += 1;
    for (AnalysisMode mode : {AnalysisMode::GeneralizedResolution, AnalysisMode::DivisionBased}) {
      for (Elimination e : {Elimination::Off, Elimination::Weaken, Elimination::Simple, Elimination::SlackBased}) {
        SolverOptions opts;
        opts.analysis = config(mode, e);
        const SolveResult r = solve(f, opts, n);
        const bool got_sat = r.status == SolveStatus::Sat;
        if (r.status == SolveStatus::Unknown || got_sat != expected) {
          ++wrong;
          o.expect(false, "instance " + std::to_string(i) + " mode " + to_string(mode) + " elim " + to_string(e));
        }
        if (got_sat && !oracle::holds_all(f, mask_of(r.model, n))) {
          ++bad_models;
          o.expect(false, "model of instance " + std::to_string(i) + " does not verify");
        }
      }
    }
  }
  o.detail << "1000 instances (" << sat << " sat, " << unsat << " unsat) x 8 configurations, " << wrong
           << " wrong verdicts, " << bad_models << " bad models";
}

struct ProofRun {
  SolveResult none;
  SolveResult slack;
};

const std::vector<ProofRun>& proof_runs() {
  static const std::vector<ProofRun> runs = [] {
    std::vector<ProofRun> out;
    for (int n = 8; n <= 16; n += 2) {
      const std::vector<PBConstraint> f = generate_vertexcover_complete(n);
      SolverOptions opts;
      opts.record_trace = true;
      opts.analysis = config(AnalysisMode::GeneralizedResolution, Elimination::Off);
      ProofRun run;
      run.none = solve(f, opts);
      opts.analysis.elimination = Elimination::SlackBased;
      run.slack = solve(f, opts);
      out.push_back(std::move(run));
    }
    return out;
  }();
  return runs;
}

// 10. Elimination shrinks the number of cancellations on complete graphs.
void criterion10(Outcome& o) {
  double previous_ratio = 0;
  int n = 8;
  for (const ProofRun& run : proof_runs()) {
    const std::string tag = "n=" + std::to_string(n);
    o.expect(run.none.status == SolveStatus::Unsat && run.slack.status == SolveStatus::Unsat, tag + " both UNSAT");
    const auto c0 = run.none.stats.cancellations;
    const auto c1 = run.slack.stats.cancellations;
    o.expect(c1 < c0, tag + " cancellations " + std::to_string(c1) + " not below " + std::to_string(c0));
    const double ratio = c1 == 0 ? 0 : static_cast<double>(c0) / static_cast<double>(c1);
    o.expect(ratio >= previous_ratio, tag + " ratio decreased");
    previous_ratio = ratio;
    o.detail << tag << " " << c0 << "/" << c1 << " (removed " << run.slack.stats.irrelevant_literals_removed << ") ";
    n += 2;
  }
}

// 11. Every trace from criterion 10 replays bit-identically.
void criterion11(Outcome& o) {
  std::size_t steps = 0;
  for (const ProofRun& run : proof_runs()) {
    for (const SolveResult* r : {&run.none, &run.slack}) {
      o.expect(r->trace.has_value(), "trace recorded");
      if (!r->trace) continue;
      const ReplayReport rep = replay(*r->trace);
      steps += rep.steps;
      o.expect(rep.ok(), std::to_string(rep.mismatches) + " mismatching steps");
    }
  }
  o.detail << "10 traces, " << steps << " steps replayed";
}

struct Criterion {
  int id;
  const char* title;
  Check run;
  double max_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Run only these criteria (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "equivalent forms and slacks", criterion1, 1.0},
      {2, "rule outputs", criterion2, 1.0},
      {3, "conflict analysis chain", criterion3, 1.0},
      {4, "modular detector example", criterion4, 1.0},
      {5, "unit clause from k-form", criterion5, 1.0},
      {6, "detector soundness", criterion6, 30.0},
      {7, "exact oracle ground truth", criterion7, 60.0},
      {8, "rule soundness", criterion8, 120.0},
      {9, "solver correctness", criterion9, 120.0},
      {10, "proof-size effect", criterion10, 120.0},
      {11, "trace replay", criterion11, 120.0},
  };

  int failed = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs <= c.max_seconds, "took longer than " + std::to_string(c.max_seconds) + " s");
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << o.detail.str()
              << "] " << std::fixed << std::setprecision(2) << secs << " s\n";
    for (const std::string& f : o.failures) std::cout << "     " << f << '\n';
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
