#include "pbrel/solver.hpp"

#include <algorithm>
#include <chrono>

#include "pbrel/errors.hpp"

namespace pbrel {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat:
      return "SATISFIABLE";
    case SolveStatus::Unsat:
      return "UNSATISFIABLE";
    case SolveStatus::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

std::uint64_t luby(std::uint64_t i) {
  // Find the finite subsequence containing index i and its position in it.
  std::uint64_t size = 1;
  std::uint64_t seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return std::uint64_t{1} << seq;
}

Solver::Solver(SolverOptions options, Var num_vars)
    : options_(std::move(options)), activity_(0, options_.activity_decay) {
  options_.analysis.detector.validate();
  if (options_.record_trace) trace_.emplace();
  ensure_var(num_vars);
}

void Solver::ensure_var(Var v) {
  if (v <= num_vars_) return;
  num_vars_ = v;
  const auto n = static_cast<std::size_t>(v) + 1;
  occurrences_.resize(2 * n);
  level_.resize(n, -1);
  reason_.resize(n, -1);
  activity_.grow(v);
}

std::optional<Solver::ConstraintId> Solver::reason(Var v) const {
  const std::int64_t r = reason_[static_cast<std::size_t>(v)];
  if (r < 0) return std::nullopt;
  return static_cast<ConstraintId>(r);
}

Solver::ConstraintId Solver::store(const PBConstraint& c, bool learned, StepId step) {
  ensure_var(c.max_var());
  const ConstraintId id = constraints_.size();
  constraints_.push_back(Stored{c, slack_under(c, assignment_), c.max_coefficient(), step, learned});
  for (std::size_t i = 0; i < c.terms().size(); ++i) {
    occurrences_[code(c.terms()[i].literal())].push_back(Occurrence{id, i});
  }
  return id;
}

Solver::ConstraintId Solver::add_constraint(const PBConstraint& c) {
  if (decision_level() != 0) throw InvalidArgument("formula constraints can only be added at decision level 0");
  const ConstraintId id = store(c, false, 0);
  ++num_formula_;
  if (check(id)) inconsistent_ = true;
  return id;
}

void Solver::assign(Literal l, std::optional<ConstraintId> why) {
  const auto v = static_cast<std::size_t>(l.var);
  assignment_.assign(l);
  level_[v] = decision_level();
  reason_[v] = why ? static_cast<std::int64_t>(*why) : -1;
  trail_.push_back(l);
  for (const Occurrence& o : occurrences_[code(l.negated())]) {
    Stored& s = constraints_[o.id];
    s.slack -= s.constraint.terms()[o.term].coef;
  }
  if (why) ++stats_.propagations;
}

void Solver::pop_trail() {
  const Literal l = trail_.back();
  const auto v = static_cast<std::size_t>(l.var);
  for (const Occurrence& o : occurrences_[code(l.negated())]) {
    Stored& s = constraints_[o.id];
    s.slack += s.constraint.terms()[o.term].coef;
  }
  assignment_.unassign(l.var);
  level_[v] = -1;
  reason_[v] = -1;
  trail_.pop_back();
  if (!trail_lim_.empty() && trail_lim_.back() == trail_.size()) trail_lim_.pop_back();
  qhead_ = std::min(qhead_, trail_.size());
}

void Solver::decide(Literal l) {
  ensure_var(l.var);
  if (assignment_.is_assigned(l.var)) throw InvalidArgument("cannot decide on assigned variable x" + std::to_string(l.var));
  trail_lim_.push_back(trail_.size());
  ++stats_.decisions;
  assign(l, std::nullopt);
}

void Solver::backjump(int target) {
  while (decision_level() > target) pop_trail();
}

bool Solver::check(ConstraintId id) {
  const BigInt s = constraints_[id].slack;
  if (s < 0) return true;
  if (s >= constraints_[id].max_coef) return false;
  // Propagating a literal never changes this constraint's own slack.
  for (const Term& t : constraints_[id].constraint.terms()) {
    if (t.coef > s && !assignment_.is_assigned(t.var)) assign(t.literal(), id);
  }
  return false;
}

std::optional<Solver::ConstraintId> Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Literal l = trail_[qhead_++];
    const auto& occ = occurrences_[code(l.negated())];
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (check(occ[i].id)) return occ[i].id;
    }
  }
  return std::nullopt;
}

Derived Solver::derived_of(ConstraintId id) {
  Stored& s = constraints_[id];
  if (trace_ && s.step == 0) {
    Deriver deriver(&*trace_);
    s.step = deriver.input(s.constraint, id).step;
  }
  return Derived{s.constraint, s.step};
}

void Solver::bump(const PBConstraint& c, std::vector<char>& seen, std::vector<Var>& vars) const {
  for (const Term& t : c.terms()) {
    auto v = static_cast<std::size_t>(t.var);
    if (!seen[v]) {
      seen[v] = 1;
      vars.push_back(t.var);
    }
  }
}

namespace {

struct LevelSummary {
  int top = -1;     // highest level among falsified literals
  int second = -1;  // second-highest distinct level
};

}  // namespace

Solver::Analysis Solver::analyze(ConstraintId conflict) {
  Deriver deriver(trace_ ? &*trace_ : nullptr, &stats_);
  const ConflictAnalysisConfig& cfg = options_.analysis;

  // Slack of c once every assignment above `level` is undone.
  auto slack_at = [&](const PBConstraint& c, int level) {
    BigInt s = c.coefficient_sum() - c.degree();
    for (const Term& t : c.terms()) {
      if (assignment_.is_false(t.literal()) && level_[static_cast<std::size_t>(t.var)] <= level) s -= t.coef;
    }
    return s;
  };
  auto propagates_at = [&](const PBConstraint& c, int level) {
    const BigInt s = slack_at(c, level);
    if (s < 0) return false;
    return std::any_of(c.terms().begin(), c.terms().end(), [&](const Term& t) {
      const bool fixed = assignment_.is_assigned(t.var) && level_[static_cast<std::size_t>(t.var)] <= level;
      return !fixed && t.coef > s;
    });
  };

  Derived current = derived_of(conflict);
  std::vector<char> seen(static_cast<std::size_t>(num_vars_) + 1, 0);
  std::vector<Var> involved;
  bump(current.constraint, seen, involved);

  Analysis result;
  while (true) {
    const PBConstraint& c = current.constraint;
    LevelSummary levels;
    for (const Term& t : c.terms()) {
      if (!assignment_.is_false(t.literal())) continue;
      const int lv = level_[static_cast<std::size_t>(t.var)];
      if (lv > levels.top) {
        levels.second = levels.top;
        levels.top = lv;
      } else if (lv < levels.top && lv > levels.second) {
        levels.second = lv;
      }
    }
    if (slack_under(c, assignment_) >= 0) {
      throw InternalInvariantViolation("working constraint " + to_string(c) + " is no longer conflicting");
    }
    if (levels.top <= 0) {
      result.unsat = true;
      break;
    }
    const int assert_level = std::max(levels.second, 0);
    if (propagates_at(c, assert_level)) {
      result.backjump_level = assert_level;
      for (int b = 0; b < assert_level; ++b) {
        if (propagates_at(c, b)) {
          result.backjump_level = b;
          break;
        }
      }
      break;
    }

    const Literal l = trail_.back();
    const Term* t = c.find(l.var);
    const bool resolve = t != nullptr && t->positive != l.positive && reason_[static_cast<std::size_t>(l.var)] >= 0;
    if (resolve) {
      const Derived why = derived_of(static_cast<ConstraintId>(reason_[static_cast<std::size_t>(l.var)]));
      Derived reduced;
      Derived resolvent;
      if (cfg.mode == AnalysisMode::GeneralizedResolution) {
        reduced = reduce_reason_gr(deriver, current, why, l, assignment_, cfg, stats_);
        resolvent = resolve_gr(deriver, current, reduced, l.var, cfg, stats_);
      } else {
        reduced = reduce_reason_div(deriver, why, l, assignment_, cfg, stats_);
        resolvent = resolve_div(deriver, current, reduced, l.var);
      }
      bump(reduced.constraint, seen, involved);
      current = std::move(resolvent);
    }
    pop_trail();
    if (resolve && slack_under(current.constraint, assignment_) >= 0) {
      throw InternalInvariantViolation("resolvent " + to_string(current.constraint) + " lost the conflict");
    }
  }

  bump(current.constraint, seen, involved);
  activity_.bump(involved);
  result.learned = std::move(current);
  return result;
}

Solver::ConstraintId Solver::learn(const Analysis& analysis) {
  backjump(analysis.backjump_level);
  const ConstraintId id = store(analysis.learned.constraint, true, analysis.learned.step);
  ++stats_.learned;
  if (check(id)) {
    throw InternalInvariantViolation("learned constraint " + to_string(analysis.learned.constraint) +
                                     " conflicts after backjumping");
  }
  return id;
}

bool Solver::model_verified() const {
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (constraints_[i].learned) continue;
    if (!evaluate(constraints_[i].constraint, assignment_)) return false;
  }
  return true;
}

SolveResult Solver::solve() {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto out_of_time = [&] {
    if (!options_.limits.max_seconds) return false;
    return std::chrono::duration<double>(Clock::now() - start).count() > *options_.limits.max_seconds;
  };

  SolveResult result;
  std::uint64_t restart_index = 0;
  std::uint64_t since_restart = 0;
  std::uint64_t next_restart = options_.luby_unit * luby(0);

  if (inconsistent_) {
    result.status = SolveStatus::Unsat;
  } else {
    while (true) {
      if (auto confl = propagate()) {
        ++stats_.conflicts;
        if (decision_level() == 0) {
          result.status = SolveStatus::Unsat;
          break;
        }
        if ((options_.limits.max_conflicts && stats_.conflicts > *options_.limits.max_conflicts) || out_of_time()) {
          result.status = SolveStatus::Unknown;
          break;
        }
        const Analysis analysis = analyze(*confl);
        if (analysis.unsat) {
          result.status = SolveStatus::Unsat;
          break;
        }
        learn(analysis);
        activity_.decay();
        if (options_.luby_unit > 0 && ++since_restart >= next_restart) {
          backjump(0);
          ++stats_.restarts;
          since_restart = 0;
          next_restart = options_.luby_unit * luby(++restart_index);
        }
        continue;
      }
      const std::optional<Var> v = activity_.pick(assignment_);
      if (!v) {
        if (!model_verified()) throw InternalInvariantViolation("model does not satisfy the formula");
        result.status = SolveStatus::Sat;
        result.model = assignment_;
        break;
      }
      if ((stats_.decisions & 1023) == 0 && out_of_time()) {
        result.status = SolveStatus::Unknown;
        break;
      }
      decide(Literal::neg(*v));
    }
  }
  result.stats = stats_;
  if (trace_) result.trace = *trace_;
  return result;
}

SolveResult solve(std::span<const PBConstraint> formula, const SolverOptions& options, Var num_vars) {
  Solver solver(options, num_vars);
  for (const PBConstraint& c : formula) solver.add_constraint(c);
  return solver.solve();
}

}  // namespace pbrel
