#include "pbrel/analysis.hpp"

#include "pbrel/cutting_planes.hpp"
#include "pbrel/errors.hpp"

namespace pbrel {

const char* to_string(AnalysisMode m) {
  return m == AnalysisMode::GeneralizedResolution ? "gr" : "div";
}

const char* to_string(Elimination e) {
  switch (e) {
    case Elimination::Off:
      return "none";
    case Elimination::Weaken:
      return "weaken";
    case Elimination::Simple:
      return "simple";
    case Elimination::SlackBased:
      return "slack";
  }
  return "?";
}

AnalysisMode parse_analysis_mode(const std::string& name) {
  if (name == "gr") return AnalysisMode::GeneralizedResolution;
  if (name == "div") return AnalysisMode::DivisionBased;
  throw InvalidArgument("unknown analysis mode '" + name + "'");
}

Elimination parse_elimination(const std::string& name) {
  if (name == "none") return Elimination::Off;
  if (name == "weaken") return Elimination::Weaken;
  if (name == "simple") return Elimination::Simple;
  if (name == "slack") return Elimination::SlackBased;
  throw InvalidArgument("unknown elimination mode '" + name + "'");
}

RemovalStrategy removal_strategy(Elimination e) {
  switch (e) {
    case Elimination::Weaken:
      return RemovalStrategy::Weaken;
    case Elimination::Simple:
      return RemovalStrategy::Simple;
    case Elimination::SlackBased:
      return RemovalStrategy::SlackBased;
    case Elimination::Off:
      break;
  }
  throw InvalidArgument("elimination is off");
}

Derived Deriver::record(TraceStep step) {
  if (trace_ == nullptr) return Derived{std::move(step.result), 0};
  step.id = trace_->steps.size() + 1;
  Derived d{step.result, step.id};
  trace_->steps.push_back(std::move(step));
  return d;
}

Derived Deriver::input(const PBConstraint& c, std::uint64_t source) {
  TraceStep s;
  s.rule = Rule::Input;
  s.source = source;
  s.result = c;
  return record(std::move(s));
}

Derived Deriver::saturate(const Derived& d) {
  if (d.constraint.is_saturated()) return d;
  TraceStep s;
  s.rule = Rule::Saturate;
  s.operands = {d.step};
  s.result = pbrel::saturate(d.constraint);
  return record(std::move(s));
}

Derived Deriver::weaken(const Derived& d, Literal l) {
  TraceStep s;
  s.rule = Rule::Weaken;
  s.operands = {d.step};
  s.literals = {l};
  s.result = pbrel::weaken(d.constraint, l);
  return record(std::move(s));
}

Derived Deriver::divide(const Derived& d, const BigInt& divisor) {
  if (divisor == 1) return d;
  TraceStep s;
  s.rule = Rule::Divide;
  s.operands = {d.step};
  s.divisor = divisor;
  s.result = pbrel::divide(d.constraint, divisor);
  return record(std::move(s));
}

Derived Deriver::multiply(const Derived& d, const BigInt& multiplier) {
  TraceStep s;
  s.rule = Rule::Multiply;
  s.operands = {d.step};
  s.multiplier = multiplier;
  s.result = pbrel::multiply(d.constraint, multiplier);
  return record(std::move(s));
}

Derived Deriver::add(const Derived& a, const Derived& b) {
  TraceStep s;
  s.rule = Rule::Add;
  s.operands = {a.step, b.step};
  s.result = pbrel::add(a.constraint, b.constraint);
  return record(std::move(s));
}

Derived Deriver::cancel(const Derived& a, const Derived& b, Var pivot) {
  TraceStep s;
  s.rule = Rule::Cancel;
  s.operands = {a.step, b.step};
  s.pivot = pivot;
  s.result = pbrel::cancel(a.constraint, b.constraint, pivot);
  if (stats_ != nullptr) ++stats_->cancellations;
  return record(std::move(s));
}

Derived Deriver::eliminate(const Derived& d, std::span<const Literal> irrelevant, RemovalStrategy strategy) {
  TraceStep s;
  s.rule = Rule::Eliminate;
  s.operands = {d.step};
  s.literals.assign(irrelevant.begin(), irrelevant.end());
  s.strategy = strategy;
  s.result = remove_irrelevant(d.constraint, irrelevant, strategy);
  return record(std::move(s));
}

Derived eliminate_irrelevant(Deriver& deriver, const Derived& d, const ConflictAnalysisConfig& cfg,
                             SolverStats& stats) {
  if (cfg.elimination == Elimination::Off || d.constraint.empty()) return d;
  const RelevanceReport report = detect_all(d.constraint, cfg.detector, false);
  const std::vector<Literal> irrelevant = report.irrelevant();
  if (irrelevant.empty()) return d;
  stats.irrelevant_literals_detected += irrelevant.size();
  Derived out = deriver.eliminate(d, irrelevant, removal_strategy(cfg.elimination));
  stats.irrelevant_literals_removed += irrelevant.size();
  return out;
}

bool cancellation_stays_conflicting(const PBConstraint& conflict, const PBConstraint& reason, Var pivot,
                                    const Assignment& a) {
  const CancelMultipliers m = cancel_multipliers(conflict, reason, pivot);
  return m.first * slack_under(conflict, a) + m.second * slack_under(reason, a) < 0;
}

namespace {

void require_pivot(const Derived& reason, Literal propagated) {
  if (!reason.constraint.contains(propagated)) {
    throw InternalInvariantViolation("reduced reason " + to_string(reason.constraint) + " lost its pivot " +
                                     to_string(propagated));
  }
}

}  // namespace

Derived reduce_reason_gr(Deriver& deriver, const Derived& conflict, const Derived& reason, Literal propagated,
                         const Assignment& a, const ConflictAnalysisConfig& cfg, SolverStats& stats) {
  Derived r = deriver.saturate(reason);
  bool weakened = false;
  while (true) {
    if (weakened) r = eliminate_irrelevant(deriver, r, cfg, stats);
    require_pivot(r, propagated);
    if (cancellation_stays_conflicting(conflict.constraint, r.constraint, propagated.var, a)) return r;

    const Term* next = nullptr;
    for (const Term& t : r.constraint.terms()) {
      if (t.var == propagated.var || a.is_false(t.literal())) continue;
      if (next == nullptr || t.coef < next->coef) next = &t;
    }
    if (next == nullptr) {
      throw InternalInvariantViolation("reason " + to_string(r.constraint) + " cannot be weakened to preserve the conflict");
    }
    r = deriver.saturate(deriver.weaken(r, next->literal()));
    weakened = true;
  }
}

Derived resolve_gr(Deriver& deriver, const Derived& conflict, const Derived& reason, Var pivot,
                   const ConflictAnalysisConfig& cfg, SolverStats& stats) {
  Derived res = deriver.saturate(deriver.cancel(conflict, reason, pivot));
  return eliminate_irrelevant(deriver, res, cfg, stats);
}

Derived reduce_reason_div(Deriver& deriver, const Derived& reason, Literal propagated, const Assignment& a,
                          const ConflictAnalysisConfig& cfg, SolverStats& stats) {
  Derived r = reason;
  while (true) {
    require_pivot(r, propagated);
    const BigInt alpha = *r.constraint.coefficient(propagated);
    std::vector<Literal> to_weaken;
    for (const Term& t : r.constraint.terms()) {
      if (t.var == propagated.var || a.is_false(t.literal())) continue;
      if (t.coef % alpha != 0) to_weaken.push_back(t.literal());
    }
    if (to_weaken.empty()) break;
    for (Literal l : to_weaken) r = deriver.weaken(r, l);
    r = eliminate_irrelevant(deriver, r, cfg, stats);
  }
  const BigInt alpha = *r.constraint.coefficient(propagated);
  return deriver.divide(r, alpha);
}

Derived resolve_div(Deriver& deriver, const Derived& conflict, const Derived& reason, Var pivot) {
  return deriver.saturate(deriver.cancel(conflict, reason, pivot));
}

}  // namespace pbrel
