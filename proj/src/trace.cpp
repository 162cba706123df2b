#include "pbrel/trace.hpp"

#include <unordered_map>

#include "pbrel/cutting_planes.hpp"
#include "pbrel/errors.hpp"

namespace pbrel {

const char* to_string(Rule r) {
  switch (r) {
    case Rule::Input:
      return "input";
    case Rule::Saturate:
      return "saturate";
    case Rule::Weaken:
      return "weaken";
    case Rule::Divide:
      return "divide";
    case Rule::Multiply:
      return "multiply";
    case Rule::Add:
      return "add";
    case Rule::Cancel:
      return "cancel";
    case Rule::Eliminate:
      return "eliminate";
  }
  return "?";
}

Rule parse_rule(const std::string& name) {
  for (Rule r : {Rule::Input, Rule::Saturate, Rule::Weaken, Rule::Divide, Rule::Multiply, Rule::Add, Rule::Cancel,
                 Rule::Eliminate}) {
    if (name == to_string(r)) return r;
  }
  throw InvalidArgument("unknown rule '" + name + "'");
}

bool is_dumped_rule(Rule r) {
  return r == Rule::Weaken || r == Rule::Divide || r == Rule::Add || r == Rule::Cancel;
}

namespace {

void expect_operands(const TraceStep& step, std::size_t n, std::size_t got) {
  if (got != n) {
    throw InvalidArgument(std::string("step ") + std::to_string(step.id) + " (" + to_string(step.rule) + ") needs " +
                          std::to_string(n) + " operand(s), has " + std::to_string(got));
  }
}

template <typename T>
const T& require(const std::optional<T>& v, const TraceStep& step, const char* what) {
  if (!v) throw InvalidArgument("step " + std::to_string(step.id) + " lacks " + what);
  return *v;
}

}  // namespace

PBConstraint apply_step(const TraceStep& step, const std::vector<const PBConstraint*>& ops) {
  switch (step.rule) {
    case Rule::Input:
      expect_operands(step, 0, ops.size());
      return step.result;
    case Rule::Saturate:
      expect_operands(step, 1, ops.size());
      return saturate(*ops[0]);
    case Rule::Weaken:
      expect_operands(step, 1, ops.size());
      if (step.literals.size() != 1) throw InvalidArgument("weaken step needs exactly one literal");
      return weaken(*ops[0], step.literals.front());
    case Rule::Divide:
      expect_operands(step, 1, ops.size());
      return divide(*ops[0], require(step.divisor, step, "a divisor"));
    case Rule::Multiply:
      expect_operands(step, 1, ops.size());
      return multiply(*ops[0], require(step.multiplier, step, "a multiplier"));
    case Rule::Add:
      expect_operands(step, 2, ops.size());
      return add(*ops[0], *ops[1]);
    case Rule::Cancel:
      expect_operands(step, 2, ops.size());
      return cancel(*ops[0], *ops[1], require(step.pivot, step, "a pivot"));
    case Rule::Eliminate:
      expect_operands(step, 1, ops.size());
      return remove_irrelevant(*ops[0], step.literals, require(step.strategy, step, "a strategy"));
  }
  throw InvalidArgument("unknown rule");
}

ReplayReport replay(const DerivationTrace& trace) {
  ReplayReport report;
  std::unordered_map<StepId, PBConstraint> derived;
  for (const TraceStep& step : trace.steps) {
    ++report.steps;
    std::vector<const PBConstraint*> ops;
    for (StepId id : step.operands) {
      auto it = derived.find(id);
      if (it == derived.end()) {
        report.message = "step " + std::to_string(step.id) + " refers to unknown step " + std::to_string(id);
        return report;
      }
      ops.push_back(&it->second);
    }
    PBConstraint recomputed;
    try {
      recomputed = apply_step(step, ops);
    } catch (const Error& e) {
      report.message = "step " + std::to_string(step.id) + ": " + e.what();
      return report;
    }
    if (!(recomputed == step.result)) {
      ++report.mismatches;
      if (!report.first_mismatch) report.first_mismatch = step.id;
    }
    // Later steps build on the recorded constraint, as a checker would.
    derived.insert_or_assign(step.id, step.result);
  }
  return report;
}

}  // namespace pbrel
