#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbrel/pb_core.hpp"
#include "pbrel/relevance.hpp"

namespace pbrel {

using StepId = std::uint64_t;

enum class Rule { Input, Saturate, Weaken, Divide, Multiply, Add, Cancel, Eliminate };

const char* to_string(Rule r);
Rule parse_rule(const std::string& name);

/// One rule application. Operands are ids of earlier steps; `Input` steps
/// carry the formula constraint they introduce and its index in `source`.
struct TraceStep {
  StepId id = 0;
  Rule rule = Rule::Input;
  std::vector<StepId> operands;
  std::optional<Var> pivot;                   // cancel
  std::optional<BigInt> divisor;              // divide
  std::optional<BigInt> multiplier;           // multiply
  std::vector<Literal> literals;              // weaken (one), eliminate (removed set)
  std::optional<RemovalStrategy> strategy;    // eliminate
  std::optional<std::uint64_t> source;        // input
  PBConstraint result;

  bool operator==(const TraceStep&) const = default;
};

struct DerivationTrace {
  std::vector<TraceStep> steps;

  bool empty() const { return steps.empty(); }
  bool operator==(const DerivationTrace&) const = default;
};

/// Rules whose output can contain literals the operands did not make
/// irrelevant; these are the constraints handed to the detector when a trace
/// is analyzed.
bool is_dumped_rule(Rule r);

/// Recomputes the result of `step` from already-replayed operands.
PBConstraint apply_step(const TraceStep& step, const std::vector<const PBConstraint*>& operands);

struct ReplayReport {
  std::size_t steps = 0;
  std::size_t mismatches = 0;
  std::optional<StepId> first_mismatch;
  std::string message;

  bool ok() const { return mismatches == 0 && message.empty(); }
};

/// Replays every step through the cutting-planes operations and compares the
/// recomputed constraint with the recorded one.
ReplayReport replay(const DerivationTrace& trace);

}  // namespace pbrel
