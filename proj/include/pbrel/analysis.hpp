#pragma once

#include <cstdint>

#include "pbrel/pb_core.hpp"
#include "pbrel/relevance.hpp"
#include "pbrel/trace.hpp"

namespace pbrel {

enum class AnalysisMode { GeneralizedResolution, DivisionBased };
enum class Elimination { Off, Weaken, Simple, SlackBased };

const char* to_string(AnalysisMode m);
const char* to_string(Elimination e);
AnalysisMode parse_analysis_mode(const std::string& name);
/// "none", "weaken", "simple" or "slack".
Elimination parse_elimination(const std::string& name);
RemovalStrategy removal_strategy(Elimination e);

struct ConflictAnalysisConfig {
  AnalysisMode mode = AnalysisMode::GeneralizedResolution;
  Elimination elimination = Elimination::Off;
  DetectorConfig detector;
};

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t cancellations = 0;
  std::uint64_t irrelevant_literals_detected = 0;
  std::uint64_t irrelevant_literals_removed = 0;
  std::uint64_t learned = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

/// A constraint together with the trace step that derived it (0 when the
/// derivation is not being recorded).
struct Derived {
  PBConstraint constraint;
  StepId step = 0;
};

/// Applies cutting-planes rules and, when given a trace, records each
/// application. Counts cancellations into `stats` when given.
class Deriver {
 public:
  explicit Deriver(DerivationTrace* trace = nullptr, SolverStats* stats = nullptr) : trace_(trace), stats_(stats) {}

  bool recording() const { return trace_ != nullptr; }

  Derived input(const PBConstraint& c, std::uint64_t source);
  /// No step is recorded when the constraint is already saturated.
  Derived saturate(const Derived& d);
  Derived weaken(const Derived& d, Literal l);
  /// No step is recorded for a divisor of one.
  Derived divide(const Derived& d, const BigInt& divisor);
  Derived multiply(const Derived& d, const BigInt& multiplier);
  Derived add(const Derived& a, const Derived& b);
  Derived cancel(const Derived& a, const Derived& b, Var pivot);
  Derived eliminate(const Derived& d, std::span<const Literal> irrelevant, RemovalStrategy strategy);

 private:
  Derived record(TraceStep step);

  DerivationTrace* trace_;
  SolverStats* stats_;
};

/// Runs the detector on `d` and removes what it proves irrelevant with the
/// configured strategy. Identity when elimination is off or nothing is found.
Derived eliminate_irrelevant(Deriver& deriver, const Derived& d, const ConflictAnalysisConfig& cfg,
                             SolverStats& stats);

/// Whether cancelling `conflict` and `reason` on `pivot` keeps a negative
/// slack under `a`: mult_conflict * slack(conflict) + mult_reason * slack(reason) < 0.
bool cancellation_stays_conflicting(const PBConstraint& conflict, const PBConstraint& reason, Var pivot,
                                    const Assignment& a);

/// Weakens non-falsified literals of `reason` other than the pivot, smallest
/// coefficient first, saturating after each, until cancellation with
/// `conflict` stays conflicting. Elimination runs after every weakening.
Derived reduce_reason_gr(Deriver& deriver, const Derived& conflict, const Derived& reason, Literal propagated,
                         const Assignment& a, const ConflictAnalysisConfig& cfg, SolverStats& stats);

/// Cancel, saturate, then eliminate on the resolvent.
Derived resolve_gr(Deriver& deriver, const Derived& conflict, const Derived& reason, Var pivot,
                   const ConflictAnalysisConfig& cfg, SolverStats& stats);

/// Weakens every non-falsified literal whose coefficient the pivot
/// coefficient does not divide, eliminates, then divides by the pivot
/// coefficient so that it becomes one.
Derived reduce_reason_div(Deriver& deriver, const Derived& reason, Literal propagated, const Assignment& a,
                          const ConflictAnalysisConfig& cfg, SolverStats& stats);

/// Cancel and saturate.
Derived resolve_div(Deriver& deriver, const Derived& conflict, const Derived& reason, Var pivot);

}  // namespace pbrel
