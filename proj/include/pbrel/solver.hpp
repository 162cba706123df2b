#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbrel/activity.hpp"
#include "pbrel/analysis.hpp"
#include "pbrel/pb_core.hpp"
#include "pbrel/trace.hpp"

namespace pbrel {

struct SolverLimits {
  std::optional<std::uint64_t> max_conflicts;
  std::optional<double> max_seconds;
};

struct SolverOptions {
  ConflictAnalysisConfig analysis;
  SolverLimits limits;
  bool record_trace = false;
  double activity_decay = 0.95;
  /// Conflicts per Luby unit; 0 disables restarts.
  std::uint64_t luby_unit = 0;
};

enum class SolveStatus { Sat, Unsat, Unknown };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  /// Total assignment, verified against every formula constraint (Sat only).
  Assignment model;
  SolverStats stats;
  std::optional<DerivationTrace> trace;
};

/// Conflict-driven PB solver with counter-based (slack) propagation.
///
/// Every constraint keeps its slack under the current trail up to date on
/// each assignment and unassignment. Conflict analysis walks the trail
/// backwards, resolving the working constraint with the reason of each
/// falsified propagated literal until it is assertive at the second-highest
/// decision level among its falsified literals.
class Solver {
 public:
  using ConstraintId = std::size_t;

  explicit Solver(SolverOptions options = {}, Var num_vars = 0);

  /// Adds a formula constraint at decision level 0 and returns its id.
  /// Constraints already propagating are checked right away.
  ConstraintId add_constraint(const PBConstraint& c);

  /// Opens a new decision level and makes `l` true.
  void decide(Literal l);

  /// Unit propagation to fixpoint; the id of a conflicting constraint if one
  /// is found.
  std::optional<ConstraintId> propagate();

  struct Analysis {
    Derived learned;
    int backjump_level = 0;
    bool unsat = false;
  };

  /// Derives a constraint from the conflict. Pops trail literals as it goes;
  /// the caller backjumps next (see learn()).
  Analysis analyze(ConstraintId conflict);

  /// Backjumps to the analysis level and adds the learned constraint, which
  /// then propagates.
  ConstraintId learn(const Analysis& analysis);

  void backjump(int level);

  SolveResult solve();

  Var num_vars() const { return num_vars_; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  const Assignment& assignment() const { return assignment_; }
  const std::vector<Literal>& trail() const { return trail_; }
  int level(Var v) const { return level_[static_cast<std::size_t>(v)]; }
  /// Reason constraint of a propagated variable; empty for decisions.
  std::optional<ConstraintId> reason(Var v) const;
  const PBConstraint& constraint(ConstraintId id) const { return constraints_[id].constraint; }
  std::size_t num_constraints() const { return constraints_.size(); }
  const BigInt& slack_of(ConstraintId id) const { return constraints_[id].slack; }
  const SolverStats& stats() const { return stats_; }
  const ActivityHeuristic& activity() const { return activity_; }
  const DerivationTrace* trace() const { return trace_ ? &*trace_ : nullptr; }
  bool inconsistent() const { return inconsistent_; }

 private:
  struct Stored {
    PBConstraint constraint;
    BigInt slack;
    BigInt max_coef;
    StepId step = 0;
    bool learned = false;
  };
  struct Occurrence {
    ConstraintId id;
    std::size_t term;
  };

  static std::size_t code(Literal l) { return 2 * static_cast<std::size_t>(l.var) + (l.positive ? 1 : 0); }

  void ensure_var(Var v);
  ConstraintId store(const PBConstraint& c, bool learned, StepId step);
  void assign(Literal l, std::optional<ConstraintId> reason);
  void pop_trail();
  bool check(ConstraintId id);
  Derived derived_of(ConstraintId id);
  void bump(const PBConstraint& c, std::vector<char>& seen, std::vector<Var>& vars) const;
  bool model_verified() const;

  SolverOptions options_;
  Var num_vars_ = 0;
  std::vector<Stored> constraints_;
  std::size_t num_formula_ = 0;
  std::vector<std::vector<Occurrence>> occurrences_;
  Assignment assignment_;
  std::vector<int> level_;
  std::vector<std::int64_t> reason_;  // -1 for decisions and unassigned
  std::vector<Literal> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  ActivityHeuristic activity_;
  SolverStats stats_;
  std::optional<DerivationTrace> trace_;
  bool inconsistent_ = false;
};

SolveResult solve(std::span<const PBConstraint> formula, const SolverOptions& options = {}, Var num_vars = 0);

/// Luby sequence 1 1 2 1 1 2 4 ... (index from 0).
std::uint64_t luby(std::uint64_t i);

}  // namespace pbrel
