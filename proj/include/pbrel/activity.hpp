#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pbrel/pb_core.hpp"

namespace pbrel {

/// Exponentially decaying variable activities. Instead of scaling every score
/// down, the bump increment grows by 1/decay after each conflict; scores are
/// rescaled together when they get large, which leaves their ratios intact.
class ActivityHeuristic {
 public:
  explicit ActivityHeuristic(Var num_vars = 0, double decay = 0.95);

  /// Makes room for variables up to `num_vars` (new ones start at zero).
  void grow(Var num_vars);

  void bump(Var v);
  void bump(std::span<const Var> vars);
  void decay();

  double activity(Var v) const { return activity_[static_cast<std::size_t>(v)]; }
  double increment() const { return increment_; }

  /// Unassigned variable with the highest activity; ties go to the lowest index.
  std::optional<Var> pick(const Assignment& a) const;

 private:
  void rescale();

  std::vector<double> activity_;
  double decay_;
  double increment_ = 1.0;
};

}  // namespace pbrel
