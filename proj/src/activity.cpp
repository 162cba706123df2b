#include "pbrel/activity.hpp"

#include "pbrel/errors.hpp"

namespace pbrel {

namespace {
constexpr double kRescaleLimit = 1e100;
}

ActivityHeuristic::ActivityHeuristic(Var num_vars, double decay)
    : activity_(static_cast<std::size_t>(num_vars) + 1, 0.0), decay_(decay) {
  if (!(decay > 0.0 && decay <= 1.0)) throw InvalidArgument("activity decay must be in (0, 1]");
}

void ActivityHeuristic::grow(Var num_vars) {
  auto size = static_cast<std::size_t>(num_vars) + 1;
  if (size > activity_.size()) activity_.resize(size, 0.0);
}

void ActivityHeuristic::bump(Var v) {
  auto idx = static_cast<std::size_t>(v);
  if (idx >= activity_.size()) activity_.resize(idx + 1, 0.0);
  activity_[idx] += increment_;
  if (activity_[idx] > kRescaleLimit) rescale();
}

void ActivityHeuristic::bump(std::span<const Var> vars) {
  for (Var v : vars) bump(v);
}

void ActivityHeuristic::decay() {
  increment_ /= decay_;
  if (increment_ > kRescaleLimit) rescale();
}

void ActivityHeuristic::rescale() {
  for (double& a : activity_) a /= kRescaleLimit;
  increment_ /= kRescaleLimit;
}

std::optional<Var> ActivityHeuristic::pick(const Assignment& a) const {
  std::optional<Var> best;
  for (std::size_t v = 1; v < activity_.size(); ++v) {
    if (a.is_assigned(static_cast<Var>(v))) continue;
    if (!best || activity_[v] > activity_[static_cast<std::size_t>(*best)]) best = static_cast<Var>(v);
  }
  return best;
}

}  // namespace pbrel
