#include "pbrel/generators.hpp"

#include <string>

#include "pbrel/errors.hpp"

namespace pbrel {

std::vector<PBConstraint> generate_vertexcover_complete(int n) {
  if (n < 3) throw InvalidArgument("vertex cover instances need n >= 3, got " + std::to_string(n));
  std::vector<PBConstraint> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 + 1);
  for (Var i = 1; i <= n; ++i) {
    for (Var j = i + 1; j <= n; ++j) {
      out.push_back(PBConstraint::from_terms({Term{i, true, 1}, Term{j, true, 1}}, 1));
    }
  }
  const int k = (n + 1) / 2 - 1;
  std::vector<Term> bound;
  for (Var i = 1; i <= n; ++i) bound.push_back(Term{i, false, 1});
  out.push_back(PBConstraint::from_terms(std::move(bound), n - k));
  return out;
}

}  // namespace pbrel
