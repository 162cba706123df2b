#pragma once

#include "pbrel/pb_core.hpp"

// Cutting-planes inference rules over normalized constraints. None of the
// rules saturates its output implicitly; saturation is its own step.
namespace pbrel {

/// Caps every coefficient at the degree. Equivalent over the Booleans.
PBConstraint saturate(const PBConstraint& c);

/// Drops the term of `l` and lowers the degree by its coefficient (clamped
/// at zero). Throws LiteralNotPresent unless `l` occurs with that polarity.
PBConstraint weaken(const PBConstraint& c, Literal l);

/// Ceiling-divides every coefficient and the degree. Throws InvalidArgument
/// for divisors below one.
PBConstraint divide(const PBConstraint& c, const BigInt& divisor);

PBConstraint multiply(const PBConstraint& c, const BigInt& multiplier);

/// Sum of both constraints; opposite literals on the same variable are merged
/// onto the larger side and the degree is reduced by the smaller coefficient.
PBConstraint add(const PBConstraint& a, const PBConstraint& b);

/// Multipliers lcm/alpha_a and lcm/alpha_b that equalize the pivot coefficients.
struct CancelMultipliers {
  BigInt first;
  BigInt second;
  BigInt lcm;
};

/// Throws PivotNotOpposed unless `pivot` occurs in `a` and `b` with opposite
/// polarities (either way round).
CancelMultipliers cancel_multipliers(const PBConstraint& a, const PBConstraint& b, Var pivot);

/// lcm-scaled addition of `a` and `b` eliminating variable `pivot`.
PBConstraint cancel(const PBConstraint& a, const PBConstraint& b, Var pivot);
inline PBConstraint cancel(const PBConstraint& a, const PBConstraint& b, Literal pivot) {
  return cancel(a, b, pivot.var);
}

}  // namespace pbrel
