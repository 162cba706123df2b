#include "pbrel/cutting_planes.hpp"

#include "pbrel/errors.hpp"

namespace pbrel {

PBConstraint saturate(const PBConstraint& c) {
  if (c.is_saturated()) return c;
  std::vector<Term> terms = c.terms();
  for (Term& t : terms) {
    if (t.coef > c.degree()) t.coef = c.degree();
  }
  return PBConstraint::from_terms(std::move(terms), c.degree());
}

PBConstraint weaken(const PBConstraint& c, Literal l) {
  auto coef = c.coefficient(l);
  if (!coef) throw LiteralNotPresent("cannot weaken on " + to_string(l) + ": not in " + to_string(c));
  std::vector<Term> terms;
  terms.reserve(c.size() - 1);
  for (const Term& t : c.terms()) {
    if (t.var != l.var) terms.push_back(t);
  }
  return PBConstraint::from_terms(std::move(terms), c.degree() - *coef);
}

PBConstraint divide(const PBConstraint& c, const BigInt& divisor) {
  if (divisor < 1) throw InvalidArgument("divisor must be >= 1, got " + divisor.str());
  if (divisor == 1) return c;
  auto ceil_div = [&](const BigInt& x) { return BigInt((x + divisor - 1) / divisor); };
  std::vector<Term> terms = c.terms();
  for (Term& t : terms) t.coef = ceil_div(t.coef);
  return PBConstraint::from_terms(std::move(terms), ceil_div(c.degree()));
}

PBConstraint multiply(const PBConstraint& c, const BigInt& multiplier) {
  if (multiplier < 1) throw InvalidArgument("multiplier must be >= 1, got " + multiplier.str());
  if (multiplier == 1) return c;
  std::vector<Term> terms = c.terms();
  for (Term& t : terms) t.coef *= multiplier;
  return PBConstraint::from_terms(std::move(terms), c.degree() * multiplier);
}

PBConstraint add(const PBConstraint& a, const PBConstraint& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::vector<Term> out;
  out.reserve(ta.size() + tb.size());
  BigInt degree = a.degree() + b.degree();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].var < tb[j].var)) {
      out.push_back(ta[i++]);
    } else if (i == ta.size() || tb[j].var < ta[i].var) {
      out.push_back(tb[j++]);
    } else {
      const Term& x = ta[i++];
      const Term& y = tb[j++];
      if (x.positive == y.positive) {
        out.push_back(Term{x.var, x.positive, x.coef + y.coef});
      } else {
        const Term& big = x.coef >= y.coef ? x : y;
        const Term& small = x.coef >= y.coef ? y : x;
        degree -= small.coef;
        if (big.coef != small.coef) out.push_back(Term{big.var, big.positive, big.coef - small.coef});
      }
    }
  }
  return PBConstraint::from_terms(std::move(out), std::move(degree));
}

CancelMultipliers cancel_multipliers(const PBConstraint& a, const PBConstraint& b, Var pivot) {
  const Term* ta = a.find(pivot);
  const Term* tb = b.find(pivot);
  if (ta == nullptr || tb == nullptr || ta->positive == tb->positive) {
    throw PivotNotOpposed("variable x" + std::to_string(pivot) + " does not occur with opposite signs in " +
                          to_string(a) + " and " + to_string(b));
  }
  BigInt l = boost::multiprecision::lcm(ta->coef, tb->coef);
  return CancelMultipliers{l / ta->coef, l / tb->coef, l};
}

PBConstraint cancel(const PBConstraint& a, const PBConstraint& b, Var pivot) {
  CancelMultipliers m = cancel_multipliers(a, b, pivot);
  return add(multiply(a, m.first), multiply(b, m.second));
}

}  // namespace pbrel
