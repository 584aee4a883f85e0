#pragma once

// Spectral-parameter elements and exact checks of the Yang-Baxter and
// reflection equations inside finite-dimensional algebras.

#include <functional>
#include <string>
#include <vector>

#include "bcox/algebra.hpp"

namespace bcox {

/// Element-valued function of a spectral parameter.
using SpectralBuilder = std::function<Element(const RationalFn& t)>;

/// -delta t (t + q lambda^-1) + (t - 1)(t + q lambda^-1) X_i + delta t (t - 1) e_i.
inline Element baxterized_R(const BasisTable& alg, int i, const RationalFn& t) {
  const Presentation& p = alg.presentation();
  const std::string xi = "X" + std::to_string(i), ei = "e" + std::to_string(i);
  if (p.generator_index(xi) < 0 || p.generator_index(ei) < 0)
    throw UsageError("baxterized_R: " + p.name + " lacks " + xi + " or " + ei);
  const RationalFn& q = p.parameter("q");
  const RationalFn& lambda = p.parameter("lambda");
  const RationalFn& delta = p.parameter("delta");
  const RationalFn one(alg.registry(), 1);
  const RationalFn shift = t + q / lambda;
  return -(delta * t * shift) * alg.unit() + ((t - one) * shift) * alg.generator(xi) + (delta * t * (t - one)) * alg.generator(ei);
}

/// (t^2 q1 (1 - t^2)^-1 + Y) f1.  DomainError when t^2 = 1.
inline Element boundary_K(const BasisTable& alg, const RationalFn& t, const RationalFn& f1) {
  const Presentation& p = alg.presentation();
  if (p.generator_index("Y") < 0) throw UsageError("boundary_K: " + p.name + " has no Y");
  const RationalFn one(alg.registry(), 1);
  const RationalFn t2 = t * t;
  if ((one - t2).is_zero()) throw DomainError("boundary_K: pole at t^2 = 1");
  return f1 * ((t2 * p.parameter("q1") / (one - t2)) * alg.unit() + alg.generator("Y"));
}

/// Outcome of comparing two sides of an identity after clearing the
/// common denominator of all coefficients.
struct IdentityCheck {
  bool holds = false;
  int basis_index = -1;     // first differing coefficient, when !holds
  std::string basis_word;
  std::string lhs, rhs;     // cleared coefficients at that index
};

inline IdentityCheck compare_cleared(const Element& lhs, const Element& rhs) {
  const BasisTable& t = *lhs.table();
  std::vector<RationalFn> all(lhs.coefficients());
  all.insert(all.end(), rhs.coefficients().begin(), rhs.coefficients().end());
  const RationalFn den = RationalFn(common_denominator(all, t.registry()));
  IdentityCheck out;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const RationalFn a = lhs[i] * den, b = rhs[i] * den;
    if (!a.is_polynomial() || !b.is_polynomial()) throw DomainError("compare_cleared: denominator not cleared");
    if (!(a.numerator() == b.numerator())) {
      out.basis_index = static_cast<int>(i);
      out.basis_word = t.presentation().render(t.basis_word(i));
      out.lhs = a.to_string();
      out.rhs = b.to_string();
      return out;
    }
  }
  out.holds = true;
  return out;
}

/// R_1(t1) R_2(t1 t2) R_1(t2) = R_2(t2) R_1(t1 t2) R_2(t1), with R_i given
/// by `r(i, t)`.
inline IdentityCheck check_ybe(const BasisTable& alg, const RationalFn& t1, const RationalFn& t2,
                               const std::function<Element(int, const RationalFn&)>& r) {
  if (alg.presentation().strands < 3) throw UsageError("check_ybe: at least 3 strands required");
  const RationalFn t12 = t1 * t2;
  const Element lhs = multiply(alg, multiply(alg, r(1, t1), r(2, t12)), r(1, t2));
  const Element rhs = multiply(alg, multiply(alg, r(2, t2), r(1, t12)), r(2, t1));
  return compare_cleared(lhs, rhs);
}

inline IdentityCheck check_ybe(const BasisTable& alg, const RationalFn& t1, const RationalFn& t2) {
  return check_ybe(alg, t1, t2, [&](int i, const RationalFn& t) { return baxterized_R(alg, i, t); });
}

/// R(t1/t2) K(t1) R(t1 t2) K(t2) = K(t2) R(t1 t2) K(t1) R(t1/t2) with
/// R = R_1 and K acting through Y on the first strand.
inline IdentityCheck check_re(const BasisTable& alg, const RationalFn& t1, const RationalFn& t2, const SpectralBuilder& k,
                              const SpectralBuilder& r) {
  const RationalFn ratio = t1 / t2, prod = t1 * t2;
  const Element lhs = multiply(alg, multiply(alg, multiply(alg, r(ratio), k(t1)), r(prod)), k(t2));
  const Element rhs = multiply(alg, multiply(alg, multiply(alg, k(t2), r(prod)), k(t1)), r(ratio));
  return compare_cleared(lhs, rhs);
}

inline IdentityCheck check_re(const BasisTable& alg, const RationalFn& t1, const RationalFn& t2, const SpectralBuilder& k) {
  return check_re(alg, t1, t2, k, [&](const RationalFn& t) { return baxterized_R(alg, 1, t); });
}

}  // namespace bcox
