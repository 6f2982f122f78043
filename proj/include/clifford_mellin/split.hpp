#pragma once

// The +- split x_{+-} = (x +- f x g) / 2 with respect to a pair of roots of -1,
// and the commuting/anticommuting split with respect to a single root.

#include <algorithm>
#include <cmath>

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/roots.hpp"

namespace clifford_mellin {

struct SplitPair {
  Multivector plus;
  Multivector minus;
  RootPair pair;
};

/// f x g. An involution for every pair since f^2 = g^2 = -1.
inline Multivector sandwich(const Multivector& x, const RootPair& pair) {
  return pair.f() * x * pair.g();
}

inline SplitPair split(const Multivector& x, const RootPair& pair) {
  x.require_same(pair.f(), "split");
  const Multivector fxg = sandwich(x, pair);
  return {0.5 * (x + fxg), 0.5 * (x - fxg), pair};
}

inline Multivector recombine(const SplitPair& sp) { return sp.plus + sp.minus; }

struct FSplit {
  Multivector commuting;
  Multivector anticommuting;
};

/// A_{+-f} = (A +- f^{-1} A f) / 2 with f^{-1} = -f.
inline FSplit f_split(const Multivector& x, const RootOfMinusOne& f) {
  x.require_same(f.value(), "f_split");
  const Multivector conj = -f.value() * x * f.value();
  return {0.5 * (x + conj), 0.5 * (x - conj)};
}

struct MixedScalars {
  double plus_minus;  // Sc(x_+ ~y_-)
  double minus_plus;  // Sc(x_- ~y_+)
};

/// Both mixed scalar parts; they vanish when f and g are blade-like, which is
/// the only case accepted here.
inline MixedScalars mixed_scalar(const Multivector& x, const Multivector& y,
                                 const RootPair& pair) {
  if (!pair.blade_like()) {
    throw ContractError(
        "mixed_scalar requires a blade-like pair (~f = -f and ~g = -g)");
  }
  const SplitPair sx = split(x, pair);
  const SplitPair sy = split(y, pair);
  return {scalar_product(sx.plus, principal_reverse(sy.minus)),
          scalar_product(sx.minus, principal_reverse(sy.plus))};
}

/// Same quantities without the precondition, for reporting outside the
/// hypothesis.
inline MixedScalars mixed_scalar_unchecked(const Multivector& x,
                                           const Multivector& y,
                                           const RootPair& pair) {
  const SplitPair sx = split(x, pair);
  const SplitPair sy = split(y, pair);
  return {scalar_product(sx.plus, principal_reverse(sy.minus)),
          scalar_product(sx.minus, principal_reverse(sy.plus))};
}

/// Largest componentwise discrepancy among the three forms of
///   e^{alpha f} x_{+-} e^{beta g} = x_{+-} e^{(beta -+ alpha) g}
///                                 = e^{(alpha -+ beta) f} x_{+-}
/// over both split parts.
inline double exp_swap_check(double alpha, double beta, const Multivector& x,
                             const RootPair& pair) {
  const SplitPair sp = split(x, pair);
  double worst = 0.0;
  for (int sign : {+1, -1}) {
    const Multivector& part = sign > 0 ? sp.plus : sp.minus;
    const Multivector lhs =
        exp_root(alpha, pair.f()) * part * exp_root(beta, pair.g());
    const Multivector right_form = part * exp_root(beta - sign * alpha, pair.g());
    const Multivector left_form = exp_root(alpha - sign * beta, pair.f()) * part;
    worst = std::max({worst, max_abs_diff(lhs, right_form),
                      max_abs_diff(lhs, left_form),
                      max_abs_diff(right_form, left_form)});
  }
  return worst;
}

}  // namespace clifford_mellin
