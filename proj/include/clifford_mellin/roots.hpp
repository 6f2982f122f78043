#pragma once

// Square roots of -1 in Cl(p,q), p+q=2.
//
// Every root has the form f = b1 e1 + b2 e2 + beta e12 (zero scalar part) with
//   beta^2 = b1^2 eps2 + b2^2 eps1 + eps1 eps2,
// which is a sphere in Cl(0,2), a two-sheet hyperboloid in Cl(2,0) and a
// one-sheet quadric in Cl(1,1).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/errors.hpp"
#include "clifford_mellin/random.hpp"

namespace clifford_mellin {

inline constexpr double kRootTolerance = 1e-12;

/// Sampling box for the unbounded manifolds: |b1|, |b2| <= 10.
inline constexpr double kRootParameterBound = 10.0;

struct RootParameters {
  double b1 = 0.0;
  double b2 = 0.0;
  double beta = 0.0;
};

enum class Branch : int { plus = 1, minus = -1 };

class RootOfMinusOne {
 public:
  const Multivector& value() const { return value_; }
  Signature signature() const { return value_.signature(); }
  RootParameters parameters() const {
    return {value_[kE1], value_[kE2], value_[kE12]};
  }

  friend RootOfMinusOne validate_root(const Multivector& a, double tol);

 private:
  explicit RootOfMinusOne(const Multivector& v) : value_(v) {}
  Multivector value_;
};

/// beta^2 - (b1^2 eps2 + b2^2 eps1 + eps1 eps2); zero on the manifold.
inline double manifold_residual(Signature sig, const RootParameters& r) {
  const double e1 = sig.epsilon(1);
  const double e2 = sig.epsilon(2);
  return r.beta * r.beta - (r.b1 * r.b1 * e2 + r.b2 * r.b2 * e1 + e1 * e2);
}

/// Accepts a iff a^2 = -1 within tol (scaled by max(1, |a|^2) to absorb the
/// rounding of large roots) and the scalar part is zero.
inline RootOfMinusOne validate_root(const Multivector& a,
                                    double tol = kRootTolerance) {
  Multivector sq = a * a;
  sq[kScalar] += 1.0;
  const double residual = modulus(sq);
  const double scale = std::max(1.0, modulus_squared(a));
  if (max_abs_diff(sq, Multivector(a.signature())) > tol * scale) {
    throw NotARootError("not a square root of -1 in " +
                            to_string(a.signature()) + ": |a^2 + 1| = " +
                            std::to_string(residual),
                        residual);
  }
  if (std::abs(a[kScalar]) > tol) {
    throw NotARootError("square root of -1 must have zero scalar part",
                        residual);
  }
  Multivector v = a;
  v[kScalar] = 0.0;
  for (std::size_t c = 1; c < 4; ++c) v[c] += 0.0;  // no negative zeros
  return RootOfMinusOne(v);
}

/// Point of the manifold chart over (b1, b2). A slightly negative beta^2 from
/// rounding (>= -tol) is clamped to the boundary beta = 0.
inline RootOfMinusOne sample_root(Signature sig, double b1, double b2,
                                  Branch branch) {
  const double e1 = sig.epsilon(1);
  const double e2 = sig.epsilon(2);
  const double beta2 = b1 * b1 * e2 + b2 * b2 * e1 + e1 * e2;
  if (beta2 < -kRootTolerance) {
    throw OffManifoldError("(b1, b2) = (" + std::to_string(b1) + ", " +
                           std::to_string(b2) + ") gives beta^2 = " +
                           std::to_string(beta2) + " < 0 in " + to_string(sig));
  }
  const double beta =
      static_cast<int>(branch) * std::sqrt(std::max(0.0, beta2));
  return validate_root(Multivector(sig, 0.0, b1, b2, beta));
}

/// n roots with (b1, b2) drawn from the admissible region; branches alternate
/// +, -, +, ... so the corpus covers both sheets deterministically.
inline std::vector<RootOfMinusOne> random_roots(Signature sig, std::size_t n,
                                                std::uint64_t seed) {
  if (n < 1) throw DomainError("random_roots needs n >= 1");
  Rng rng(seed);
  std::vector<RootOfMinusOne> out;
  out.reserve(n);
  const double bound = kRootParameterBound;
  for (std::size_t i = 0; i < n; ++i) {
    const Branch branch = (i % 2 == 0) ? Branch::plus : Branch::minus;
    double b1 = 0.0;
    double b2 = 0.0;
    if (sig == Signature::cl02()) {
      const double rho = std::sqrt(rng.uniform());
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      b1 = rho * std::cos(phi);
      b2 = rho * std::sin(phi);
    } else if (sig == Signature::cl20()) {
      b1 = rng.uniform(-bound, bound);
      b2 = rng.uniform(-bound, bound);
    } else {
      // |b2| >= sqrt(1 + b1^2): draw b2 first, then b1 inside the bound.
      const double mag = rng.uniform(1.0, bound);
      b2 = rng.uniform() < 0.5 ? -mag : mag;
      const double limit = std::sqrt(std::max(0.0, b2 * b2 - 1.0));
      b1 = rng.uniform(-limit, limit);
    }
    out.push_back(sample_root(sig, b1, b2, branch));
  }
  return out;
}

struct ManifoldPoint {
  double b1;
  double b2;
  double beta;
  int branch;
};

/// resolution x resolution chart nodes; the beta branch alternates in a
/// checkerboard so both sheets appear at every resolution (2 -> 4 points).
/// Cl(0,2) and Cl(2,0) use a polar chart (radius (i+1)/res of the sampling
/// radius, angle 2 pi j / res); Cl(1,1) uses (b1, tau) with
/// b2 = sign(tau) sqrt(1 + b1^2 + tau^2), so beta^2 = tau^2.
inline std::vector<ManifoldPoint> export_manifold(Signature sig,
                                                  std::size_t resolution) {
  if (resolution < 2) throw DomainError("manifold resolution must be >= 2");
  std::vector<ManifoldPoint> points;
  points.reserve(resolution * resolution);
  const double res = static_cast<double>(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      double b1 = 0.0;
      double b2 = 0.0;
      if (sig == Signature::cl11()) {
        const double half = 5.0;
        b1 = -half + 2.0 * half * static_cast<double>(i) / (res - 1.0);
        const double tau = -half + 2.0 * half * static_cast<double>(j) / (res - 1.0);
        b2 = (tau < 0.0 ? -1.0 : 1.0) * std::sqrt(1.0 + b1 * b1 + tau * tau);
      } else {
        const double rmax = sig == Signature::cl02() ? 1.0 : kRootParameterBound;
        const double rho = rmax * static_cast<double>(i + 1) / res;
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / res;
        b1 = rho * std::cos(phi);
        b2 = rho * std::sin(phi);
      }
      const Branch branch = (i + j) % 2 == 0 ? Branch::plus : Branch::minus;
      const RootParameters r = sample_root(sig, b1, b2, branch).parameters();
      points.push_back({r.b1, r.b2, r.beta, static_cast<int>(branch)});
    }
  }
  return points;
}

inline void write_manifold_csv(std::ostream& out,
                               const std::vector<ManifoldPoint>& points) {
  out << "b1,b2,beta,branch\n";
  char buf[128];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", p.b1, p.b2,
                  p.beta, p.branch);
    out << buf;
  }
}

/// Two roots of -1 from the same algebra.
class RootPair {
 public:
  RootPair(RootOfMinusOne f, RootOfMinusOne g) : f_(f), g_(g) {
    if (!(f.signature() == g.signature())) {
      throw DomainError("root pair mixes " + to_string(f.signature()) +
                        " and " + to_string(g.signature()));
    }
    degenerate_ = approx_equal(f.value(), g.value(), kRootTolerance) ||
                  approx_equal(f.value(), -g.value(), kRootTolerance);
    blade_like_ = is_blade_like(f.value()) && is_blade_like(g.value());
  }

  static RootPair from(const Multivector& f, const Multivector& g) {
    return RootPair(validate_root(f), validate_root(g));
  }

  /// f = e1, g = e2 in Cl(0,2): the quaternion kernel r^{-iv} ... e^{-jk theta}.
  static RootPair quaternion_default() {
    const Signature sig = Signature::cl02();
    return from(Multivector::basis(sig, kE1), Multivector::basis(sig, kE2));
  }

  const Multivector& f() const { return f_.value(); }
  const Multivector& g() const { return g_.value(); }
  const RootOfMinusOne& f_root() const { return f_; }
  const RootOfMinusOne& g_root() const { return g_; }
  Signature signature() const { return f_.signature(); }

  /// g = +f or g = -f.
  bool degenerate() const { return degenerate_; }
  /// principal_reverse(f) = -f and principal_reverse(g) = -g.
  bool blade_like() const { return blade_like_; }

  bool same_as(const RootPair& o) const {
    return signature() == o.signature() && f() == o.f() && g() == o.g();
  }

  std::string describe() const {
    return "f=" + format_multivector(f()) + ";g=" + format_multivector(g());
  }

 private:
  static bool is_blade_like(const Multivector& r) {
    return approx_equal(principal_reverse(r), -r,
                        kRootTolerance * std::max(1.0, modulus(r)));
  }

  RootOfMinusOne f_;
  RootOfMinusOne g_;
  bool degenerate_ = false;
  bool blade_like_ = false;
};

}  // namespace clifford_mellin
