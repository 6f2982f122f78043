#pragma once

// Batch property suite: every algebra, root, split and transform invariant
// evaluated on seeded random inputs, reported as deterministic JSON.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/cfmt.hpp"
#include "clifford_mellin/random.hpp"
#include "clifford_mellin/roots.hpp"
#include "clifford_mellin/signal.hpp"
#include "clifford_mellin/split.hpp"
#include "clifford_mellin/theorems.hpp"

namespace clifford_mellin {

inline Multivector random_multivector(Rng& rng, Signature sig) {
  return Multivector(sig, rng.normal(), rng.normal(), rng.normal(), rng.normal());
}

inline LogPolarSignal random_signal(const GridGeometry& geo, Signature sig,
                                    Rng& rng) {
  LogPolarSignal out(geo, sig);
  for (Multivector& m : out.samples()) m = random_multivector(rng, sig);
  return out;
}

/// Sum of random Fourier modes with |j| <= ns/6 and |k| <= ntheta/6 in every
/// blade channel, so the top third of both frequency axes is empty.
inline LogPolarSignal random_band_limited(const GridGeometry& geo,
                                          Signature sig, Rng& rng,
                                          std::size_t modes = 6) {
  struct Mode {
    long j, k;
    std::array<double, 4> cos_amp, sin_amp;
  };
  const long jmax = std::max<long>(1, static_cast<long>(geo.ns / 6));
  const long kmax = std::max<long>(1, static_cast<long>(geo.ntheta / 6));
  std::vector<Mode> list;
  for (std::size_t m = 0; m < modes; ++m) {
    Mode mode{static_cast<long>(rng.below(2 * jmax + 1)) - jmax,
              static_cast<long>(rng.below(2 * kmax + 1)) - kmax,
              {},
              {}};
    for (std::size_t c = 0; c < 4; ++c) {
      mode.cos_amp[c] = rng.normal();
      mode.sin_amp[c] = rng.normal();
    }
    list.push_back(mode);
  }
  return LogPolarSignal::from_function(geo, sig, [&](double s, double theta) {
    Multivector out(sig);
    for (const Mode& m : list) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(m.j) *
                               (s - geo.smin) / geo.span() +
                           static_cast<double>(m.k) * theta;
      for (std::size_t c = 0; c < 4; ++c) {
        out[c] += m.cos_amp[c] * std::cos(phase) + m.sin_amp[c] * std::sin(phase);
      }
    }
    return out;
  });
}

/// Multivector drawn from span{1, r}.
inline Multivector random_in_span(Rng& rng, const Multivector& r) {
  return Multivector::scalar(r.signature(), rng.normal()) + rng.normal() * r;
}

struct PropertyResult {
  std::string property;
  std::string algebra;
  std::string pair;  // "-" for pair-independent properties
  double residual = 0.0;
  double tolerance = 0.0;
  std::optional<bool> pass;  // empty when skipped or reported only
  std::string status;        // "pass", "fail", "skipped (...)", "reported (...)"
};

struct VerifyOptions {
  GridGeometry geometry;          // grid for the FFT-mediated identities
  std::uint64_t seed = 1;
  double tolerance = 1e-10;       // FFT-mediated identities
  double pointwise_tolerance = 1e-12;
  double derivative_tolerance = 1e-8;
  double power_tolerance = 1e-5;
  std::size_t trials = 4;         // random signals per transform property
  std::size_t samples = 1000;     // random multivectors per algebra property
  bool degenerate = false;        // replace g by -f in every pair
  std::optional<RootPair> pair;   // restrict the suite to one pair
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::vector<PropertyResult>& out) : out_(out) {}

  void check(std::string property, Signature sig, std::string pair,
             double residual, double tol) {
    const bool ok = std::isfinite(residual) && residual <= tol;
    out_.push_back({std::move(property), to_string(sig), std::move(pair),
                    residual, tol, ok, ok ? "pass" : "fail"});
  }
  void skip(std::string property, Signature sig, std::string pair,
            std::string why) {
    out_.push_back({std::move(property), to_string(sig), std::move(pair), 0.0,
                    0.0, std::nullopt, "skipped (" + why + ")"});
  }
  void report(std::string property, Signature sig, std::string pair,
              double residual, std::string why) {
    out_.push_back({std::move(property), to_string(sig), std::move(pair),
                    residual, 0.0, std::nullopt, "reported (" + why + ")"});
  }

 private:
  std::vector<PropertyResult>& out_;
};

inline double rel(double diff, double scale) {
  return scale > 0.0 ? diff / scale : diff;
}

inline void algebra_properties(Recorder& rec, Signature sig, Rng& rng,
                               const VerifyOptions& opt) {
  const double tol = opt.pointwise_tolerance;
  double worst = 0.0;
  for (std::size_t k = 1; k <= 2; ++k) {
    for (std::size_t l = 1; l <= 2; ++l) {
      const Multivector ek = Multivector::basis(sig, k);
      const Multivector el = Multivector::basis(sig, l);
      Multivector lhs = ek * el + el * ek;
      lhs[kScalar] -= (k == l) ? 2.0 * sig.epsilon(static_cast<int>(k)) : 0.0;
      worst = std::max(worst, max_abs_diff(lhs, Multivector(sig)));
    }
  }
  rec.check("algebra.generator_rules", sig, "-", worst, tol);

  worst = 0.0;
  for (std::size_t n = 0; n < opt.samples; ++n) {
    const Multivector a = random_multivector(rng, sig);
    const Multivector b = random_multivector(rng, sig);
    const Multivector c = random_multivector(rng, sig);
    worst = std::max(worst, rel(max_abs_diff((a * b) * c, a * (b * c)),
                                modulus(a) * modulus(b) * modulus(c)));
  }
  rec.check("algebra.associativity", sig, "-", worst, tol);

  worst = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const double got = scalar_product(
          principal_reverse(Multivector::basis(sig, a)), Multivector::basis(sig, b));
      worst = std::max(worst, std::abs(got - (a == b ? 1.0 : 0.0)));
    }
  }
  for (int l = 1; l <= 2; ++l) {
    for (int k = 1; k <= 2; ++k) {
      const Multivector upper = sig.epsilon(l) * Multivector::basis(sig, l);
      const double got = scalar_product(upper, Multivector::basis(sig, k));
      worst = std::max(worst, std::abs(got - (l == k ? 1.0 : 0.0)));
    }
  }
  rec.check("algebra.reciprocal_basis", sig, "-", worst, tol);

  worst = 0.0;
  double orth = 0.0;
  for (std::size_t n = 0; n < opt.samples; ++n) {
    const Multivector m = random_multivector(rng, sig);
    const Multivector o = random_multivector(rng, sig);
    const double sq = modulus_squared(m);
    worst = std::max(worst,
                     rel(std::abs(sq - scalar_product(m, principal_reverse(m))), sq));
    double euclid = 0.0;
    for (std::size_t c = 0; c < 4; ++c) euclid += m[c] * o[c];
    orth = std::max(orth, rel(std::abs(scalar_product(m, principal_reverse(o)) - euclid),
                              modulus(m) * modulus(o)));
  }
  rec.check("algebra.modulus_identity", sig, "-", worst, tol);
  rec.check("algebra.orthogonality_criterion", sig, "-", orth, tol);

  double square = 0.0;
  double manifold = 0.0;
  double inverse_gap = 0.0;
  for (const RootOfMinusOne& r : random_roots(sig, opt.samples, rng.next_u64())) {
    const Multivector& f = r.value();
    const double scale = std::max(1.0, modulus_squared(f));
    Multivector sq = f * f;
    sq[kScalar] += 1.0;
    square = std::max(square, rel(max_abs_diff(sq, Multivector(sig)), scale));
    manifold = std::max(manifold,
                        rel(std::abs(manifold_residual(sig, r.parameters())), scale));
    inverse_gap = std::max(inverse_gap,
                           rel(max_abs_diff(inverse(f), -f), std::max(1.0, modulus(f))));
  }
  rec.check("roots.square_is_minus_one", sig, "-", square, tol);
  rec.check("roots.manifold_constraint", sig, "-", manifold, tol);
  rec.check("roots.inverse_is_negation", sig, "-", inverse_gap, tol);
}

inline void split_properties(Recorder& rec, const RootPair& pair, Rng& rng,
                             const VerifyOptions& opt) {
  const Signature sig = pair.signature();
  const std::string name = pair.describe();
  const double tol = opt.pointwise_tolerance;
  const double fg = modulus(pair.f()) * modulus(pair.g());
  const Multivector one = Multivector::scalar(sig, 1.0);
  const Multivector prod = pair.f() * pair.g();
  double recon = 0.0, eigen = 0.0, invol = 0.0, lin = 0.0, swap = 0.0;
  double ortho = 0.0, pyth = 0.0;
  for (std::size_t n = 0; n < opt.samples; ++n) {
    const Multivector x = random_multivector(rng, sig);
    const Multivector y = random_multivector(rng, sig);
    const SplitPair sp = split(x, pair);
    const double scale = std::max(1.0, fg) * modulus(x);
    recon = std::max(recon, rel(max_abs_diff(recombine(sp), x),
                                std::max(modulus(x), modulus(sandwich(x, pair)))));
    eigen = std::max({eigen, rel(max_abs_diff(sandwich(sp.plus, pair), sp.plus), scale),
                      rel(max_abs_diff(sandwich(sp.minus, pair), -sp.minus), scale)});
    invol = std::max(invol, rel(max_abs_diff(sandwich(sandwich(x, pair), pair), x),
                                fg * fg * modulus(x)));
    const FSplit xf = f_split(x, pair.f_root());
    const FSplit xg = f_split(x, pair.g_root());
    const Multivector plus_f =
        xf.commuting * (0.5 * (one + prod)) + xf.anticommuting * (0.5 * (one - prod));
    const Multivector plus_g =
        (0.5 * (one + prod)) * xg.commuting + (0.5 * (one - prod)) * xg.anticommuting;
    const Multivector minus_f =
        xf.commuting * (0.5 * (one - prod)) + xf.anticommuting * (0.5 * (one + prod));
    lin = std::max({lin, rel(max_abs_diff(plus_f, sp.plus), scale * fg),
                    rel(max_abs_diff(plus_g, sp.plus), scale * fg),
                    rel(max_abs_diff(minus_f, sp.minus), scale * fg)});
    const double alpha = rng.uniform(-10.0, 10.0);
    const double beta = rng.uniform(-10.0, 10.0);
    swap = std::max(swap, rel(exp_swap_check(alpha, beta, x, pair), scale * fg));
    if (pair.blade_like()) {
      const MixedScalars ms = mixed_scalar(x, y, pair);
      ortho = std::max({ortho, rel(std::abs(ms.plus_minus), modulus(x) * modulus(y)),
                        rel(std::abs(ms.minus_plus), modulus(x) * modulus(y))});
      pyth = std::max(pyth, rel(std::abs(modulus_squared(x) - modulus_squared(sp.plus) -
                                         modulus_squared(sp.minus)),
                                modulus_squared(x)));
    }
  }
  rec.check("split.reconstruction", sig, name, recon, 1e-15);
  rec.check("split.eigen_action", sig, name, eigen, tol);
  rec.check("split.involution", sig, name, invol, tol);
  rec.check("split.linear_combination", sig, name, lin, tol);
  rec.check("split.exp_swap", sig, name, swap, opt.tolerance);
  if (pair.blade_like()) {
    rec.check("split.orthogonality", sig, name, ortho, tol);
    rec.check("split.modulus_pythagoras", sig, name, pyth, tol);
  } else {
    rec.skip("split.orthogonality", sig, name, "pair not blade-like");
    rec.skip("split.modulus_pythagoras", sig, name, "pair not blade-like");
  }
}

inline void transform_properties(Recorder& rec, const RootPair& pair, Rng& rng,
                                 const VerifyOptions& opt) {
  const Signature sig = pair.signature();
  const std::string name = pair.describe();
  const GridGeometry& geo = opt.geometry;
  const double tol = opt.tolerance;

  double round_trip = 0.0, oracle = 0.0, commute = 0.0, lin_left = 0.0,
         lin_right = 0.0, cov = 0.0, mag = 0.0, circle = 0.0, rotation = 0.0,
         modulation = 0.0, pyth = 0.0, planch = 0.0, parsev = 0.0, parsev_split = 0.0;
  const GridGeometry small{16, 16, geo.smin, geo.smax};
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const LogPolarSignal h = random_signal(geo, sig, rng);
    const LogPolarSignal m = random_signal(geo, sig, rng);
    const Spectrum spec = cfmt_forward(h, pair);
    round_trip = std::max(round_trip,
                          max_abs_diff(cfmt_inverse(spec), h) / max_modulus(h.samples()));

    const LogPolarSignal hs = random_signal(small, sig, rng);
    oracle = std::max(oracle, relative_residual(cfmt_fast(hs, pair),
                                                cfmt_direct_grid(hs, pair)));
    commute = std::max(commute, split_commutation_residual(h, pair));

    const LinearityResiduals lr = check_linearity(
        h, m, pair, random_in_span(rng, pair.f()), random_in_span(rng, pair.f()),
        random_in_span(rng, pair.g()), random_in_span(rng, pair.g()));
    lin_left = std::max(lin_left, lr.left);
    lin_right = std::max(lin_right, lr.right);

    const long a_shift = static_cast<long>(rng.below(geo.ns));
    const long phi_shift = static_cast<long>(rng.below(geo.ntheta));
    const CovarianceResiduals cr = scale_rotate_residuals(h, pair, a_shift, phi_shift);
    cov = std::max(cov, cr.covariance);
    mag = std::max(mag, cr.magnitude);
    if (geo.symmetric()) {
      const ReflectionResiduals rr = reflection_residuals(h, pair);
      circle = std::max(circle, rr.circle);
      rotation = std::max(rotation, rr.rotation);
    } else {
      rotation = std::max(rotation, relative_residual(
          cfmt_forward(reverse_rotation(h), pair), [&] {
            Spectrum neg(geo, pair);
            for (int j = spec.j_min(); j <= spec.j_max(); ++j) {
              for (int k = spec.k_min(); k <= spec.k_max(); ++k) {
                neg.at(j, k) = spec.at(j, wrap_centered(-k, geo.ntheta));
              }
            }
            return neg;
          }()));
    }
    if (geo.contains_origin()) {
      const int j0 = static_cast<int>(rng.below(geo.ns)) - static_cast<int>(geo.ns / 2);
      const int k0 = static_cast<int>(rng.below(geo.ntheta)) -
                     static_cast<int>(geo.ntheta / 2);
      modulation = std::max(modulation, modulation_residual(h, pair, j0, k0));
    }
    pyth = std::max(pyth, spectral_pythagoras_residual(h, pair));
    const PlancherelResult pr = plancherel_check(h, m, pair);
    planch = std::max(planch, std::abs(pr.lhs - pr.rhs) / (norm(h) * norm(m)));
    if (pair.blade_like()) {
      const ParsevalResult pv = parseval_check(h, pair);
      parsev = std::max(parsev, std::abs(pv.norm_signal - pv.norm_spectrum) / pv.norm_signal);
      const double sq = pv.norm_spectrum * pv.norm_spectrum;
      parsev_split = std::max(parsev_split,
                              std::abs(sq - pv.plus_part * pv.plus_part -
                                       pv.minus_part * pv.minus_part) / sq);
    } else {
      const double ns = norm(h);
      parsev = std::max(parsev, std::abs(ns - norm(spec)) / ns);
    }
  }
  rec.check("cfmt.round_trip", sig, name, round_trip, tol);
  rec.check("cfmt.oracle_equivalence", sig, name, oracle, tol);
  rec.check("cfmt.split_commutation", sig, name, commute, tol);
  rec.check("cfmt.linearity_left", sig, name, lin_left, tol);
  rec.check("cfmt.linearity_right", sig, name, lin_right, tol);
  rec.check("cfmt.scale_rotate_covariance", sig, name, cov, tol);
  if (geo.symmetric()) {
    rec.check("cfmt.reflection_circle", sig, name, circle, tol);
  } else {
    rec.skip("cfmt.reflection_circle", sig, name, "grid not symmetric in s");
  }
  rec.check("cfmt.reflection_rotation", sig, name, rotation, tol);
  if (geo.contains_origin()) {
    rec.check("cfmt.modulation", sig, name, modulation, tol);
  } else {
    rec.skip("cfmt.modulation", sig, name, "s = 0 is not a grid node");
  }
  if (pair.blade_like()) {
    rec.check("cfmt.magnitude_invariance", sig, name, mag, tol);
    rec.check("cfmt.spectral_pythagoras", sig, name, pyth, tol);
    rec.check("cfmt.plancherel", sig, name, planch, tol);
    rec.check("cfmt.parseval", sig, name, parsev, tol);
    rec.check("cfmt.parseval_split", sig, name, parsev_split, tol);
  } else {
    const std::string why = "pair not blade-like";
    rec.report("cfmt.magnitude_invariance", sig, name, mag, why);
    rec.report("cfmt.spectral_pythagoras", sig, name, pyth, why);
    rec.report("cfmt.plancherel", sig, name, planch, why);
    rec.report("cfmt.parseval", sig, name, parsev, why);
    rec.skip("cfmt.parseval_split", sig, name, why);
  }

  double radial = 0.0, angular = 0.0;
  for (int order = 1; order <= 2; ++order) {
    const LogPolarSignal b = random_band_limited(geo, sig, rng);
    const DerivativeResiduals d = check_derivative_theorems(b, pair, order);
    radial = std::max(radial, d.radial);
    angular = std::max(angular, d.angular);
  }
  rec.check("cfmt.derivative_radial", sig, name, radial, opt.derivative_tolerance);
  rec.check("cfmt.derivative_angular", sig, name, angular, opt.derivative_tolerance);

  // Smooth bump centered at theta = pi, negligible at the seam.
  const GridGeometry bump_geo{32, 32, -3.0, 3.0};
  const Multivector amp = random_multivector(rng, sig);
  const double s0 = rng.uniform(-0.5, 0.5);
  const LogPolarSignal bump = LogPolarSignal::from_function(
      bump_geo, sig, [&](double s, double theta) {
        const double dt = theta - std::numbers::pi;
        return std::exp(-(s - s0) * (s - s0) - 4.0 * dt * dt) * amp;
      });
  const std::vector<std::pair<double, double>> points{
      {0.3 * bump_geo.dv(), 0.7}, {1.7 * bump_geo.dv(), -2.2}, {-2.5 * bump_geo.dv(), 1.1}};
  double power = 0.0;
  for (int mm = 0; mm <= 2; ++mm) {
    for (int nn = 0; nn <= 2; ++nn) {
      power = std::max(power, check_power_scaling(bump, pair, mm, nn, points).residual);
    }
  }
  rec.check("cfmt.power_scaling", sig, name, power, opt.power_tolerance);

  if (pair.degenerate()) {
    rec.skip("cfmt.symmetry_separation", sig, name, "g=±f");
  } else if (!geo.symmetric()) {
    rec.skip("cfmt.symmetry_separation", sig, name, "grid not symmetric in s");
  } else {
    double off = 0.0;
    bool independent = true;
    for (std::size_t t = 0; t < opt.trials && independent; ++t) {
      LogPolarSignal h(geo, sig);
      for (Multivector& x : h.samples()) x = Multivector::scalar(sig, rng.normal());
      try {
        const SymmetryComponents sc = symmetry_decompose(h, pair);
        for (double o : sc.off_span) off = std::max(off, o);
      } catch (const ContractError&) {
        independent = false;
      }
    }
    if (independent) {
      rec.check("cfmt.symmetry_separation", sig, name, off, opt.tolerance);
    } else {
      rec.skip("cfmt.symmetry_separation", sig, name, "{1,f,g,fg} dependent");
    }
  }
}

}  // namespace detail

/// Pairs exercised when no pair is given: per algebra, one blade-like pair and
/// one random non-blade pair (Cl(0,2) roots are all blade-like).
inline std::vector<RootPair> default_verify_pairs(std::uint64_t seed) {
  std::vector<RootPair> pairs;
  pairs.push_back(RootPair::quaternion_default());
  {
    const auto r = random_roots(Signature::cl02(), 2, seed + 1);
    pairs.emplace_back(r[0], r[1]);
  }
  const Signature cl20 = Signature::cl20();
  pairs.push_back(RootPair::from(Multivector::basis(cl20, kE12),
                                 Multivector::basis(cl20, kE12)));
  {
    const auto r = random_roots(cl20, 2, seed + 2);
    pairs.emplace_back(r[0], r[1]);
  }
  const Signature cl11 = Signature::cl11();
  pairs.push_back(RootPair::from(Multivector::basis(cl11, kE2),
                                 Multivector::basis(cl11, kE2)));
  {
    const auto r = random_roots(cl11, 2, seed + 3);
    pairs.emplace_back(r[0], r[1]);
  }
  return pairs;
}

inline std::vector<PropertyResult> run_verify(const VerifyOptions& opt) {
  opt.geometry.validate();
  std::vector<PropertyResult> out;
  detail::Recorder rec(out);
  Rng rng(opt.seed);
  std::vector<RootPair> pairs =
      opt.pair ? std::vector<RootPair>{*opt.pair} : default_verify_pairs(opt.seed);
  if (opt.degenerate) {
    for (RootPair& p : pairs) p = RootPair(p.f_root(), validate_root(-p.f()));
  }
  std::vector<Signature> algebras;
  for (const RootPair& p : pairs) {
    if (std::find(algebras.begin(), algebras.end(), p.signature()) == algebras.end()) {
      algebras.push_back(p.signature());
    }
  }
  for (Signature sig : algebras) detail::algebra_properties(rec, sig, rng, opt);
  for (const RootPair& p : pairs) {
    detail::split_properties(rec, p, rng, opt);
    detail::transform_properties(rec, p, rng, opt);
  }
  return out;
}

inline bool all_passed(const std::vector<PropertyResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const PropertyResult& r) {
    return r.pass.has_value() && !*r.pass;
  });
}

inline nlohmann::json verify_report(const std::vector<PropertyResult>& results,
                                    const VerifyOptions& opt) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t passed = 0, failed = 0, other = 0;
  for (const PropertyResult& r : results) {
    nlohmann::json row{{"property", r.property}, {"algebra", r.algebra},
                       {"pair", r.pair},         {"residual", r.residual},
                       {"tolerance", r.tolerance}, {"status", r.status}};
    if (r.pass) {
      row["pass"] = *r.pass;
      (*r.pass ? passed : failed) += 1;
    } else {
      row["pass"] = nullptr;
      ++other;
    }
    rows.push_back(std::move(row));
  }
  return {{"seed", opt.seed},
          {"geometry",
           {{"ns", opt.geometry.ns},
            {"ntheta", opt.geometry.ntheta},
            {"smin", opt.geometry.smin},
            {"smax", opt.geometry.smax}}},
          {"results", std::move(rows)},
          {"summary", {{"passed", passed}, {"failed", failed}, {"not_asserted", other}}}};
}

}  // namespace clifford_mellin
