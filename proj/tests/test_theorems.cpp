#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "clifford_mellin/theorems.hpp"
#include "clifford_mellin/verify.hpp"
#include "support/oracle.hpp"
#include "support/pairs.hpp"

namespace cm = clifford_mellin;

namespace {

constexpr double kPi = std::numbers::pi;
const cm::GridGeometry kGrid{16, 16, -kPi, kPi};

double scale_of(const cm::RootPair& p) {
  return std::max(1.0, cm::modulus(p.f()) * cm::modulus(p.g()));
}

double spectral_tol(const cm::Spectrum& s, const cm::RootPair& p) {
  return 1e-10 * scale_of(p) * std::max(1.0, cm::max_modulus(s.coeffs()));
}

/// A smooth function periodic in both axes with all four channels used.
cm::Multivector smooth(cm::Signature sig, double s, double t) {
  return {sig, std::cos(s) + 0.5 * std::sin(2 * t), std::sin(s + t), 0.3 * std::cos(2 * s - t),
          std::sin(3 * t) * std::cos(s)};
}

cm::Multivector kernel_product(const cm::Multivector& left_root, double a,
                               const cm::Multivector& x, const cm::Multivector& right_root,
                               double b) {
  const auto m = oracle::expm(oracle::to_matrix(left_root), a) * oracle::to_matrix(x) *
                 oracle::expm(oracle::to_matrix(right_root), b);
  return oracle::from_matrix(m, x.signature());
}

}  // namespace

TEST_CASE("left and right linearity", "[theorems]") {
  cm::Rng rng(51);
  for (const auto& pair : pairs::all(11)) {
    const auto sig = pair.signature();
    const auto h1 = cm::random_signal(kGrid, sig, rng);
    const auto h2 = cm::random_signal(kGrid, sig, rng);
    const auto one = cm::Multivector::scalar(sig, 1.0);
    const auto a = 0.7 * one + 1.3 * pair.f();
    const auto b = -0.4 * one + 0.2 * pair.f();
    const auto ar = 2.5 * one;
    const auto br = 0.5 * one - 1.1 * pair.g();
    const auto r = cm::check_linearity(h1, h2, pair, a, b, ar, br);
    CHECK(r.left <= 1e-10 * scale_of(pair));
    CHECK(r.right <= 1e-10 * scale_of(pair));
    const auto unit = cm::check_linearity(h1, h2, pair, pair.f(), cm::Multivector(sig), one, one);
    CHECK(unit.left <= 1e-10 * scale_of(pair));
    if (!pair.degenerate()) {
      CHECK_THROWS_AS(cm::check_linearity(h1, h2, pair, pair.g(), b, ar, br), cm::ContractError);
      CHECK_THROWS_AS(cm::check_linearity(h1, h2, pair, a, b, pair.f(), br), cm::ContractError);
    }
  }
}

TEST_CASE("scale-rotate shift is a grid translation", "[theorems]") {
  const auto sig = cm::Signature::cl11();
  const auto h = cm::LogPolarSignal::from_function(
      kGrid, sig, [&](double s, double t) { return smooth(sig, s, t); });
  const long p = 3, q = -5;
  const auto m = cm::apply_scale_rotate(h, p, q);
  const auto expect = cm::LogPolarSignal::from_function(kGrid, sig, [&](double s, double t) {
    return smooth(sig, s + p * kGrid.ds(), t + q * kGrid.dtheta());
  });
  CHECK(cm::max_abs_diff(m, expect) <= 1e-13);
  CHECK(cm::max_abs_diff(cm::apply_scale_rotate(h, 0, 0), h) == 0.0);
  CHECK(cm::max_abs_diff(cm::apply_scale_rotate_by(h, std::exp(2 * kGrid.ds()), kGrid.dtheta()),
                         cm::apply_scale_rotate(h, 2, 1)) == 0.0);
  CHECK_THROWS_AS(cm::apply_scale_rotate_by(h, 1.01, 0.0), cm::ContractError);
  CHECK_THROWS_AS(cm::apply_scale_rotate_by(h, 1.0, 0.1), cm::ContractError);
}

TEST_CASE("scale-rotate covariance of the spectrum", "[theorems]") {
  cm::Rng rng(52);
  for (const auto& pair : pairs::all(12)) {
    const auto h = cm::random_signal(kGrid, pair.signature(), rng);
    const long p = static_cast<long>(rng.below(16)) - 8;
    const long q = static_cast<long>(rng.below(16)) - 8;
    const auto hs = cm::cfmt_fast(h, pair);
    const auto ms = cm::cfmt_fast(cm::apply_scale_rotate(h, p, q), pair);
    const double tol = spectral_tol(hs, pair) * scale_of(pair);
    for (int j = hs.j_min(); j <= hs.j_max(); ++j) {
      for (int k = hs.k_min(); k <= hs.k_max(); ++k) {
        const auto expect = kernel_product(pair.f(), hs.v(j) * p * kGrid.ds(), hs.at(j, k),
                                           pair.g(), k * q * kGrid.dtheta());
        REQUIRE(cm::max_abs_diff(ms.at(j, k), expect) <= tol);
        if (pair.blade_like()) {
          REQUIRE(std::abs(cm::modulus(ms.at(j, k)) - cm::modulus(hs.at(j, k))) <= tol);
        }
      }
    }
    const auto r = cm::scale_rotate_residuals(h, pair, p, q);
    CHECK(r.covariance <= 1e-10 * scale_of(pair) * scale_of(pair));
    if (pair.blade_like()) CHECK(r.magnitude <= 1e-10);
  }
}

TEST_CASE("rotation by pi multiplies by (-1)^k", "[theorems]") {
  cm::Rng rng(53);
  const auto pair = pairs::blade_pair(cm::Signature::cl20());
  const auto h = cm::random_signal(kGrid, pair.signature(), rng);
  const auto hs = cm::cfmt_fast(h, pair);
  const auto ms = cm::cfmt_fast(cm::apply_scale_rotate(h, 0, 8), pair);
  for (int j = hs.j_min(); j <= hs.j_max(); ++j) {
    for (int k = hs.k_min(); k <= hs.k_max(); ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      REQUIRE(cm::max_abs_diff(ms.at(j, k), sign * hs.at(j, k)) <= 1e-12);
    }
  }
}

TEST_CASE("reflections", "[theorems]") {
  const auto sig = cm::Signature::cl02();
  const auto h = cm::LogPolarSignal::from_function(
      kGrid, sig, [&](double s, double t) { return smooth(sig, s, t); });
  const auto rs = cm::LogPolarSignal::from_function(
      kGrid, sig, [&](double s, double t) { return smooth(sig, -s, t); });
  const auto rt = cm::LogPolarSignal::from_function(
      kGrid, sig, [&](double s, double t) { return smooth(sig, s, -t); });
  CHECK(cm::max_abs_diff(cm::reflect_circle(h), rs) <= 1e-13);
  CHECK(cm::max_abs_diff(cm::reverse_rotation(h), rt) <= 1e-13);
  CHECK(cm::max_abs_diff(cm::reflect_circle(cm::reflect_circle(h)), h) == 0.0);
  CHECK(cm::max_abs_diff(cm::reverse_rotation(cm::reverse_rotation(h)), h) == 0.0);
  const auto even = cm::LogPolarSignal::from_function(kGrid, sig, [&](double s, double t) {
    return cm::Multivector(sig, std::cos(s) * std::sin(t), 0, std::cos(2 * s), 0);
  });
  CHECK(cm::max_abs_diff(cm::reflect_circle(even), even) <= 1e-15);
  CHECK_THROWS_AS(cm::reflect_circle(cm::LogPolarSignal({8, 8, 0.0, 1.0}, sig)),
                  cm::ContractError);

  cm::Rng rng(54);
  for (const auto& pair : pairs::all(13)) {
    const auto x = cm::random_signal(kGrid, pair.signature(), rng);
    const auto xs = cm::cfmt_fast(x, pair);
    const auto ms = cm::cfmt_fast(cm::reflect_circle(x), pair);
    const auto mt = cm::cfmt_fast(cm::reverse_rotation(x), pair);
    const double tol = spectral_tol(xs, pair);
    for (int j = xs.j_min(); j <= xs.j_max(); ++j) {
      for (int k = xs.k_min(); k <= xs.k_max(); ++k) {
        REQUIRE(cm::max_abs_diff(ms.at(j, k), xs.at(cm::wrap_centered(-j, 16), k)) <= tol);
        REQUIRE(cm::max_abs_diff(mt.at(j, k), xs.at(j, cm::wrap_centered(-k, 16))) <= tol);
      }
    }
    const auto r = cm::reflection_residuals(x, pair);
    CHECK(r.circle <= 1e-10 * scale_of(pair));
    CHECK(r.rotation <= 1e-10 * scale_of(pair));
  }
}

TEST_CASE("modulation shifts the spectrum", "[theorems]") {
  cm::Rng rng(55);
  for (const auto& pair : pairs::all(14)) {
    const auto sig = pair.signature();
    const auto h = cm::random_signal(kGrid, sig, rng);
    CHECK(cm::max_abs_diff(cm::modulate(h, pair, 0.0, 0), h) == 0.0);
    const int j0 = 3, k0 = -2;
    const auto m = cm::modulate(h, pair, j0 * kGrid.dv(), k0);
    // Pointwise definition r^{f v0} h e^{g k0 theta}.
    for (std::size_t i = 0; i < kGrid.ns; ++i) {
      for (std::size_t l = 0; l < kGrid.ntheta; ++l) {
        const auto expect = kernel_product(pair.f(), j0 * kGrid.dv() * kGrid.s_at(i), h.at(i, l),
                                           pair.g(), k0 * kGrid.theta_at(l));
        REQUIRE(cm::max_abs_diff(m.at(i, l), expect) <= 1e-12 * scale_of(pair) * scale_of(pair) * 10);
      }
    }
    const auto hs = cm::cfmt_fast(h, pair);
    const auto ms = cm::cfmt_fast(m, pair);
    const double tol = spectral_tol(hs, pair) * scale_of(pair);
    for (int j = hs.j_min(); j <= hs.j_max(); ++j) {
      for (int k = hs.k_min(); k <= hs.k_max(); ++k) {
        REQUIRE(cm::max_abs_diff(ms.at(j, k),
                                 hs.at(cm::wrap_centered(j - j0, 16), cm::wrap_centered(k - k0, 16))) <=
                tol);
      }
    }
    CHECK(cm::modulation_residual(h, pair, j0, k0) <= 1e-10 * scale_of(pair) * scale_of(pair));
    CHECK_THROWS_AS(cm::modulate(h, pair, 0.5 * kGrid.dv(), 0), cm::ContractError);
  }
  // A DC delta moves to (1, 1).
  const auto pair = cm::RootPair::quaternion_default();
  const auto sig = pair.signature();
  const auto one = cm::LogPolarSignal::from_function(
      kGrid, sig, [&](double, double) { return cm::Multivector::scalar(sig, 1.0); });
  const auto ms = cm::cfmt_fast(cm::modulate(one, pair, kGrid.dv(), 1), pair);
  for (int j = ms.j_min(); j <= ms.j_max(); ++j) {
    for (int k = ms.k_min(); k <= ms.k_max(); ++k) {
      const double expect = (j == 1 && k == 1) ? kGrid.span() : 0.0;
      REQUIRE(cm::max_abs_diff(ms.at(j, k), cm::Multivector::scalar(sig, expect)) <= 1e-12);
    }
  }
}

TEST_CASE("split commutes with the transform", "[theorems]") {
  cm::Rng rng(56);
  for (const auto& pair : pairs::all(15)) {
    const auto h = cm::random_signal(kGrid, pair.signature(), rng);
    const auto parts = cm::split_signal(h, pair);
    const auto hs = cm::split_spectrum(cm::cfmt_fast(h, pair));
    const double tol = 1e-10 * scale_of(pair) * scale_of(pair) * cm::max_modulus(h.samples());
    CHECK(cm::max_abs_diff(cm::cfmt_fast(parts.plus, pair), hs.plus) <= tol);
    CHECK(cm::max_abs_diff(cm::cfmt_fast(parts.minus, pair), hs.minus) <= tol);
    CHECK(cm::split_commutation_residual(h, pair) <= 1e-10 * scale_of(pair) * scale_of(pair));
  }
}

TEST_CASE("Parseval, Plancherel and spectral Pythagoras for blade-like pairs", "[theorems]") {
  cm::Rng rng(57);
  for (const auto& pair : pairs::all(16)) {
    if (!pair.blade_like()) {
      CHECK_THROWS_AS(cm::parseval_check(cm::LogPolarSignal(kGrid, pair.signature()), pair),
                      cm::ContractError);
      continue;
    }
    const auto h = cm::random_signal(kGrid, pair.signature(), rng);
    const auto m = cm::random_signal(kGrid, pair.signature(), rng);
    const auto pl = cm::plancherel_check(h, m, pair);
    CHECK(std::abs(pl.lhs - pl.rhs) <= 1e-10 * cm::norm(h) * cm::norm(m));
    const auto self = cm::plancherel_check(h, h, pair);
    CHECK(self.lhs == Catch::Approx(cm::norm(h) * cm::norm(h)).epsilon(1e-12));
    const auto zero = cm::plancherel_check(h, cm::LogPolarSignal(kGrid, pair.signature()), pair);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    const auto pv = cm::parseval_check(h, pair);
    CHECK(std::abs(pv.norm_signal - pv.norm_spectrum) <= 1e-10 * pv.norm_signal);
    CHECK(std::abs(pv.norm_spectrum * pv.norm_spectrum - pv.plus_part * pv.plus_part -
                   pv.minus_part * pv.minus_part) <= 1e-10 * pv.norm_signal * pv.norm_signal);
    CHECK(cm::spectral_pythagoras_residual(h, pair) <= 1e-12);
  }
  const auto pair = pairs::blade_pair(cm::Signature::cl11());
  const auto sig = pair.signature();
  const auto one = cm::LogPolarSignal::from_function(
      kGrid, sig, [&](double, double) { return cm::Multivector::scalar(sig, 1.0); });
  const auto pv = cm::parseval_check(one, pair);
  CHECK(pv.norm_signal == Catch::Approx(std::sqrt(2 * kPi * kGrid.span())).epsilon(1e-13));
  CHECK(pv.norm_spectrum == Catch::Approx(pv.norm_signal).epsilon(1e-13));
}

TEST_CASE("spectral derivatives of closed forms", "[theorems]") {
  const auto sig = cm::Signature::cl20();
  const auto h = cm::LogPolarSignal::from_function(kGrid, sig, [&](double s, double t) {
    return cm::Multivector(sig, std::sin(2 * s) * std::cos(t), std::cos(s), 0, std::sin(3 * t));
  });
  const auto ds = cm::LogPolarSignal::from_function(kGrid, sig, [&](double s, double t) {
    return cm::Multivector(sig, 2 * std::cos(2 * s) * std::cos(t), -std::sin(s), 0, 0);
  });
  const auto dt2 = cm::LogPolarSignal::from_function(kGrid, sig, [&](double s, double t) {
    return cm::Multivector(sig, -std::sin(2 * s) * std::cos(t), 0, 0, -9 * std::sin(3 * t));
  });
  CHECK(cm::max_abs_diff(cm::spectral_derivative(h, cm::Axis::radial, 1), ds) <= 1e-12);
  CHECK(cm::max_abs_diff(cm::spectral_derivative(h, cm::Axis::angular, 2), dt2) <= 1e-12);
  CHECK(cm::max_abs_diff(cm::spectral_derivative(h, cm::Axis::angular, 0), h) <= 1e-15);
}

TEST_CASE("derivative theorems on band-limited signals", "[theorems]") {
  cm::Rng rng(58);
  const cm::GridGeometry geo{32, 32, -kPi, kPi};
  for (const auto& pair : pairs::all(17)) {
    const auto h = cm::random_band_limited(geo, pair.signature(), rng);
    for (int order = 0; order <= 2; ++order) {
      const auto r = cm::check_derivative_theorems(h, pair, order);
      CHECK(r.band_limited);
      CHECK(r.radial <= 1e-8);
      CHECK(r.angular <= 1e-8);
    }
  }
  const auto pair = cm::RootPair::quaternion_default();
  const auto sig = pair.signature();
  const auto cos_s = cm::LogPolarSignal::from_function(
      geo, sig, [&](double s, double) { return cm::Multivector::scalar(sig, std::cos(s)); });
  CHECK(cm::check_derivative_theorems(cos_s, pair, 1).radial <= 1e-8);
  const auto cos_t = cm::LogPolarSignal::from_function(
      geo, sig, [&](double, double t) { return cm::Multivector::scalar(sig, std::cos(t)); });
  CHECK(cm::check_derivative_theorems(cos_t, pair, 1).angular <= 1e-8);
  CHECK(cm::check_derivative_theorems(cos_t, pair, 0).radial == 0.0);
  CHECK_FALSE(cm::check_derivative_theorems(cm::random_signal(geo, sig, rng), pair, 1).band_limited);
}

TEST_CASE("power scaling against the finite-difference oracle", "[theorems]") {
  const cm::GridGeometry geo{32, 32, -kPi, kPi};
  const std::vector<std::pair<double, double>> points{{0.0, 0.0}, {0.37, 1.5}, {-1.2, -0.4}};
  for (const auto& pair : pairs::all(18)) {
    const auto sig = pair.signature();
    const auto bump = cm::LogPolarSignal::from_function(geo, sig, [&](double s, double t) {
      const double w = std::exp(-s * s / 0.5 - (t - kPi) * (t - kPi) / 0.3);
      return cm::Multivector(sig, w, 0.5 * w, -0.2 * w, w * std::sin(s));
    });
    for (int m = 0; m <= 2; ++m) {
      for (int n = 0; n <= 2; ++n) {
        const auto r = cm::check_power_scaling(bump, pair, m, n, points);
        CHECK(r.residual <= 1e-5);
      }
    }
    // The left side is the plain double sum of the weighted signal.
    const auto weighted = cm::LogPolarSignal::from_function(geo, sig, [&](double s, double t) {
      return s * t * bump.at(static_cast<std::size_t>(std::lround((s - geo.smin) / geo.ds())),
                             static_cast<std::size_t>(std::lround(t / geo.dtheta())));
    });
    const auto r = cm::check_power_scaling(bump, pair, 1, 1, points);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const auto expect = oracle::direct_sum(weighted, pair, points[p].first, points[p].second);
      CHECK(cm::max_abs_diff(r.lhs[p], expect) <= 1e-10 * scale_of(pair) * (1 + cm::modulus(expect)));
    }
  }
  const auto pair = cm::RootPair::quaternion_default();
  const auto sig = pair.signature();
  const auto seam = cm::LogPolarSignal::from_function(
      geo, sig, [&](double, double t) { return cm::Multivector::scalar(sig, std::cos(t)); });
  CHECK_THROWS_AS(cm::check_power_scaling(seam, pair, 0, 1, points), cm::ContractError);
  CHECK_NOTHROW(cm::check_power_scaling(seam, pair, 1, 0, points));
}

TEST_CASE("symmetry separation of real signals", "[theorems]") {
  const auto sig = cm::Signature::cl02();
  auto real = [&](auto fn) {
    return cm::LogPolarSignal::from_function(kGrid, sig, [&](double s, double t) {
      return cm::Multivector::scalar(sig, fn(s, t));
    });
  };
  for (const auto& pair : pairs::all(19)) {
    if (pair.degenerate() || pair.signature() != sig) continue;
    const auto mixed = real([](double s, double t) {
      return std::cos(s) + std::sin(2 * s) * std::cos(t) + std::cos(3 * s) * std::sin(t) +
             std::sin(s) * std::sin(2 * t) + 0.2;
    });
    const auto c = cm::symmetry_decompose(mixed, pair);
    CHECK(c.verified);
    for (double off : c.off_span) CHECK(off <= 1e-10);
    const auto full = cm::cfmt_fast(mixed, pair);
    CHECK(cm::max_abs_diff(c.ee + c.eo + c.oe + c.oo, full) <= 1e-12 * cm::max_modulus(full.coeffs()));

    // sin(s) cos(theta): odd in s, even in theta, so the spectrum lies along f.
    const auto odd_even = real([](double s, double t) { return std::sin(s) * std::cos(t); });
    const auto spec = cm::cfmt_fast(odd_even, pair);
    for (const auto& x : spec.coeffs()) {
      const double along = cm::scalar_product(x, cm::principal_reverse(pair.f())) /
                           cm::modulus_squared(pair.f());
      REQUIRE(cm::max_abs_diff(x, along * pair.f()) <= 1e-12);
    }
    const auto oe = cm::symmetry_decompose(odd_even, pair);
    CHECK(cm::max_modulus(oe.ee.coeffs()) <= 1e-12);
    CHECK(cm::max_modulus(oe.eo.coeffs()) <= 1e-12);
    CHECK(cm::max_modulus(oe.oo.coeffs()) <= 1e-12);
    CHECK(cm::max_modulus(oe.oe.coeffs()) > 0.1);

    const auto even = real([](double s, double t) { return std::cos(s) * std::cos(2 * t) + 1; });
    const auto ee = cm::symmetry_decompose(even, pair);
    CHECK(cm::max_modulus(ee.eo.coeffs()) + cm::max_modulus(ee.oe.coeffs()) +
              cm::max_modulus(ee.oo.coeffs()) <= 1e-12);
    for (const auto& x : ee.ee.coeffs()) REQUIRE(std::abs(x[1]) + std::abs(x[2]) + std::abs(x[3]) <= 1e-12);

    const auto zero = cm::symmetry_decompose(cm::LogPolarSignal(kGrid, sig), pair);
    CHECK(cm::max_modulus(zero.ee.coeffs()) == 0.0);
    CHECK(zero.verified);
  }
  const auto q = cm::RootPair::quaternion_default();
  CHECK_THROWS_AS(cm::symmetry_decompose(cm::LogPolarSignal(kGrid, sig),
                                         cm::RootPair(q.f_root(), q.f_root())),
                  cm::ContractError);
  cm::LogPolarSignal vec(kGrid, sig);
  vec.at(1, 1) = cm::Multivector::basis(sig, cm::kE1);
  CHECK_THROWS_AS(cm::symmetry_decompose(vec, q), cm::ContractError);
}
