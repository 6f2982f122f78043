#include "catch_amalgamated.hpp"

#include <cmath>

#include "clifford_mellin/random.hpp"
#include "clifford_mellin/split.hpp"
#include "support/oracle.hpp"

namespace cm = clifford_mellin;

namespace {

cm::Multivector random_mv(cm::Rng& rng, cm::Signature sig) {
  return {sig, rng.normal(), rng.normal(), rng.normal(), rng.normal()};
}

std::vector<cm::RootPair> pairs_for(cm::Signature sig, std::uint64_t seed) {
  const auto roots = cm::random_roots(sig, 8, seed);
  std::vector<cm::RootPair> out;
  for (std::size_t i = 0; i + 1 < roots.size(); i += 2) out.emplace_back(roots[i], roots[i + 1]);
  out.emplace_back(roots[0], cm::validate_root(-roots[0].value()));
  return out;
}

}  // namespace

TEST_CASE("split of 1 under the quaternion pair", "[split]") {
  const auto pair = cm::RootPair::quaternion_default();
  const auto sig = pair.signature();
  const auto sp = cm::split(cm::Multivector::scalar(sig, 1.0), pair);
  CHECK(sp.plus == cm::Multivector(sig, 0.5, 0, 0, 0.5));
  CHECK(sp.minus == cm::Multivector(sig, 0.5, 0, 0, -0.5));
  const auto zero = cm::split(cm::Multivector(sig), pair);
  CHECK(zero.plus.is_zero());
  CHECK(zero.minus.is_zero());
  CHECK(cm::recombine(zero).is_zero());
}

TEST_CASE("split parts are eigenvectors of f()g, checked by matrices", "[split]") {
  cm::Rng rng(21);
  for (cm::Signature sig : cm::kAllSignatures) {
    for (const auto& pair : pairs_for(sig, 3)) {
      const double scale = cm::modulus(pair.f()) * cm::modulus(pair.g());
      for (int t = 0; t < 200; ++t) {
        const auto x = random_mv(rng, sig);
        const auto sp = cm::split(x, pair);
        const auto fpg = oracle::product(oracle::product(pair.f(), sp.plus), pair.g());
        const auto fmg = oracle::product(oracle::product(pair.f(), sp.minus), pair.g());
        const double tol = 1e-12 * scale * scale * (1 + cm::modulus(x));
        REQUIRE(cm::max_abs_diff(fpg, sp.plus) <= tol);
        REQUIRE(cm::max_abs_diff(fmg, -sp.minus) <= tol);
        REQUIRE(cm::max_abs_diff(cm::recombine(sp), x) <= 1e-15 * scale * (1 + cm::modulus(x)));
        // Re-splitting x_+ leaves nothing in the minus part.
        const auto again = cm::split(sp.plus, pair);
        REQUIRE(cm::modulus(again.minus) <= tol);
      }
    }
  }
}

TEST_CASE("g = -f reproduces the f-split", "[split]") {
  cm::Rng rng(22);
  for (cm::Signature sig : cm::kAllSignatures) {
    for (const auto& f : cm::random_roots(sig, 20, 6)) {
      const cm::RootPair pair(f, cm::validate_root(-f.value()));
      const auto x = random_mv(rng, sig);
      const auto sp = cm::split(x, pair);
      const auto fs = cm::f_split(x, f);
      const double tol = 1e-12 * cm::modulus_squared(f.value()) * (1 + cm::modulus(x));
      CHECK(cm::max_abs_diff(sp.plus, fs.commuting) <= tol);
      CHECK(cm::max_abs_diff(sp.minus, fs.anticommuting) <= tol);
      CHECK(cm::max_abs_diff(fs.commuting * f.value(), f.value() * fs.commuting) <= tol);
      CHECK(cm::max_abs_diff(fs.anticommuting * f.value(), -(f.value() * fs.anticommuting)) <= tol);
    }
  }
}

TEST_CASE("f-split examples", "[split]") {
  const auto sig = cm::Signature::cl02();
  const auto e12 = cm::validate_root(cm::Multivector::basis(sig, cm::kE12));
  const auto e1 = cm::Multivector::basis(sig, cm::kE1);
  const auto s = cm::f_split(e1, e12);
  CHECK(s.commuting.is_zero());
  CHECK(s.anticommuting == e1);
  const auto c = cm::f_split(cm::Multivector::scalar(sig, 3.0), e12);
  CHECK(c.commuting == cm::Multivector::scalar(sig, 3.0));
  CHECK(c.anticommuting.is_zero());
  const auto self = cm::f_split(e12.value(), e12);
  CHECK(self.commuting == e12.value());
  CHECK(self.anticommuting.is_zero());
}

TEST_CASE("mixed scalar parts vanish for blade-like pairs", "[split]") {
  cm::Rng rng(23);
  const auto cl20 = cm::Signature::cl20();
  const auto e12 = cm::validate_root(cm::Multivector::basis(cl20, cm::kE12));
  std::vector<cm::RootPair> pairs{cm::RootPair(e12, e12)};
  for (const auto& p : pairs_for(cm::Signature::cl02(), 4)) pairs.push_back(p);
  for (const auto& pair : pairs) {
    REQUIRE(pair.blade_like());
    for (int t = 0; t < 200; ++t) {
      const auto x = random_mv(rng, pair.signature());
      const auto y = random_mv(rng, pair.signature());
      const auto sx = cm::split(x, pair);
      const auto sy = cm::split(y, pair);
      // Scalar part through the trace of the matrix picture.
      const auto sc = [](const cm::Multivector& a, const cm::Multivector& b) {
        return (oracle::to_matrix(a) * oracle::to_matrix(cm::principal_reverse(b))).trace().real() / 2;
      };
      const double scale = 1e-12 * (1 + cm::modulus(x) * cm::modulus(y));
      CHECK(std::abs(sc(sx.plus, sy.minus)) <= scale);
      CHECK(std::abs(sc(sx.minus, sy.plus)) <= scale);
      const auto ms = cm::mixed_scalar(x, y, pair);
      CHECK(std::abs(ms.plus_minus) <= scale);
      CHECK(std::abs(ms.minus_plus) <= scale);
    }
  }
  const auto f = cm::sample_root(cl20, 1.0, 2.0, cm::Branch::plus);
  CHECK_THROWS_AS(cm::mixed_scalar(cm::Multivector(cl20), cm::Multivector(cl20), cm::RootPair(f, e12)),
                  cm::ContractError);
}

TEST_CASE("mixed scalar parts need not vanish outside the hypothesis", "[split]") {
  const auto cl20 = cm::Signature::cl20();
  const cm::RootPair pair(cm::sample_root(cl20, 1.0, 2.0, cm::Branch::plus),
                          cm::sample_root(cl20, -0.5, 0.7, cm::Branch::minus));
  cm::Rng rng(24);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto ms = cm::mixed_scalar_unchecked(random_mv(rng, cl20), random_mv(rng, cl20), pair);
    worst = std::max({worst, std::abs(ms.plus_minus), std::abs(ms.minus_plus)});
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("exponential swap identity", "[split]") {
  cm::Rng rng(25);
  for (cm::Signature sig : cm::kAllSignatures) {
    for (const auto& pair : pairs_for(sig, 5)) {
      const double scale = cm::modulus(pair.f()) * cm::modulus(pair.g());
      const auto x = random_mv(rng, sig);
      CHECK(cm::exp_swap_check(0.0, 0.0, x, pair) == 0.0);
      for (int t = 0; t < 50; ++t) {
        const double a = rng.uniform(-10, 10);
        const double b = rng.uniform(-10, 10);
        CHECK(cm::exp_swap_check(a, b, x, pair) <= 1e-10 * scale * scale * (1 + cm::modulus(x)));
      }
      // beta = alpha leaves x_+ unchanged.
      const auto sp = cm::split(x, pair);
      const double a = 0.7;
      const auto rotated = cm::exp_root(a, pair.f()) * sp.plus * cm::exp_root(a, pair.g());
      CHECK(cm::max_abs_diff(rotated, sp.plus) <= 1e-12 * scale * scale * (1 + cm::modulus(x)));
    }
  }
}
