#include "catch_amalgamated.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "clifford_mellin/roots.hpp"

namespace cm = clifford_mellin;

TEST_CASE("validate_root on basis blades", "[roots]") {
  const auto cl02 = cm::Signature::cl02();
  const auto cl20 = cm::Signature::cl20();
  const auto r = cm::validate_root(cm::Multivector::basis(cl02, cm::kE1)).parameters();
  CHECK(r.b1 == 1.0);
  CHECK(r.b2 == 0.0);
  CHECK(r.beta == 0.0);

  const auto e12 = cm::validate_root(cm::Multivector::basis(cl20, cm::kE12)).parameters();
  CHECK(e12.beta == 1.0);

  try {
    (void)cm::validate_root(cm::Multivector::basis(cl20, cm::kE1));
    FAIL("e1 accepted in Cl(2,0)");
  } catch (const cm::NotARootError& e) {
    CHECK(e.residual() == 2.0);
  }
  CHECK_THROWS_AS(cm::validate_root(cm::Multivector(cl02, 0.5, 1, 0, 0)), cm::NotARootError);
}

TEST_CASE("sample_root follows the chart", "[roots]") {
  const auto cl20 = cm::Signature::cl20();
  const auto cl02 = cm::Signature::cl02();
  CHECK(cm::sample_root(cl20, 0, 0, cm::Branch::plus).value() ==
        cm::Multivector::basis(cl20, cm::kE12));
  CHECK(cm::sample_root(cl20, 0, 0, cm::Branch::minus).value() ==
        -cm::Multivector::basis(cl20, cm::kE12));
  CHECK(cm::sample_root(cl02, 1, 0, cm::Branch::plus).value() ==
        cm::Multivector::basis(cl02, cm::kE1));
  CHECK_THROWS_AS(cm::sample_root(cl02, 1, 1, cm::Branch::plus), cm::OffManifoldError);
  // Cl(1,1) needs b2^2 >= 1 + b1^2.
  CHECK_THROWS_AS(cm::sample_root(cm::Signature::cl11(), 0, 0.5, cm::Branch::plus),
                  cm::OffManifoldError);
}

TEST_CASE("random roots square to -1 and lie on their quadric", "[roots]") {
  for (cm::Signature sig : cm::kAllSignatures) {
    const auto roots = cm::random_roots(sig, 2000, 5);
    std::set<int> branches;
    for (const auto& r : roots) {
      auto sq = r.value() * r.value();
      sq[cm::kScalar] += 1.0;
      const double scale = std::max(1.0, cm::modulus_squared(r.value()));
      REQUIRE(cm::modulus(sq) <= 1e-12 * scale);
      REQUIRE(std::abs(cm::manifold_residual(sig, r.parameters())) <= 1e-12 * scale);
      REQUIRE(r.value()[cm::kScalar] == 0.0);
      branches.insert(r.parameters().beta >= 0 ? 1 : -1);
    }
    CHECK(branches.size() == 2);
  }
}

TEST_CASE("random roots are deterministic per seed", "[roots]") {
  const auto a = cm::random_roots(cm::Signature::cl11(), 100, 7);
  const auto b = cm::random_roots(cm::Signature::cl11(), 100, 7);
  const auto c = cm::random_roots(cm::Signature::cl11(), 100, 8);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].value() == b[i].value());
    differs = differs || !(a[i].value() == c[i].value());
  }
  CHECK(differs);
  const auto one = cm::random_roots(cm::Signature::cl02(), 1, 3);
  const auto p = one[0].parameters();
  CHECK(p.b1 * p.b1 + p.b2 * p.b2 <= 1.0);
  CHECK_THROWS_AS(cm::random_roots(cm::Signature::cl02(), 0, 3), cm::DomainError);
}

TEST_CASE("inverse of a root is its negation", "[roots]") {
  for (cm::Signature sig : cm::kAllSignatures) {
    for (const auto& r : cm::random_roots(sig, 500, 9)) {
      const double scale = std::max(1.0, cm::modulus(r.value()));
      REQUIRE(cm::max_abs_diff(cm::inverse(r.value()), -r.value()) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("exported manifolds satisfy the quadric equations", "[roots]") {
  for (cm::Signature sig : cm::kAllSignatures) {
    const auto points = cm::export_manifold(sig, 12);
    REQUIRE(points.size() == 144);
    for (const auto& p : points) {
      const double b1 = p.b1, b2 = p.b2, beta = p.beta;
      const double scale = std::max(1.0, b1 * b1 + b2 * b2 + beta * beta);
      double q = 0.0;
      if (sig == cm::Signature::cl02()) q = b1 * b1 + b2 * b2 + beta * beta - 1.0;
      if (sig == cm::Signature::cl20()) q = beta * beta - b1 * b1 - b2 * b2 - 1.0;
      if (sig == cm::Signature::cl11()) q = beta * beta + b1 * b1 - b2 * b2 + 1.0;
      REQUIRE(std::abs(q) <= 1e-12 * scale);
      REQUIRE(p.branch * p.beta >= 0.0);
    }
  }
  CHECK(cm::export_manifold(cm::Signature::cl20(), 2).size() == 4);
  CHECK_THROWS_AS(cm::export_manifold(cm::Signature::cl20(), 1), cm::DomainError);

  std::ostringstream csv;
  cm::write_manifold_csv(csv, cm::export_manifold(cm::Signature::cl02(), 2));
  const std::string text = csv.str();
  CHECK(text.rfind("b1,b2,beta,branch\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("root pair flags", "[roots]") {
  const auto cl20 = cm::Signature::cl20();
  const auto e12 = cm::Multivector::basis(cl20, cm::kE12);
  const auto pair = cm::RootPair::from(e12, -e12);
  CHECK(pair.degenerate());
  CHECK(pair.blade_like());

  // A Cl(2,0) root with a vector part is not blade-like.
  const auto f = cm::sample_root(cl20, 0.5, -1.0, cm::Branch::plus);
  const cm::RootPair mixed(f, cm::validate_root(e12));
  CHECK_FALSE(mixed.degenerate());
  CHECK_FALSE(mixed.blade_like());

  for (const auto& r : cm::random_roots(cm::Signature::cl02(), 50, 4)) {
    CHECK(cm::RootPair(r, r).blade_like());
  }
  CHECK(cm::RootPair::quaternion_default().describe() == "f=0,1,0,0;g=0,0,1,0");
  CHECK_THROWS_AS(cm::RootPair(f, cm::validate_root(cm::Multivector::basis(
                                      cm::Signature::cl02(), cm::kE1))),
                  cm::DomainError);
}
