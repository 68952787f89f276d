#include <doctest.h>

#include <random>

#include "coxcalc/cox_ring.hpp"
#include "coxcalc/error.hpp"
#include "support.hpp"

using namespace coxcalc;
using testing::deg2;

TEST_CASE("class group of the Hirzebruch surfaces") {
  for (std::int64_t a = 0; a <= 3; ++a) {
    const GradedRing r = build_cox_ring(fans::hirzebruch(a));
    CHECK(r.class_group.free_rank() == 2);
    CHECK(r.class_group.torsion_free());
    CHECK(r.var_degrees == std::vector<DegreeVector>{deg2(r, 1, 0), deg2(r, a, 1), deg2(r, 1, 0), deg2(r, 0, 1)});
  }
}

TEST_CASE("class group of projective spaces") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const GradedRing r = build_cox_ring(fans::projective_space(n));
    CHECK(r.class_group.free_rank() == 1);
    for (const auto& d : r.var_degrees) CHECK(d == r.class_group.make({1}));
  }
}

TEST_CASE("torsion class group of the quadric cone") {
  const GradedRing r = build_cox_ring(Fan{2, {{1, 0}, {1, 2}}, {{0, 1}}});
  CHECK(r.class_group.free_rank() == 0);
  CHECK(r.class_group.torsion() == std::vector<std::int64_t>{2});
  CHECK(r.var_degrees[0] == r.var_degrees[1]);
  CHECK_FALSE(r.var_degrees[0].is_zero());
  CHECK((r.var_degrees[0] + r.var_degrees[1]).is_zero());
  CHECK_FALSE(r.positivity);
  CHECK_THROWS_AS(monomials_of_degree(r, r.zero_degree()), Error);
}

TEST_CASE("class group of a fan whose rays do not span") {
  CHECK_THROWS_AS(build_cox_ring(Fan{2, {{1, 0}}, {{0}}}), Error);
}

TEST_CASE("class group elements behave as a group") {
  const ClassGroup g(IntMatrix{{1, 1}, {0, 2}});
  const DegreeVector t = g.generator_class(1);
  CHECK((t + t).is_zero());
  CHECK(g.project({3, 5}) == g.project({1, 1}) + g.project({2, 4}));
  CHECK(g.project(g.section(t)) == t);
  CHECK_THROWS_AS(g.make({1}), Error);
}

TEST_CASE("irrelevant ideal of the first Hirzebruch surface") {
  const GradedRing r = build_cox_ring(fans::hirzebruch(1));
  std::vector<std::string> gens;
  for (const auto& e : r.irrelevant_gens) gens.push_back(monomial_to_string(e, 'x'));
  std::sort(gens.begin(), gens.end());
  CHECK(gens == std::vector<std::string>{"x1*x2", "x1*x4", "x2*x3", "x3*x4"});
}

TEST_CASE("positivity certificate") {
  const GradedRing r = build_cox_ring(fans::hirzebruch(2));
  REQUIRE(r.positivity);
  for (const auto& d : r.var_degrees) {
    Rational s = 0;
    for (std::size_t k = 0; k < d.free.size(); ++k) s += (*r.positivity)[k] * static_cast<long>(d.free[k]);
    CHECK(s > 0);
  }
  // The affine plane has only the trivial grading: no certificate.
  CHECK_FALSE(build_cox_ring(fans::affine_plane()).positivity);
  // Degrees (1,-1) and (0,1) need a functional other than all-ones.
  const auto lambda = find_positivity({DegreeVector({1, -1}), DegreeVector({0, 1})}, 2);
  REQUIRE(lambda);
  CHECK((*lambda)[0] > (*lambda)[1]);
  CHECK((*lambda)[1] > 0);
  CHECK_FALSE(find_positivity({DegreeVector({1}), DegreeVector({-1})}, 1));
}

TEST_CASE("monomials of degree against brute force") {
  std::mt19937 rng(3141);
  for (std::int64_t a = 0; a <= 3; ++a) {
    const GradedRing r = build_cox_ring(fans::hirzebruch(a));
    for (std::int64_t k = -1; k <= 5; ++k)
      for (std::int64_t l = -1; l <= 3; ++l) {
        const DegreeVector d = deg2(r, k, l);
        CHECK(monomials_of_degree(r, d) == testing::brute_force_monomials(r, d));
      }
  }
  const GradedRing p3 = build_cox_ring(fans::projective_space(3));
  CHECK(monomials_of_degree(p3, p3.class_group.make({3})).size() == 20);
}

TEST_CASE("monomials come out in ascending lexicographic order") {
  const GradedRing r = build_cox_ring(fans::projective_space(2));
  const auto monos = monomials_of_degree(r, r.class_group.make({2}));
  CHECK(std::is_sorted(monos.begin(), monos.end()));
  CHECK(monos.size() == 6);
}

TEST_CASE("polynomial arithmetic and homogeneity") {
  const GradedRing r = build_cox_ring(fans::hirzebruch(1));
  const HomogPoly p = testing::poly(r, "x1*x4 + 2*x3*x4");
  CHECK(p.degree() == deg2(r, 1, 1));
  CHECK(p.to_string() == "x1*x4 + 2*x3*x4");
  const HomogPoly q = p * testing::poly(r, "x2");
  CHECK(q.degree() == deg2(r, 2, 2));
  CHECK(q.coefficient({0, 1, 1, 1}) == 2);
  CHECK_THROWS_AS(p + testing::poly(r, "x4"), Error);
  CHECK_THROWS_AS(testing::poly(r, "x1 + x2"), Error);
  CHECK((p - p).is_zero());
  CHECK(testing::poly(r, "-1/2*x1^2").coefficient({2, 0, 0, 0}) == Rational(-1, 2));
}

TEST_CASE("induced grading map and substitution") {
  const GradedRing s = build_cox_ring(fans::projective_space(2), 'y');
  const GradedRing r = build_cox_ring(fans::hirzebruch(1));
  const std::vector<Exponent> images{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}};
  const GradingMap phi = induced_grading_map(s, r, images);
  CHECK(phi.apply(s.class_group.make({1})) == deg2(r, 1, 1));
  CHECK(phi.apply(s.class_group.make({-3})) == deg2(r, -3, -3));

  const HomogPoly f = testing::poly(s, "y1*y2 - y3^2");
  const HomogPoly g = substitute(f, s, r, images, phi);
  CHECK(g.to_string() == "x1*x2*x4 - x3^2*x4^2");

  const std::vector<Exponent> bad{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}};
  CHECK_THROWS_AS(induced_grading_map(s, r, bad), Error);
}

TEST_CASE("substitution is multiplicative on random polynomials") {
  std::mt19937 rng(42);
  const auto lift = testing::blowup_lift();
  const GradedRing& s = lift.dst_ring;
  std::uniform_int_distribution<int> degree(0, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const HomogPoly p = testing::random_poly(rng, s, s.class_group.make({degree(rng)}));
    const HomogPoly q = testing::random_poly(rng, s, s.class_group.make({degree(rng)}));
    const auto sub = [&](const HomogPoly& h) { return substitute(h, s, lift.src_ring, lift.var_images, lift.phi); };
    CHECK(sub(p * q) == sub(p) * sub(q));
    if (p.degree() == q.degree()) CHECK(sub(p + q) == sub(p) + sub(q));
  }
}
