#include <doctest.h>

#include "coxcalc/error.hpp"
#include "coxcalc/morphism.hpp"
#include "support.hpp"

using namespace coxcalc;

namespace {

std::vector<std::string> images(const MorphismLift& l) {
  std::vector<std::string> out;
  for (const auto& e : l.var_images) out.push_back(monomial_to_string(e, 'x'));
  return out;
}

ErrorCode lift_error(const Fan& src, const Fan& dst, const LatticeMap& map) {
  try {
    lift_morphism(src, dst, map);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("lift succeeded");
  return ErrorCode::UsageError;
}

}  // namespace

TEST_CASE("blow-up of the plane") {
  const MorphismLift l = testing::blowup_lift();
  CHECK(images(l) == std::vector<std::string>{"x1*x4", "x2", "x3*x4"});
  for (std::int64_t a = -3; a <= 3; ++a)
    CHECK(l.phi.apply(l.dst_ring.class_group.make({a})) == testing::deg2(l.src_ring, a, a));
  CHECK(verify_lift(l));
}

TEST_CASE("Hirzebruch projections") {
  for (std::int64_t a = 0; a <= 3; ++a) {
    const MorphismLift l = testing::hirzebruch_projection(a);
    CHECK(images(l) == std::vector<std::string>{"x1", "x3"});
    CHECK(l.phi.apply(l.dst_ring.class_group.make({5})) == testing::deg2(l.src_ring, 5, 0));
    CHECK(verify_lift(l));
  }
}

TEST_CASE("identity and automorphisms lift to permutations of variables") {
  const Fan p2 = fans::projective_space(2);
  const MorphismLift id = lift_morphism(p2, p2, LatticeMap::identity(2));
  CHECK(images(id) == std::vector<std::string>{"x1", "x2", "x3"});
  // (u,v) -> (v,u) swaps the first two rays.
  const MorphismLift swap = lift_morphism(p2, p2, LatticeMap{2, 2, IntMatrix{{0, 1}, {1, 0}}});
  CHECK(images(swap) == std::vector<std::string>{"x2", "x1", "x3"});
  CHECK(verify_lift(swap));
}

TEST_CASE("a toric embedding of the plane into projective space") {
  const Fan a2 = fans::affine_plane();
  const MorphismLift l = lift_morphism(a2, fans::projective_space(2), LatticeMap::identity(2));
  CHECK(images(l) == std::vector<std::string>{"x1", "x2", "1"});
  CHECK(verify_lift(l));
}

TEST_CASE("multiplication by two on the line") {
  const Fan p1 = fans::projective_space(1);
  const MorphismLift l = lift_morphism(p1, p1, LatticeMap{1, 1, IntMatrix{{2}}});
  CHECK(images(l) == std::vector<std::string>{"x1^2", "x2^2"});
  CHECK(l.phi.apply(l.dst_ring.class_group.make({1})) == l.src_ring.class_group.make({2}));
  CHECK(verify_lift(l));
}

TEST_CASE("lifting rejects singular targets and incompatible maps") {
  const Fan quadric{2, {{1, 0}, {1, 2}}, {{0, 1}}};
  CHECK(lift_error(fans::affine_plane(), quadric, LatticeMap{2, 2, IntMatrix{{1, 1}, {0, 1}}}) ==
        ErrorCode::TargetNotSmooth);
  CHECK_THROWS_AS(cartier_data(quadric, 0), Error);
  CHECK(lift_error(fans::hirzebruch(1), fans::projective_space(1), LatticeMap{2, 1, IntMatrix{{0, 1}}}) ==
        ErrorCode::IncompatibleFans);
}

TEST_CASE("cartier data solves the local equations") {
  const Fan p2 = fans::projective_space(2);
  for (std::size_t c = 0; c < p2.max_cones.size(); ++c)
    for (const auto& cd : cartier_data(p2, c))
      for (std::size_t idx : p2.max_cones[c]) {
        Rational s = 0;
        for (std::size_t k = 0; k < 2; ++k) s += cd.m[k] * static_cast<long>(p2.rays[idx][k]);
        CHECK(s == (idx == cd.ray ? -1 : 0));
      }
}

TEST_CASE("chart check catches a tampered lift") {
  MorphismLift l = testing::blowup_lift();
  l.var_images[0] = {1, 0, 0, 0};
  CHECK_THROWS_AS(verify_lift(l), Error);

  // Same degrees, wrong monomial: x1*x4 and x3*x4 swapped.
  MorphismLift s = testing::blowup_lift();
  std::swap(s.var_images[0], s.var_images[2]);
  try {
    verify_lift(s);
    FAIL("tampered lift passed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ChartMismatch);
  }
}

TEST_CASE("chart pairs of the blow-up") {
  const MorphismLift l = testing::blowup_lift();
  const auto pairs = chart_pairs(l);
  // Every cone of the blow-up lands in exactly one cone of the plane.
  CHECK(pairs.size() == 4);
  CHECK(l.chosen_cones.size() == 4);
}
