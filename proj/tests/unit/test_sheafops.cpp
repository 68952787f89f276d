#include <doctest.h>

#include <algorithm>

#include "coxcalc/error.hpp"
#include "coxcalc/sheaf_ops.hpp"
#include "support.hpp"

using namespace coxcalc;
using testing::deg2;

namespace {

ErrorCode error_of(PushforwardSlice& s) {
  try {
    identify_line_bundle_sum(s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("identification succeeded");
  return ErrorCode::UsageError;
}

std::size_t binom2(std::int64_t top) { return top < 0 ? 0 : static_cast<std::size_t>((top + 1) * (top + 2) / 2); }

}  // namespace

TEST_CASE("pullback of free modules") {
  const MorphismLift l = testing::blowup_lift();
  const GradedRing& s = l.dst_ring;
  const GradedModule n = free_module(s, {s.class_group.make({-3}), s.class_group.make({1}), s.class_group.make({0})});
  const GradedModule m = pullback_module(n, l);
  CHECK(m.is_free());
  CHECK(m.gen_shifts == std::vector<DegreeVector>{deg2(l.src_ring, -3, -3), deg2(l.src_ring, 1, 1), deg2(l.src_ring, 0, 0)});
  CHECK_THROWS_AS(pullback_module(free_module(l.src_ring, {l.src_ring.zero_degree()}), l), Error);
}

TEST_CASE("pullback substitutes relations") {
  const MorphismLift l = testing::blowup_lift();
  const GradedRing& s = l.dst_ring;
  const GradedModule n = presented_module(s, {s.zero_degree()}, {s.class_group.make({-1})},
                                          PolyMatrix(1, 1, {testing::poly(s, "y1")}));
  const GradedModule m = pullback_module(n, l);
  CHECK(m.rel_shifts == std::vector<DegreeVector>{deg2(l.src_ring, -1, -1)});
  CHECK(m.relations(0, 0).to_string() == "x1*x4");
}

TEST_CASE("pushforward of line bundles along the blow-up") {
  const MorphismLift l = testing::blowup_lift();
  for (std::int64_t c : {0, -1, 1}) {
    const GradedModule m = free_module(l.src_ring, {deg2(l.src_ring, c, c)});
    PushforwardSlice slice = pushforward_slice(m, l, DegreeWindow{{{-2, 4}}});
    CHECK(slice.theorem_grade());
    for (const auto& [e, dim] : slice.dimensions()) {
      const std::int64_t n = e.free[0];
      CHECK(dim == testing::brute_force_monomials(l.src_ring, deg2(l.src_ring, n + c, n + c)).size());
      CHECK(dim == binom2(n + c));
    }
  }
}

TEST_CASE("the ring acts associatively on slices") {
  const MorphismLift l = testing::hirzebruch_projection(2);
  PushforwardSlice slice = pushforward_slice(testing::tangent_module(l.src_ring), l, DegreeWindow{{{-3, 3}}});
  CHECK_FALSE(slice.theorem_grade());
  const GradedRing& s = l.dst_ring;
  for (std::int64_t n = -3; n <= 2; ++n) {
    const DegreeVector e = s.class_group.make({n});
    const HomogPoly y1 = testing::poly(s, "y1"), y2 = testing::poly(s, "y2");
    const RatMatrix both = slice.multiplication(y1 * y2, e);
    CHECK(slice.multiplication(y2, e + y1.degree()) * slice.multiplication(y1, e) == both);
    CHECK(slice.multiplication(y1, e + y2.degree()) * slice.multiplication(y2, e) == both);
  }
}

TEST_CASE("line bundle sum dimensions") {
  CHECK(testing::dim_R_k0(3) == 4);
  CHECK(line_bundle_sum_dimension({-1}, 2, 3) == 6);
  CHECK(line_bundle_sum_dimension({-2, 1, 1, 2}, 1, -1) == 0 + 1 + 1 + 2);
  CHECK(line_bundle_sum_dimension({}, 1, 5) == 0);
}

TEST_CASE("identify the ideal sheaf of the exceptional curve") {
  const MorphismLift l = testing::blowup_lift();
  PushforwardSlice slice = pushforward_slice(free_module(l.src_ring, {deg2(l.src_ring, -1, -1)}), l, DegreeWindow{{{0, 4}}});
  const LineBundleSum sum = identify_line_bundle_sum(slice);
  CHECK(sum.shifts == std::vector<std::int64_t>{-1});
  CHECK(sum.status == SplittingStatus::Exact);
}

TEST_CASE("identify the pushforward of the tangent module") {
  for (std::int64_t a = 1; a <= 3; ++a) {
    const MorphismLift l = testing::hirzebruch_projection(a);
    PushforwardSlice slice = pushforward_slice(testing::tangent_module(l.src_ring), l, DegreeWindow{{{-a - 2, a + 4}}});
    const LineBundleSum sum = identify_line_bundle_sum(slice);
    CHECK(sum.shifts == std::vector<std::int64_t>{-a, 1, 1, a});
    CHECK(sum.status == SplittingStatus::Exact);
  }
}

TEST_CASE("for the product of lines the slice matches a sum of line bundles only numerically") {
  const MorphismLift l = testing::hirzebruch_projection(0);
  PushforwardSlice slice = pushforward_slice(testing::tangent_module(l.src_ring), l, DegreeWindow{{{-2, 4}}});
  const LineBundleSum sum = identify_line_bundle_sum(slice);
  CHECK(sum.shifts == std::vector<std::int64_t>{0, 0, 1, 1});
  CHECK(sum.status == SplittingStatus::ConsistentOnWindow);
  // Two generators in degree -1 and three in degree 0, against the four
  // summands a free module would need.
  CHECK(sum.generators.at(l.dst_ring.class_group.make({-1})) == 2);
  CHECK(sum.generators.at(l.dst_ring.class_group.make({0})) == 3);
  CHECK(compare_with_line_bundle_sum(slice, {0, 1, 1, 0}).empty());
}

TEST_CASE("identification needs a suitable window and target") {
  const MorphismLift l = testing::hirzebruch_projection(2);
  const GradedModule p = testing::tangent_module(l.src_ring);
  PushforwardSlice starts_inside = pushforward_slice(p, l, DegreeWindow{{{-1, 6}}});
  CHECK(error_of(starts_inside) == ErrorCode::WindowInsufficient);
  // The S(-2) summand appears in degree 2, too close to the top.
  PushforwardSlice too_short = pushforward_slice(p, l, DegreeWindow{{{-4, 3}}});
  CHECK(error_of(too_short) == ErrorCode::WindowInsufficient);

  const Fan f1 = fans::hirzebruch(1);
  const MorphismLift id = lift_morphism(f1, f1, LatticeMap::identity(2));
  PushforwardSlice not_projective = pushforward_slice(free_module(id.src_ring, {id.src_ring.zero_degree()}), id,
                                                      DegreeWindow{{{0, 3}, {0, 3}}});
  CHECK(error_of(not_projective) == ErrorCode::NotProjectiveSpaceTarget);
}

TEST_CASE("identification refuses slices that are not free") {
  // k[y1,y2]/(y1) pushed forward along the identity of the line.
  const Fan p1 = fans::projective_space(1);
  const MorphismLift id = lift_morphism(p1, p1, LatticeMap::identity(1));
  const GradedRing& r = id.src_ring;
  const GradedModule m = presented_module(r, {r.zero_degree()}, {r.class_group.make({-1})},
                                          PolyMatrix(1, 1, {testing::poly(r, "x1")}));
  PushforwardSlice slice = pushforward_slice(m, id, DegreeWindow{{{-1, 4}}});
  CHECK(error_of(slice) == ErrorCode::NotFreeOnWindow);
}

TEST_CASE("the dual slice for the product of lines") {
  const MorphismLift l = testing::hirzebruch_projection(0);
  auto kernel = std::make_shared<KernelPieces>(testing::qdual_map(l.src_ring, 0));
  PushforwardSlice slice = pushforward_slice(kernel, l, DegreeWindow{{{-2, 4}}});
  CHECK(slice.dimension(l.dst_ring.class_group.make({-2})) == 1);
  const auto mismatches = compare_with_line_bundle_sum(slice, {0, 1, 1, 0});
  REQUIRE_FALSE(mismatches.empty());
  CHECK(mismatches.front().degree == l.dst_ring.class_group.make({-2}));
  CHECK(mismatches.front().expected == 0);
  CHECK(mismatches.front().actual == 1);
  // Its dimensions are those of S(2) + S^3.
  CHECK(compare_with_line_bundle_sum(slice, {2, 0, 0, 0}).empty());

  // The kernel itself is R((2,0)) + R((0,2)).
  const GradedRing& r = l.src_ring;
  const GradedModule free = free_module(r, {deg2(r, 2, 0), deg2(r, 0, 2)});
  for (const auto& d : DegreeWindow{{{-3, 3}, {-3, 3}}}.degrees(r.class_group))
    CHECK(kernel->dimension(d) == piece(free, d).dimension);
}
