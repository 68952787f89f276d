#ifndef COXCALC_SHEAF_OPS_HPP
#define COXCALC_SHEAF_OPS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "coxcalc/graded_module.hpp"
#include "coxcalc/morphism.hpp"

namespace coxcalc {

// R(d): the module of sections of the line bundle of class d.
GradedModule line_bundle_module(const GradedRing& ring, const DegreeVector& d);

// N ⊗_S R, graded by deg(n ⊗ r) = phi(deg n) + deg r. Throws RingMismatch.
GradedModule pullback_module(const GradedModule& n, const MorphismLift& lift);

// The S-module ⊕_E M_{phi(E)} with y_j acting as multiplication by its
// image monomial. Pieces are computed on demand, so the action is available
// beyond the window; only window degrees are reported.
class PushforwardSlice : public DegreewiseModule {
 public:
  PushforwardSlice(std::shared_ptr<DegreewiseModule> source, MorphismLift lift, DegreeWindow window,
                   bool theorem_grade);

  const GradedRing& acting_ring() const override { return lift_.dst_ring; }
  std::size_t dimension(const DegreeVector& e) override;
  RatMatrix multiplication(const HomogPoly& p, const DegreeVector& e) override;

  const DegreeWindow& window() const noexcept { return window_; }
  const MorphismLift& lift() const noexcept { return lift_; }
  // Set when the source is known to be the full module of sections of its
  // sheaf (free modules, or inputs vouched for by the caller), so the slice
  // really computes the pushforward.
  bool theorem_grade() const noexcept { return theorem_grade_; }

  std::map<DegreeVector, std::size_t> dimensions();

 private:
  std::shared_ptr<DegreewiseModule> source_;
  MorphismLift lift_;
  DegreeWindow window_;
  bool theorem_grade_;
};

// Throws RingMismatch, NoPositivityCertificate.
PushforwardSlice pushforward_slice(const GradedModule& m, const MorphismLift& lift, const DegreeWindow& w,
                                   bool theorem_grade = false);
PushforwardSlice pushforward_slice(std::shared_ptr<DegreewiseModule> m, const MorphismLift& lift,
                                   const DegreeWindow& w, bool theorem_grade = false);

enum class SplittingStatus { Exact, ConsistentOnWindow };

struct LineBundleSum {
  std::vector<std::int64_t> shifts;  // ⊕ S(k), sorted ascending
  DegreeWindow verified_window;
  SplittingStatus status = SplittingStatus::ConsistentOnWindow;
  std::map<DegreeVector, std::size_t> generators;  // minimal generators of the slice
};

// dim of (⊕ S(k_i))_n over the Cox ring of P^N.
std::size_t line_bundle_sum_dimension(const std::vector<std::int64_t>& shifts, std::size_t projective_dim,
                                      std::int64_t n);

// Splits the Hilbert function of a slice over the Cox ring of a projective
// space into line bundle summands, peeling from the bottom of the window.
// The status is Exact only when the minimal generators of the slice sit in
// exactly those degrees and (with `verify_cover`) the free cover they define
// is onto in every window degree, i.e. the slice is free on the window.
// Otherwise the sum only matches dimensions: ConsistentOnWindow.
// The bottom window degree must be a zero piece, and no summand or
// generator may start within `margin` degrees of the top.
// Throws NotProjectiveSpaceTarget, WindowInsufficient, NotFreeOnWindow.
LineBundleSum identify_line_bundle_sum(PushforwardSlice& slice, std::size_t margin = 2, bool verify_cover = true);

struct DimensionMismatch {
  DegreeVector degree;
  std::size_t expected = 0;
  std::size_t actual = 0;
};

// Window degrees where the slice and ⊕ S(k_i) have different dimensions.
std::vector<DimensionMismatch> compare_with_line_bundle_sum(PushforwardSlice& slice,
                                                            const std::vector<std::int64_t>& shifts);

}  // namespace coxcalc

#endif  // COXCALC_SHEAF_OPS_HPP
