#include "coxcalc/sheaf_ops.hpp"

#include <algorithm>

#include "coxcalc/error.hpp"

namespace coxcalc {

GradedModule line_bundle_module(const GradedRing& ring, const DegreeVector& d) { return free_module(ring, {d}); }

GradedModule pullback_module(const GradedModule& n, const MorphismLift& lift) {
  if (!(n.ring == lift.dst_ring))
    throw Error(ErrorCode::RingMismatch, "module is not presented over the Cox ring of the morphism's target");
  std::vector<DegreeVector> gens, rels;
  for (const auto& s : n.gen_shifts) gens.push_back(lift.phi.apply(s));
  for (const auto& s : n.rel_shifts) rels.push_back(lift.phi.apply(s));
  std::vector<HomogPoly> entries;
  for (std::size_t i = 0; i < n.num_generators(); ++i)
    for (std::size_t j = 0; j < n.num_relations(); ++j)
      entries.push_back(substitute(n.relations(i, j), lift.dst_ring, lift.src_ring, lift.var_images, lift.phi));
  return presented_module(lift.src_ring, std::move(gens), std::move(rels),
                          PolyMatrix(n.num_generators(), n.num_relations(), std::move(entries)));
}

PushforwardSlice::PushforwardSlice(std::shared_ptr<DegreewiseModule> source, MorphismLift lift, DegreeWindow window,
                                   bool theorem_grade)
    : source_(std::move(source)), lift_(std::move(lift)), window_(std::move(window)), theorem_grade_(theorem_grade) {}

std::size_t PushforwardSlice::dimension(const DegreeVector& e) { return source_->dimension(lift_.phi.apply(e)); }

RatMatrix PushforwardSlice::multiplication(const HomogPoly& p, const DegreeVector& e) {
  const HomogPoly image = substitute(p, lift_.dst_ring, lift_.src_ring, lift_.var_images, lift_.phi);
  return source_->multiplication(image, lift_.phi.apply(e));
}

std::map<DegreeVector, std::size_t> PushforwardSlice::dimensions() {
  std::map<DegreeVector, std::size_t> out;
  for (const auto& e : window_.degrees(lift_.dst_ring.class_group)) out.emplace(e, dimension(e));
  return out;
}

PushforwardSlice pushforward_slice(std::shared_ptr<DegreewiseModule> m, const MorphismLift& lift,
                                   const DegreeWindow& w, bool theorem_grade) {
  if (!(m->acting_ring() == lift.src_ring))
    throw Error(ErrorCode::RingMismatch, "module is not presented over the Cox ring of the morphism's source");
  if (!lift.src_ring.positivity)
    throw Error(ErrorCode::NoPositivityCertificate, "graded pieces of the source ring are not known to be finite");
  w.degrees(lift.dst_ring.class_group);  // shape check
  return PushforwardSlice(std::move(m), lift, w, theorem_grade);
}

PushforwardSlice pushforward_slice(const GradedModule& m, const MorphismLift& lift, const DegreeWindow& w,
                                   bool theorem_grade) {
  return pushforward_slice(std::make_shared<ModulePieces>(m), lift, w, theorem_grade || m.is_free());
}

std::size_t line_bundle_sum_dimension(const std::vector<std::int64_t>& shifts, std::size_t projective_dim,
                                      std::int64_t n) {
  std::size_t total = 0;
  for (auto k : shifts) {
    const std::int64_t top = n + k;
    if (top < 0) continue;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(top) + projective_dim, projective_dim);
    total += b.get_ui();
  }
  return total;
}

namespace {

void require_projective_target(const GradedRing& s) {
  const bool ok = s.class_group.torsion_free() && s.class_group.free_rank() == 1 && s.num_vars >= 2 &&
                  std::all_of(s.var_degrees.begin(), s.var_degrees.end(),
                              [](const DegreeVector& d) { return d.free[0] == 1; });
  if (!ok) throw Error(ErrorCode::NotProjectiveSpaceTarget, "target Cox ring is not that of a projective space");
}

DegreeVector degree_of(const GradedRing& s, std::int64_t n) { return s.class_group.make({n}); }

}  // namespace

LineBundleSum identify_line_bundle_sum(PushforwardSlice& slice, std::size_t margin, bool verify_cover) {
  const GradedRing& s = slice.acting_ring();
  require_projective_target(s);
  const DegreeWindow& w = slice.window();
  const auto [lo, hi] = w.ranges.at(0);
  const auto top_guard = hi - static_cast<std::int64_t>(margin);
  if (top_guard < lo)
    throw Error(ErrorCode::WindowInsufficient, "window " + to_string(w) + " is shorter than the margin");
  if (slice.dimension(degree_of(s, lo)) != 0)
    throw Error(ErrorCode::WindowInsufficient, "the slice is already nonzero at the bottom of the window " +
                                                   to_string(w) + "; summands may start below it");

  // Peel summands off the Hilbert function from the bottom up.
  LineBundleSum out;
  out.verified_window = w;
  const std::size_t proj_dim = s.num_vars - 1;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const std::size_t have = line_bundle_sum_dimension(out.shifts, proj_dim, n);
    const std::size_t actual = slice.dimension(degree_of(s, n));
    if (actual < have)
      throw Error(ErrorCode::NotFreeOnWindow, "in degree " + std::to_string(n) + " the slice has dimension " +
                                                  std::to_string(actual) + ", less than the " + std::to_string(have) +
                                                  " forced by lower summands");
    if (actual > have && n > top_guard)
      throw Error(ErrorCode::WindowInsufficient, "new summand in degree " + std::to_string(n) + " is within " +
                                                     std::to_string(margin) + " of the top of the window " +
                                                     to_string(w));
    out.shifts.insert(out.shifts.end(), actual - have, -n);
  }
  std::sort(out.shifts.begin(), out.shifts.end());

  out.generators = minimal_generator_degrees(slice, w);
  for (const auto& [d, count] : out.generators)
    if (d.free[0] > top_guard)
      throw Error(ErrorCode::WindowInsufficient, "generator in degree " + to_string(d) + " is within " +
                                                     std::to_string(margin) + " of the top of the window " +
                                                     to_string(w));
  std::vector<std::int64_t> from_generators;
  for (const auto& [d, count] : out.generators) from_generators.insert(from_generators.end(), count, -d.free[0]);
  std::sort(from_generators.begin(), from_generators.end());
  if (!verify_cover || from_generators != out.shifts) return out;

  // Pick explicit generators: in each generator degree, extend the image of
  // the lower degrees by unit vectors. Then check they span every degree.
  std::vector<std::pair<DegreeVector, std::vector<Rational>>> chosen;
  for (const auto& [d, count] : out.generators) {
    const std::size_t dim = slice.dimension(d);
    RatMatrix span(dim, 0);
    for (std::size_t i = 0; i < s.num_vars; ++i) span = hstack(span, slice.action(i, d - s.var_degrees[i]));
    std::size_t r = rank(span);
    std::size_t added = 0;
    for (std::size_t k = 0; k < dim && added < count; ++k) {
      RatMatrix unit(dim, 1);
      unit(k, 0) = 1;
      RatMatrix grown = hstack(span, unit);
      if (rank(grown) > r) {
        span = std::move(grown);
        ++r;
        ++added;
        chosen.emplace_back(d, unit.col(0));
      }
    }
  }
  for (std::int64_t n = lo; n <= hi; ++n) {
    const DegreeVector target = degree_of(s, n);
    const std::size_t dim = slice.dimension(target);
    RatMatrix cover(dim, 0);
    for (const auto& [g, v] : chosen) {
      RatMatrix vec(v.size(), 1);
      for (std::size_t r = 0; r < v.size(); ++r) vec(r, 0) = v[r];
      for (const auto& mu : monomials_of_degree(s, target - g))
        cover = hstack(cover, slice.multiplication(monomial(s, mu), g) * vec);
    }
    if (rank(cover) != dim) return out;
  }
  out.status = SplittingStatus::Exact;
  return out;
}

std::vector<DimensionMismatch> compare_with_line_bundle_sum(PushforwardSlice& slice,
                                                            const std::vector<std::int64_t>& shifts) {
  const GradedRing& s = slice.acting_ring();
  require_projective_target(s);
  std::vector<DimensionMismatch> out;
  for (const auto& e : slice.window().degrees(s.class_group)) {
    const std::size_t expected = line_bundle_sum_dimension(shifts, s.num_vars - 1, e.free[0]);
    const std::size_t actual = slice.dimension(e);
    if (expected != actual) out.push_back(DimensionMismatch{e, expected, actual});
  }
  return out;
}

}  // namespace coxcalc
