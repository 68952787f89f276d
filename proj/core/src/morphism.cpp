#include "coxcalc/morphism.hpp"

#include <algorithm>
#include <sstream>

#include "coxcalc/error.hpp"

namespace coxcalc {

namespace {

RatMatrix cone_ray_rows(const Fan& fan, std::size_t cone) {
  const auto& idx = fan.max_cones[cone];
  RatMatrix w(idx.size(), fan.rank);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < fan.rank; ++c) w(r, c) = Rational(static_cast<long>(fan.rays[idx[r]][c]));
  return w;
}

bool cone_is_smooth(const Fan& fan, std::size_t cone) {
  const auto& idx = fan.max_cones[cone];
  IntMatrix w(idx.size(), fan.rank);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < fan.rank; ++c) w(r, c) = static_cast<long>(fan.rays[idx[r]][c]);
  if (rank(w) != idx.size()) return false;
  for (const auto& d : smith_normal_form(w).diagonal)
    if (d != 1) return false;
  return true;
}

Rational pairing(const std::vector<Rational>& m, const LatticeVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += m[i] * static_cast<long>(v[i]);
  return s;
}

std::string cone_label(const Fan& fan, std::size_t cone) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < fan.max_cones[cone].size(); ++i) os << (i ? "," : "") << fan.max_cones[cone][i] + 1;
  os << '}';
  return os.str();
}

}  // namespace

std::vector<CartierData> cartier_data(const Fan& dst, std::size_t cone) {
  if (!cone_is_smooth(dst, cone))
    throw Error(ErrorCode::TargetNotSmooth, "cone " + cone_label(dst, cone) + " of the target is not smooth");
  const RatMatrix w = cone_ray_rows(dst, cone);
  std::vector<CartierData> out;
  for (std::size_t pos = 0; pos < w.rows(); ++pos) {
    std::vector<Rational> rhs(w.rows(), Rational(0));
    rhs[pos] = -1;
    auto m = solve(w, rhs);
    assert(m);
    out.push_back(CartierData{cone, dst.max_cones[cone][pos], std::move(*m)});
  }
  return out;
}

MorphismLift lift_morphism(const Fan& src, const Fan& dst, const LatticeMap& map) {
  validate_fan(src);
  validate_fan(dst);
  bool smooth = false;
  try {
    smooth = is_smooth(dst);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSimplicial) throw;
  }
  if (!smooth) throw Error(ErrorCode::TargetNotSmooth, "target fan is not smooth, so the morphism has no Cox lift");
  if (!check_compatible(src, dst, map))
    throw Error(ErrorCode::IncompatibleFans, "some cone of the source does not map into a cone of the target");

  MorphismLift lift;
  lift.src_fan = src;
  lift.dst_fan = dst;
  lift.src_ring = build_cox_ring(src, 'x');
  lift.dst_ring = build_cox_ring(dst, 'y');
  lift.lattice_map = map;
  lift.var_images.assign(dst.rays.size(), Exponent(src.rays.size(), 0));

  std::vector<std::vector<CartierData>> cartier(dst.max_cones.size());
  for (std::size_t rho = 0; rho < src.rays.size(); ++rho) {
    const LatticeVector v = map.apply(src.rays[rho]);
    const auto tau = find_containing_cone(dst, v);
    if (!tau) throw Error(ErrorCode::IncompatibleFans, "image of ray " + std::to_string(rho + 1) + " lies in no cone");
    lift.chosen_cones.push_back(*tau);
    if (cartier[*tau].empty()) cartier[*tau] = cartier_data(dst, *tau);

    LatticeVector rebuilt(dst.rank, 0);
    for (const auto& cd : cartier[*tau]) {
      const Rational a = -pairing(cd.m, v);
      if (a < 0 || a.get_den() != 1)
        throw Error(ErrorCode::NegativeExponent, "exponent of x" + std::to_string(rho + 1) + " in y" +
                                                     std::to_string(cd.ray + 1) + " would be " + to_string(a));
      const auto k = static_cast<std::uint32_t>(a.get_num().get_ui());
      lift.var_images[cd.ray][rho] = k;
      for (std::size_t c = 0; c < dst.rank; ++c) rebuilt[c] += static_cast<std::int64_t>(k) * dst.rays[cd.ray][c];
    }
    if (rebuilt != v)
      throw Error(ErrorCode::NegativeExponent, "local equations do not reproduce the image of ray " +
                                                   std::to_string(rho + 1));
  }
  lift.phi = induced_grading_map(lift.dst_ring, lift.src_ring, lift.var_images);
  return lift;
}

LaurentExponent chart_monomial(const Fan& fan, const std::vector<std::int64_t>& m) {
  LaurentExponent out(fan.rays.size(), 0);
  for (std::size_t r = 0; r < fan.rays.size(); ++r)
    for (std::size_t c = 0; c < fan.rank; ++c) out[r] += m[c] * fan.rays[r][c];
  return out;
}

LaurentExponent pull_back_laurent(const MorphismLift& lift, const LaurentExponent& over_dst) {
  LaurentExponent out(lift.src_ring.num_vars, 0);
  for (std::size_t j = 0; j < over_dst.size(); ++j)
    for (std::size_t r = 0; r < out.size(); ++r)
      out[r] += over_dst[j] * static_cast<std::int64_t>(lift.var_images[j][r]);
  return out;
}

std::string laurent_to_string(const LaurentExponent& e, char var) {
  Exponent num(e.size(), 0), den(e.size(), 0);
  bool has_den = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= 0) {
      num[i] = static_cast<std::uint32_t>(e[i]);
    } else {
      den[i] = static_cast<std::uint32_t>(-e[i]);
      has_den = true;
    }
  }
  std::string s = monomial_to_string(num, var);
  if (has_den) s += "/" + monomial_to_string(den, var);
  return s;
}

std::vector<std::pair<std::size_t, std::size_t>> chart_pairs(const MorphismLift& lift) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t t = 0; t < lift.dst_fan.max_cones.size(); ++t) {
    std::vector<LatticeVector> gens;
    for (std::size_t idx : lift.dst_fan.max_cones[t]) gens.push_back(lift.dst_fan.rays[idx]);
    const ConeDescription tau = describe_cone(gens, lift.dst_fan.rank);
    for (std::size_t s = 0; s < lift.src_fan.max_cones.size(); ++s) {
      bool inside = true;
      for (std::size_t idx : lift.src_fan.max_cones[s])
        inside = inside && cone_contains(tau, lift.lattice_map.apply(lift.src_fan.rays[idx]));
      if (inside) out.emplace_back(s, t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool verify_lift(const MorphismLift& lift, const std::vector<std::pair<std::size_t, std::size_t>>& charts) {
  for (std::size_t j = 0; j < lift.var_images.size(); ++j) {
    const DegreeVector have = monomial_degree(lift.src_ring, lift.var_images[j]);
    const DegreeVector want = lift.phi.apply(lift.dst_ring.var_degrees[j]);
    if (have != want)
      throw Error(ErrorCode::ChartMismatch, "y" + std::to_string(j + 1) + " maps to " +
                                                monomial_to_string(lift.var_images[j], 'x') + " of degree " +
                                                to_string(have) + ", but phi gives " + to_string(want));
  }

  const std::size_t n_dst = lift.dst_fan.rank;
  const auto pairs = charts.empty() ? chart_pairs(lift) : charts;
  const IntMatrix lt = lift.lattice_map.matrix.transpose();
  for (const auto& [s, t] : pairs) {
    std::vector<std::vector<std::int64_t>> tests;
    std::vector<bool> in_dual_cone;
    for (std::size_t k = 0; k < n_dst; ++k) {
      std::vector<std::int64_t> e(n_dst, 0);
      e[k] = 1;
      tests.push_back(e);
      in_dual_cone.push_back(false);
    }
    if (lift.dst_fan.max_cones[t].size() == n_dst) {
      for (const auto& cd : cartier_data(lift.dst_fan, t)) {
        std::vector<std::int64_t> m;
        for (const auto& q : cd.m) m.push_back(Integer(-q).get_si());
        tests.push_back(std::move(m));
        in_dual_cone.push_back(true);
      }
    }
    for (std::size_t q = 0; q < tests.size(); ++q) {
      const auto& m = tests[q];
      std::vector<std::int64_t> ltm(lift.src_fan.rank, 0);
      for (std::size_t r = 0; r < lift.src_fan.rank; ++r)
        for (std::size_t c = 0; c < n_dst; ++c) ltm[r] += lt(r, c).get_si() * m[c];
      const LaurentExponent lhs = pull_back_laurent(lift, chart_monomial(lift.dst_fan, m));
      const LaurentExponent rhs = chart_monomial(lift.src_fan, ltm);
      const std::string where = "chart (" + cone_label(lift.src_fan, s) + ", " + cone_label(lift.dst_fan, t) + ")";
      if (lhs != rhs)
        throw Error(ErrorCode::ChartMismatch, where + ": " + laurent_to_string(chart_monomial(lift.dst_fan, m), 'y') +
                                                  " pulls back to " + laurent_to_string(lhs, 'x') + ", expected " +
                                                  laurent_to_string(rhs, 'x'));
      if (in_dual_cone[q])
        for (std::size_t idx : lift.src_fan.max_cones[s])
          if (rhs[idx] < 0)
            throw Error(ErrorCode::ChartMismatch,
                        where + ": coordinate " + laurent_to_string(rhs, 'x') + " is not regular on the source chart");
    }
  }
  return true;
}

}  // namespace coxcalc
