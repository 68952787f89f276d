#ifndef COXCALC_MORPHISM_HPP
#define COXCALC_MORPHISM_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "coxcalc/cox_ring.hpp"
#include "coxcalc/fan.hpp"

namespace coxcalc {

// Monomial ring map S = Cox(dst) -> R = Cox(src) describing a toric morphism.
struct MorphismLift {
  Fan src_fan;
  Fan dst_fan;
  GradedRing src_ring;
  GradedRing dst_ring;
  LatticeMap lattice_map;
  std::vector<Exponent> var_images;  // one exponent vector over src vars per dst var
  GradingMap phi;                    // Cl(dst) -> Cl(src)
  std::vector<std::size_t> chosen_cones;  // per src ray, the dst cone its image was read in
};

// Local equation data of the divisor D_j on the chart of cone tau:
// <m, w_i> = -delta_ij for every ray w_i of tau.
struct CartierData {
  std::size_t cone = 0;
  std::size_t ray = 0;
  std::vector<Rational> m;
};

// Throws TargetNotSmooth when tau is not a smooth cone.
std::vector<CartierData> cartier_data(const Fan& dst, std::size_t cone);

// Throws TargetNotSmooth, IncompatibleFans, NegativeExponent.
MorphismLift lift_morphism(const Fan& src, const Fan& dst, const LatticeMap& map);

using LaurentExponent = std::vector<std::int64_t>;

// Exponents <m, u_rho> of the torus character chi^m in Cox coordinates.
LaurentExponent chart_monomial(const Fan& fan, const std::vector<std::int64_t>& m);
LaurentExponent pull_back_laurent(const MorphismLift& lift, const LaurentExponent& over_dst);
std::string laurent_to_string(const LaurentExponent& e, char var);

// Pairs (src cone, dst cone) with L(sigma) inside tau.
std::vector<std::pair<std::size_t, std::size_t>> chart_pairs(const MorphismLift& lift);

// Checks the grading identity and, on each chart pair (all of them when
// `charts` is empty), that pulling back the chart coordinates agrees with
// the lattice map. Throws ChartMismatch.
bool verify_lift(const MorphismLift& lift, const std::vector<std::pair<std::size_t, std::size_t>>& charts = {});

}  // namespace coxcalc

#endif  // COXCALC_MORPHISM_HPP
