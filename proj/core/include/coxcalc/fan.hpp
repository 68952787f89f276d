#ifndef COXCALC_FAN_HPP
#define COXCALC_FAN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "coxcalc/linalg.hpp"

namespace coxcalc {

using LatticeVector = std::vector<std::int64_t>;
using ConeIndices = std::vector<std::size_t>;

// A rational fan in N = Z^rank, stored as primitive ray generators plus the
// maximal cones as lists of ray indices.
struct Fan {
  std::size_t rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<ConeIndices> max_cones;

  friend bool operator==(const Fan&, const Fan&) = default;
};

// Z-linear map N_src -> N_dst acting on column vectors.
struct LatticeMap {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  IntMatrix matrix;  // target_rank x source_rank

  static LatticeMap identity(std::size_t rank);
  LatticeVector apply(const LatticeVector& v) const;
  LatticeMap compose_after(const LatticeMap& first) const;  // this o first

  friend bool operator==(const LatticeMap&, const LatticeMap&) = default;
};

// Half-space description of a cone: v lies in the cone iff every equation
// vanishes on v and every facet normal is non-negative on v.
struct ConeDescription {
  std::size_t dimension = 0;
  std::vector<std::vector<Integer>> equations;
  std::vector<std::vector<Integer>> facets;
  // For each facet, the positions (into the generator list) of rays on it.
  std::vector<std::vector<std::size_t>> facet_rays;
  bool pointed = true;
};

ConeDescription describe_cone(const std::vector<LatticeVector>& generators, std::size_t ambient_rank);
bool cone_contains(const ConeDescription& cone, const LatticeVector& v);
bool cone_contains(const ConeDescription& cone, const std::vector<Rational>& v);

struct FanValidation {
  std::size_t num_rays = 0;
  std::size_t num_max_cones = 0;
  bool simplicial = true;
};

// Throws Error{NonPrimitiveRay, DuplicateRay, DegenerateCone, OverlappingCones, InvalidFan}.
FanValidation validate_fan(const Fan& fan);

bool is_simplicial(const Fan& fan);

// Throws Error{NotSimplicial} when some maximal cone has more rays than its dimension.
bool is_smooth(const Fan& fan);

// Facet pairing plus a seeded sample of lattice points. Throws RankTooLarge above rank 3.
bool is_complete(const Fan& fan);

// Index of the first maximal cone containing v, scanning cones in
// lexicographic order of their sorted ray index lists.
std::optional<std::size_t> find_containing_cone(const Fan& fan, const LatticeVector& v);

// True iff every maximal cone of src maps into some maximal cone of dst.
// Throws ShapeMismatch when the matrix does not fit the ranks.
bool check_compatible(const Fan& src, const Fan& dst, const LatticeMap& map);

// Standard fans used throughout tests and examples.
namespace fans {
Fan projective_space(std::size_t n);
Fan hirzebruch(std::int64_t a);
Fan affine_plane();
}  // namespace fans

}  // namespace coxcalc

#endif  // COXCALC_FAN_HPP
