#ifndef COXCALC_GRADED_MODULE_HPP
#define COXCALC_GRADED_MODULE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "coxcalc/cox_ring.hpp"

namespace coxcalc {

// Dense matrix of homogeneous polynomials. Zero entries still carry the
// degree the position requires.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<HomogPoly> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const HomogPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  HomogPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<HomogPoly> entries_;
};

// coker( ⊕_j R(rel_shifts[j]) --relations--> ⊕_i R(gen_shifts[i]) ).
// R(s)_d = R_{d+s}, so generator i sits in degree -gen_shifts[i] and entry
// (i,j) of the relation matrix has degree gen_shifts[i] - rel_shifts[j].
struct GradedModule {
  GradedRing ring;
  std::vector<DegreeVector> gen_shifts;
  std::vector<DegreeVector> rel_shifts;
  PolyMatrix relations;

  std::size_t num_generators() const noexcept { return gen_shifts.size(); }
  std::size_t num_relations() const noexcept { return rel_shifts.size(); }
  bool is_free() const noexcept { return rel_shifts.empty(); }
};

GradedModule free_module(const GradedRing& ring, std::vector<DegreeVector> shifts);

// Checks shapes and entry degrees; throws NotHomogeneous.
GradedModule presented_module(const GradedRing& ring, std::vector<DegreeVector> gen_shifts,
                              std::vector<DegreeVector> rel_shifts, PolyMatrix relations);

// A homomorphism source -> target of degree `offset`: entry (i,j) has degree
// target.gen_shifts[i] - source.gen_shifts[j] + offset.
struct GradedMap {
  GradedModule source;
  GradedModule target;
  PolyMatrix matrix;
  DegreeVector offset;
};

// Throws DegreeInconsistentMap.
GradedMap graded_map(GradedModule source, GradedModule target, PolyMatrix matrix,
                     std::optional<DegreeVector> offset = std::nullopt);

// Inclusive box of free-part degrees; torsion parts are enumerated fully.
struct DegreeWindow {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;

  std::vector<DegreeVector> degrees(const ClassGroup& group) const;
  bool contains(const DegreeVector& d) const;
};

std::string to_string(const DegreeWindow& w);

using AmbientIndex = std::pair<std::size_t, Exponent>;  // (generator, monomial)

struct DegreePiece {
  DegreeVector degree;
  std::size_t dimension = 0;
  std::vector<AmbientIndex> ambient;
  std::vector<std::vector<Rational>> basis;  // vectors over `ambient`
};

// One degree of a presented module: the ambient free piece, the row-reduced
// image of the relations, and the quotient basis (the non-pivot coordinates).
class PresentedPiece {
 public:
  PresentedPiece(const GradedModule& m, const DegreeVector& d);

  std::size_t dimension() const noexcept { return free_coords_.size(); }
  std::size_t ambient_size() const noexcept { return ambient_.size(); }
  const std::vector<AmbientIndex>& ambient() const noexcept { return ambient_; }
  std::optional<std::size_t> ambient_position(std::size_t gen, const Exponent& mono) const;

  // Quotient coordinates of an ambient vector.
  std::vector<Rational> reduce(const std::vector<Rational>& ambient_vector) const;
  // Ambient index of the k-th quotient basis vector.
  const AmbientIndex& basis_element(std::size_t k) const { return ambient_[free_coords_[k]]; }
  std::size_t basis_position(std::size_t k) const { return free_coords_[k]; }

  DegreePiece describe() const;

 private:
  DegreeVector degree_;
  std::vector<AmbientIndex> ambient_;
  std::vector<std::map<Exponent, std::size_t>> index_;
  RatMatrix relation_rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_coords_;
};

// Anything with finite graded pieces and a ring acting on them.
class DegreewiseModule {
 public:
  virtual ~DegreewiseModule() = default;
  virtual const GradedRing& acting_ring() const = 0;
  virtual std::size_t dimension(const DegreeVector& d) = 0;
  // Matrix of multiplication by p from degree d to d + deg p, in the piece bases.
  virtual RatMatrix multiplication(const HomogPoly& p, const DegreeVector& d) = 0;

  RatMatrix action(std::size_t var, const DegreeVector& d);
};

// Memoised pieces of a presented module. Not shared between threads.
class ModulePieces : public DegreewiseModule {
 public:
  explicit ModulePieces(GradedModule m) : module_(std::move(m)) {}

  const GradedRing& acting_ring() const override { return module_.ring; }
  std::size_t dimension(const DegreeVector& d) override { return at(d).dimension(); }
  RatMatrix multiplication(const HomogPoly& p, const DegreeVector& d) override;

  const GradedModule& module() const noexcept { return module_; }
  const PresentedPiece& at(const DegreeVector& d);

 private:
  GradedModule module_;
  std::map<DegreeVector, std::unique_ptr<PresentedPiece>> cache_;
};

// Degreewise kernel of a map; pieces are nullspaces in source coordinates.
class KernelPieces : public DegreewiseModule {
 public:
  explicit KernelPieces(GradedMap f);

  const GradedRing& acting_ring() const override { return map_.source.ring; }
  std::size_t dimension(const DegreeVector& d) override { return basis(d).cols(); }
  RatMatrix multiplication(const HomogPoly& p, const DegreeVector& d) override;

  // Columns span the kernel, written in the source piece's quotient basis.
  const RatMatrix& basis(const DegreeVector& d);

 private:
  GradedMap map_;
  ModulePieces source_;
  ModulePieces target_;
  std::map<DegreeVector, RatMatrix> cache_;
};

DegreePiece piece(const GradedModule& m, const DegreeVector& d);

// Degree -> dimension over the window. `threads` > 1 splits the degrees
// across worker threads.
std::map<DegreeVector, std::size_t> hilbert_table(const GradedModule& m, const DegreeWindow& w,
                                                  unsigned threads = 1);

// Matrix of f from source_d to target_{d+offset}, in quotient bases.
RatMatrix map_matrix(const GradedMap& f, const DegreeVector& d);
RatMatrix map_matrix(const GradedMap& f, const DegreeVector& d, ModulePieces& source, ModulePieces& target);

DegreePiece kernel_piece(const GradedMap& f, const DegreeVector& d);
std::size_t image_rank(const GradedMap& f, const DegreeVector& d);

GradedModule cokernel_module(const GradedMap& f);

RatMatrix mult_map(const GradedModule& m, const HomogPoly& p, const DegreeVector& d);

// Degree -> number of minimal generators needed in that degree (zero
// entries omitted).
std::map<DegreeVector, std::size_t> minimal_generator_degrees(DegreewiseModule& m, const DegreeWindow& w);
std::map<DegreeVector, std::size_t> minimal_generator_degrees(const GradedModule& m, const DegreeWindow& w);

enum class SheafZeroStatus { Zero, NonZero };

struct SheafZeroReport {
  SheafZeroStatus status = SheafZeroStatus::Zero;
  // Per irrelevant generator: least k with g^k acting as zero on the
  // window, or nullopt if none up to the cap.
  std::vector<std::optional<std::size_t>> nilpotency;
  std::optional<std::size_t> witness_generator;
  std::optional<DegreeVector> witness_degree;
};

// Zero means every irrelevant generator acts nilpotently on the module.
// Throws WindowTooSmall unless every presentation generator lies in the
// window, since only then does vanishing on the window certify vanishing.
SheafZeroReport sheaf_is_zero(const GradedModule& m, const DegreeWindow& w, std::size_t power_cap = 8);

// alpha: R^f -> ⊕ R(deg x_i) and theta: ⊕ R(-deg x_i) -> R^f with entries
// deg(x_i)_k * x_i. Throw TorsionGrading when Cl has torsion.
GradedMap euler_tangent_map(const GradedRing& ring);
GradedMap euler_cotangent_map(const GradedRing& ring);

}  // namespace coxcalc

#endif  // COXCALC_GRADED_MODULE_HPP
