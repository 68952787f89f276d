#include "coxcalc/graded_module.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "coxcalc/error.hpp"

namespace coxcalc {

namespace {

bool is_zero_matrix(const RatMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const Rational& q) { return q == 0; });
}

void check_same_ring(const GradedRing& a, const GradedRing& b, const char* what) {
  if (!(a == b)) throw Error(ErrorCode::RingMismatch, std::string(what) + " live over different rings");
}

// Entry degree check shared by presentations and maps. Zero entries are
// re-tagged with the expected degree.
void normalise_entry(HomogPoly& entry, const DegreeVector& expected, std::size_t r, std::size_t c,
                     ErrorCode code) {
  if (entry.is_zero()) {
    entry = HomogPoly(entry.num_vars(), expected);
    return;
  }
  if (entry.degree() != expected)
    throw Error(code, "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") has degree " +
                          to_string(entry.degree()) + ", expected " + to_string(expected));
}

}  // namespace

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<HomogPoly> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  assert(entries_.size() == rows_ * cols_);
}

GradedModule free_module(const GradedRing& ring, std::vector<DegreeVector> shifts) {
  GradedModule m;
  m.ring = ring;
  m.relations = PolyMatrix(shifts.size(), 0, {});
  m.gen_shifts = std::move(shifts);
  return m;
}

GradedModule presented_module(const GradedRing& ring, std::vector<DegreeVector> gen_shifts,
                              std::vector<DegreeVector> rel_shifts, PolyMatrix relations) {
  if (relations.rows() != gen_shifts.size() || relations.cols() != rel_shifts.size())
    throw Error(ErrorCode::NotHomogeneous, "relation matrix is " + std::to_string(relations.rows()) + "x" +
                                               std::to_string(relations.cols()) + ", expected " +
                                               std::to_string(gen_shifts.size()) + "x" +
                                               std::to_string(rel_shifts.size()));
  for (const auto* list : {&gen_shifts, &rel_shifts})
    for (const auto& s : *list)
      if (!ring.class_group.compatible(s))
        throw Error(ErrorCode::DegreeMismatch, "shift " + to_string(s) + " is not in the class group");
  for (std::size_t i = 0; i < relations.rows(); ++i)
    for (std::size_t j = 0; j < relations.cols(); ++j)
      normalise_entry(relations(i, j), gen_shifts[i] - rel_shifts[j], i, j, ErrorCode::NotHomogeneous);
  GradedModule m;
  m.ring = ring;
  m.gen_shifts = std::move(gen_shifts);
  m.rel_shifts = std::move(rel_shifts);
  m.relations = std::move(relations);
  return m;
}

GradedMap graded_map(GradedModule source, GradedModule target, PolyMatrix matrix, std::optional<DegreeVector> offset) {
  check_same_ring(source.ring, target.ring, "source and target");
  if (matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators())
    throw Error(ErrorCode::DegreeInconsistentMap, "map matrix is " + std::to_string(matrix.rows()) + "x" +
                                                      std::to_string(matrix.cols()) + ", expected " +
                                                      std::to_string(target.num_generators()) + "x" +
                                                      std::to_string(source.num_generators()));
  DegreeVector off = offset ? *offset : source.ring.zero_degree();
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      normalise_entry(matrix(i, j), target.gen_shifts[i] - source.gen_shifts[j] + off, i, j,
                      ErrorCode::DegreeInconsistentMap);
  return GradedMap{std::move(source), std::move(target), std::move(matrix), std::move(off)};
}

std::vector<DegreeVector> DegreeWindow::degrees(const ClassGroup& group) const {
  if (ranges.size() != group.free_rank())
    throw Error(ErrorCode::DegreeMismatch, "window has " + std::to_string(ranges.size()) +
                                               " ranges but the class group has free rank " +
                                               std::to_string(group.free_rank()));
  std::vector<DegreeVector> out;
  for (const auto& [lo, hi] : ranges)
    if (lo > hi) return out;
  const auto& moduli = group.torsion();
  std::vector<std::int64_t> free(ranges.size());
  for (std::size_t k = 0; k < ranges.size(); ++k) free[k] = ranges[k].first;
  for (;;) {
    std::vector<std::int64_t> tors(moduli.size(), 0);
    for (;;) {
      out.push_back(group.make(free, tors));
      std::size_t k = tors.size();
      while (k > 0 && tors[k - 1] == moduli[k - 1] - 1) tors[--k] = 0;
      if (k == 0) break;
      ++tors[k - 1];
    }
    std::size_t k = free.size();
    while (k > 0 && free[k - 1] == ranges[k - 1].second) {
      --k;
      free[k] = ranges[k].first;
    }
    if (k == 0) break;
    ++free[k - 1];
  }
  return out;
}

bool DegreeWindow::contains(const DegreeVector& d) const {
  if (d.free.size() != ranges.size()) return false;
  for (std::size_t k = 0; k < ranges.size(); ++k)
    if (d.free[k] < ranges[k].first || d.free[k] > ranges[k].second) return false;
  return true;
}

std::string to_string(const DegreeWindow& w) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.ranges.size(); ++k)
    os << (k ? "," : "") << w.ranges[k].first << ".." << w.ranges[k].second;
  return os.str();
}

PresentedPiece::PresentedPiece(const GradedModule& m, const DegreeVector& d) : degree_(d) {
  const GradedRing& ring = m.ring;
  index_.resize(m.num_generators());
  for (std::size_t i = 0; i < m.num_generators(); ++i) {
    for (auto& mono : monomials_of_degree(ring, d + m.gen_shifts[i])) {
      index_[i].emplace(mono, ambient_.size());
      ambient_.emplace_back(i, std::move(mono));
    }
  }

  std::vector<std::vector<Rational>> rows;
  for (std::size_t j = 0; j < m.num_relations(); ++j) {
    bool column_zero = true;
    for (std::size_t i = 0; i < m.num_generators(); ++i) column_zero = column_zero && m.relations(i, j).is_zero();
    if (column_zero) continue;
    for (const auto& mono : monomials_of_degree(ring, d + m.rel_shifts[j])) {
      std::vector<Rational> v(ambient_.size());
      for (std::size_t i = 0; i < m.num_generators(); ++i)
        for (const auto& [e, c] : m.relations(i, j).terms()) v[index_[i].at(exponent_sum(e, mono))] += c;
      rows.push_back(std::move(v));
    }
  }
  RatMatrix image(rows.size(), ambient_.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ambient_.size(); ++c) image(r, c) = rows[r][c];
  ReducedEchelon rref = reduced_row_echelon(image);
  relation_rows_ = std::move(rref.rows);
  pivots_ = std::move(rref.pivots);

  std::vector<bool> is_pivot(ambient_.size(), false);
  for (std::size_t p : pivots_) is_pivot[p] = true;
  for (std::size_t c = 0; c < ambient_.size(); ++c)
    if (!is_pivot[c]) free_coords_.push_back(c);
}

std::optional<std::size_t> PresentedPiece::ambient_position(std::size_t gen, const Exponent& mono) const {
  auto it = index_[gen].find(mono);
  if (it == index_[gen].end()) return std::nullopt;
  return it->second;
}

std::vector<Rational> PresentedPiece::reduce(const std::vector<Rational>& ambient_vector) const {
  assert(ambient_vector.size() == ambient_.size());
  std::vector<Rational> v = ambient_vector;
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const Rational k = v[pivots_[r]];
    if (k == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (relation_rows_(r, c) != 0) v[c] -= k * relation_rows_(r, c);
  }
  std::vector<Rational> out;
  out.reserve(free_coords_.size());
  for (std::size_t c : free_coords_) out.push_back(v[c]);
  return out;
}

DegreePiece PresentedPiece::describe() const {
  DegreePiece p;
  p.degree = degree_;
  p.dimension = dimension();
  p.ambient = ambient_;
  for (std::size_t c : free_coords_) {
    std::vector<Rational> v(ambient_.size());
    v[c] = 1;
    p.basis.push_back(std::move(v));
  }
  return p;
}

RatMatrix DegreewiseModule::action(std::size_t var, const DegreeVector& d) {
  return multiplication(variable(acting_ring(), var), d);
}

const PresentedPiece& ModulePieces::at(const DegreeVector& d) {
  auto it = cache_.find(d);
  if (it == cache_.end()) it = cache_.emplace(d, std::make_unique<PresentedPiece>(module_, d)).first;
  return *it->second;
}

RatMatrix ModulePieces::multiplication(const HomogPoly& p, const DegreeVector& d) {
  const PresentedPiece& src = at(d);
  const PresentedPiece& dst = at(d + p.degree());
  RatMatrix out(dst.dimension(), src.dimension());
  for (std::size_t k = 0; k < src.dimension(); ++k) {
    const auto& [gen, mono] = src.basis_element(k);
    std::vector<Rational> v(dst.ambient_size());
    for (const auto& [e, c] : p.terms()) v[*dst.ambient_position(gen, exponent_sum(e, mono))] += c;
    const auto col = dst.reduce(v);
    for (std::size_t r = 0; r < col.size(); ++r) out(r, k) = col[r];
  }
  return out;
}

KernelPieces::KernelPieces(GradedMap f) : map_(std::move(f)), source_(map_.source), target_(map_.target) {}

const RatMatrix& KernelPieces::basis(const DegreeVector& d) {
  auto it = cache_.find(d);
  if (it == cache_.end()) it = cache_.emplace(d, nullspace(map_matrix(map_, d, source_, target_))).first;
  return it->second;
}

RatMatrix KernelPieces::multiplication(const HomogPoly& p, const DegreeVector& d) {
  const RatMatrix& from = basis(d);
  const RatMatrix& to = basis(d + p.degree());
  const RatMatrix images = source_.multiplication(p, d) * from;
  RatMatrix out(to.cols(), from.cols());
  for (std::size_t k = 0; k < images.cols(); ++k) {
    auto x = solve(to, images.col(k));
    assert(x);
    for (std::size_t r = 0; r < to.cols(); ++r) out(r, k) = (*x)[r];
  }
  return out;
}

DegreePiece piece(const GradedModule& m, const DegreeVector& d) { return PresentedPiece(m, d).describe(); }

std::map<DegreeVector, std::size_t> hilbert_table(const GradedModule& m, const DegreeWindow& w, unsigned threads) {
  const auto degrees = w.degrees(m.ring.class_group);
  std::vector<std::size_t> dims(degrees.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < degrees.size(); i += step) dims[i] = PresentedPiece(m, degrees[i]).dimension();
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(degrees.size())));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::map<DegreeVector, std::size_t> out;
  for (std::size_t i = 0; i < degrees.size(); ++i) out.emplace(degrees[i], dims[i]);
  return out;
}

RatMatrix map_matrix(const GradedMap& f, const DegreeVector& d, ModulePieces& source, ModulePieces& target) {
  const PresentedPiece& src = source.at(d);
  const PresentedPiece& dst = target.at(d + f.offset);
  RatMatrix out(dst.dimension(), src.dimension());
  for (std::size_t k = 0; k < src.dimension(); ++k) {
    const auto& [gen, mono] = src.basis_element(k);
    std::vector<Rational> v(dst.ambient_size());
    for (std::size_t i = 0; i < f.matrix.rows(); ++i)
      for (const auto& [e, c] : f.matrix(i, gen).terms()) v[*dst.ambient_position(i, exponent_sum(e, mono))] += c;
    const auto col = dst.reduce(v);
    for (std::size_t r = 0; r < col.size(); ++r) out(r, k) = col[r];
  }
  return out;
}

RatMatrix map_matrix(const GradedMap& f, const DegreeVector& d) {
  ModulePieces source(f.source), target(f.target);
  return map_matrix(f, d, source, target);
}

DegreePiece kernel_piece(const GradedMap& f, const DegreeVector& d) {
  ModulePieces source(f.source), target(f.target);
  const RatMatrix kernel = nullspace(map_matrix(f, d, source, target));
  const PresentedPiece& src = source.at(d);
  DegreePiece p;
  p.degree = d;
  p.dimension = kernel.cols();
  p.ambient = src.ambient();
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    std::vector<Rational> v(src.ambient_size());
    for (std::size_t r = 0; r < kernel.rows(); ++r) v[src.basis_position(r)] = kernel(r, k);
    p.basis.push_back(std::move(v));
  }
  return p;
}

std::size_t image_rank(const GradedMap& f, const DegreeVector& d) { return rank(map_matrix(f, d)); }

GradedModule cokernel_module(const GradedMap& f) {
  const GradedModule& t = f.target;
  std::vector<DegreeVector> rel_shifts = t.rel_shifts;
  for (const auto& s : f.source.gen_shifts) rel_shifts.push_back(s - f.offset);
  std::vector<HomogPoly> entries;
  for (std::size_t i = 0; i < t.num_generators(); ++i) {
    for (std::size_t j = 0; j < t.num_relations(); ++j) entries.push_back(t.relations(i, j));
    for (std::size_t j = 0; j < f.matrix.cols(); ++j) entries.push_back(f.matrix(i, j));
  }
  return presented_module(t.ring, t.gen_shifts, std::move(rel_shifts),
                          PolyMatrix(t.num_generators(), t.num_relations() + f.matrix.cols(), std::move(entries)));
}

RatMatrix mult_map(const GradedModule& m, const HomogPoly& p, const DegreeVector& d) {
  ModulePieces pieces(m);
  return pieces.multiplication(p, d);
}

std::map<DegreeVector, std::size_t> minimal_generator_degrees(DegreewiseModule& m, const DegreeWindow& w) {
  const GradedRing& ring = m.acting_ring();
  std::map<DegreeVector, std::size_t> out;
  for (const auto& d : w.degrees(ring.class_group)) {
    const std::size_t dim = m.dimension(d);
    if (dim == 0) continue;
    RatMatrix incoming(dim, 0);
    for (std::size_t i = 0; i < ring.num_vars; ++i) incoming = hstack(incoming, m.action(i, d - ring.var_degrees[i]));
    const std::size_t fresh = dim - rank(incoming);
    if (fresh > 0) out.emplace(d, fresh);
  }
  return out;
}

std::map<DegreeVector, std::size_t> minimal_generator_degrees(const GradedModule& m, const DegreeWindow& w) {
  ModulePieces pieces(m);
  return minimal_generator_degrees(pieces, w);
}

SheafZeroReport sheaf_is_zero(const GradedModule& m, const DegreeWindow& w, std::size_t power_cap) {
  for (std::size_t i = 0; i < m.num_generators(); ++i) {
    const DegreeVector g = -m.gen_shifts[i];
    if (!w.contains(g))
      throw Error(ErrorCode::WindowTooSmall, "generator " + std::to_string(i + 1) + " lives in degree " +
                                                 to_string(g) + ", outside the window " + to_string(w));
  }
  ModulePieces pieces(m);
  const auto degrees = w.degrees(m.ring.class_group);
  SheafZeroReport report;
  for (std::size_t gi = 0; gi < m.ring.irrelevant_gens.size(); ++gi) {
    const Exponent& g = m.ring.irrelevant_gens[gi];
    std::optional<std::size_t> found;
    std::optional<DegreeVector> last_nonzero;
    for (std::size_t k = 1; k <= power_cap && !found; ++k) {
      Exponent gk(g.size());
      for (std::size_t v = 0; v < g.size(); ++v) gk[v] = g[v] * static_cast<std::uint32_t>(k);
      const HomogPoly power = monomial(m.ring, gk);
      last_nonzero.reset();
      for (const auto& d : degrees) {
        if (pieces.dimension(d) == 0) continue;
        if (!is_zero_matrix(pieces.multiplication(power, d))) {
          last_nonzero = d;
          break;
        }
      }
      if (!last_nonzero) found = k;
    }
    report.nilpotency.push_back(found);
    if (!found && report.status == SheafZeroStatus::Zero) {
      report.status = SheafZeroStatus::NonZero;
      report.witness_generator = gi;
      report.witness_degree = last_nonzero;
    }
  }
  return report;
}

GradedMap euler_tangent_map(const GradedRing& ring) {
  if (!ring.class_group.torsion_free())
    throw Error(ErrorCode::TorsionGrading, "Euler maps need a torsion-free class group");
  const std::size_t f = ring.class_group.free_rank();
  std::vector<HomogPoly> entries;
  for (std::size_t i = 0; i < ring.num_vars; ++i)
    for (std::size_t k = 0; k < f; ++k)
      entries.push_back(Rational(static_cast<long>(ring.var_degrees[i].free[k])) * variable(ring, i));
  return graded_map(free_module(ring, std::vector<DegreeVector>(f, ring.zero_degree())),
                    free_module(ring, ring.var_degrees), PolyMatrix(ring.num_vars, f, std::move(entries)));
}

GradedMap euler_cotangent_map(const GradedRing& ring) {
  if (!ring.class_group.torsion_free())
    throw Error(ErrorCode::TorsionGrading, "Euler maps need a torsion-free class group");
  const std::size_t f = ring.class_group.free_rank();
  std::vector<DegreeVector> source_shifts;
  for (const auto& d : ring.var_degrees) source_shifts.push_back(-d);
  std::vector<HomogPoly> entries;
  for (std::size_t k = 0; k < f; ++k)
    for (std::size_t i = 0; i < ring.num_vars; ++i)
      entries.push_back(Rational(static_cast<long>(ring.var_degrees[i].free[k])) * variable(ring, i));
  return graded_map(free_module(ring, std::move(source_shifts)),
                    free_module(ring, std::vector<DegreeVector>(f, ring.zero_degree())),
                    PolyMatrix(f, ring.num_vars, std::move(entries)));
}

}  // namespace coxcalc
