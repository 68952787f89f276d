#ifndef COXCALC_DSL_HPP
#define COXCALC_DSL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxcalc/graded_module.hpp"
#include "coxcalc/morphism.hpp"

namespace coxcalc {

// Input language:
//
//   # comment
//   fan F1 { rank 2; rays (1,0) (0,1) (-1,-1) (0,-1); cones [1 2] [2 3] [3 4] [1 4]; }
//   morphism blowup : F1 -> P2 { matrix [[1,0],[0,1]]; }
//   module I over F1 { shifts [(-1,-1)]; }
//   module P over F2 { shifts [(1,0) (2,1) (1,0) (0,1)]; relations [[x1, 2*x2, x3, 0], [0, x2, 0, x4]]; }
//
// Ray indices in cones are 1-based, as are variable indices. Each inner list
// of `relations` is one relation column (one entry per generator). A shift
// lists the free coordinates followed by the torsion residues.

struct SourceLocation {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
};

std::string to_string(const SourceLocation& loc);

using SparseMonomial = std::map<std::size_t, std::uint32_t>;  // 0-based variable -> exponent
using SparsePoly = std::map<SparseMonomial, Rational>;

SparsePoly parse_polynomial(const std::string& text);
std::string print_polynomial(const SparsePoly& p, char var = 'x');

struct FanDecl {
  std::string name;
  Fan fan;
  SourceLocation loc;
  friend bool operator==(const FanDecl& a, const FanDecl& b) { return a.name == b.name && a.fan == b.fan; }
};

struct MorphismDecl {
  std::string name;
  std::string source;
  std::string target;
  std::vector<std::vector<std::int64_t>> matrix;
  SourceLocation loc;
  friend bool operator==(const MorphismDecl& a, const MorphismDecl& b) {
    return a.name == b.name && a.source == b.source && a.target == b.target && a.matrix == b.matrix;
  }
};

struct ModuleDecl {
  std::string name;
  std::string ring;
  std::vector<std::vector<std::int64_t>> shifts;
  std::vector<std::vector<SparsePoly>> relations;  // columns
  char var_symbol = 'x';
  SourceLocation loc;
  friend bool operator==(const ModuleDecl& a, const ModuleDecl& b) {
    return a.name == b.name && a.ring == b.ring && a.shifts == b.shifts && a.relations == b.relations;
  }
};

struct Workspace {
  std::vector<FanDecl> fans;
  std::vector<MorphismDecl> morphisms;
  std::vector<ModuleDecl> modules;

  const FanDecl* find_fan(const std::string& name) const;
  const MorphismDecl* find_morphism(const std::string& name) const;
  const ModuleDecl* find_module(const std::string& name) const;

  // Appends the declarations of `other`. Throws DuplicateName.
  void merge(const Workspace& other);

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

// Throws SyntaxError (with line and column) and DuplicateName.
Workspace parse_input(const std::string& text, const std::string& file = "<input>");

// Checks references and fan validity; errors carry the declaration's
// location. Throws UnresolvedReference, ShapeMismatch and fan errors.
void resolve(const Workspace& ws);

std::string print_workspace(const Workspace& ws);

GradedRing workspace_ring(const Workspace& ws, const std::string& fan_name);
GradedModule workspace_module(const Workspace& ws, const std::string& module_name);
MorphismLift workspace_lift(const Workspace& ws, const std::string& morphism_name);

}  // namespace coxcalc

#endif  // COXCALC_DSL_HPP
