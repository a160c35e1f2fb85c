#pragma once

// Lie-algebra structure extraction for solved symmetry spaces: commutators
// of polynomial vector fields, structure constants over exact rationals,
// closure/Jacobi certification, Killing form, a certified nilradical, and
// eigenspace analysis of a designated adjoint action.

#include <utility>
#include <vector>

#include "pwforge/rational.hpp"
#include "pwforge/tensor.hpp"

namespace pwf {

// Coordinate commutator [v, w]^C = v^R d_R w^C - w^R d_R v^C of two
// vector fields on the same chart.
TensorField vector_bracket(const TensorField& v, const TensorField& w);

struct LieAlgebraTable {
  std::vector<TensorField> basis;
  // structure[i][j][k]: [e_i, e_j] = sum_k structure[i][j][k] e_k.
  std::vector<std::vector<std::vector<Rational>>> structure;

  size_t dim() const { return basis.size(); }

  bool antisymmetric() const;
  bool jacobi() const;

  // ad(x) for x given by coordinates in the basis; column j holds the
  // coordinates of [x, e_j].
  std::vector<std::vector<Rational>> ad_matrix(
      const std::vector<Rational>& x) const;

  // Killing form K_ij = tr(ad(e_i) ad(e_j)).
  std::vector<std::vector<Rational>> killing_form() const;

  // Basis (coordinates in this->basis) of the nilradical, certified: the
  // radical of the Killing form always contains the nilradical, and when
  // that radical is itself a nilpotent ideal the two coincide.  Throws
  // std::domain_error if the certificate fails.
  std::vector<std::vector<Rational>> nilradical() const;
};

// Computes all pairwise brackets and expresses them in the given basis by
// exact linear solve.  Throws std::domain_error if some bracket falls
// outside the span (non-closed input).
LieAlgebraTable lie_structure(const std::vector<TensorField>& basis);

// Coordinates of a vector field in table.basis by exact linear solve;
// throws std::domain_error if it lies outside the span.
std::vector<Rational> coordinates_in_basis(const LieAlgebraTable& table,
                                           const TensorField& field);

// Eigenvalue / eigenspace-dimension pairs, eigenvalues ascending.
struct EigenReport {
  std::vector<std::pair<Rational, size_t>> eigenspaces;
};

// Eigenspace analysis of ad(x) restricted to the subspace spanned by `sub`
// (each entry: coordinates in table.basis).  Requires the subspace to be
// ad(x)-invariant and all eigenvalues rational; throws std::domain_error
// otherwise.
EigenReport ad_eigenspaces(const LieAlgebraTable& table,
                           const std::vector<Rational>& x,
                           const std::vector<std::vector<Rational>>& sub);

}  // namespace pwf
