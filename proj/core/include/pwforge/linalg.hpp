#pragma once

#include <map>
#include <vector>

#include "pwforge/rational.hpp"

namespace pwf {

using SparseRow = std::map<int, Rational>;
using DenseVec = std::vector<Rational>;

// Exact row-echelon workspace.  Rows are fed in one at a time and reduced
// against the pivots found so far; pivot selection is "first nonzero entry
// in column order", ties broken by insertion order, which makes the result
// deterministic.  A final back-elimination pass yields the reduced echelon
// form used for nullspace and span queries.
class Eliminator {
 public:
  explicit Eliminator(int ncols) : ncols_(ncols) {}

  // Reduces the row against current pivots; if a remainder survives it
  // becomes a new pivot row.  Returns true if the row was independent.
  bool add_row(SparseRow row);

  // Reduce a row against the pivots without inserting it.
  SparseRow reduce(SparseRow row) const;

  int rank() const { return int(pivot_rows_.size()); }
  int ncols() const { return ncols_; }

  // Full back-elimination; idempotent.  Must be called before nullspace().
  void finish();

  // Basis of the right nullspace in reduced form: one vector per free
  // column, unit entry at its free column.  Requires finish().
  std::vector<DenseVec> nullspace() const;

  // Columns holding pivots, ascending.
  std::vector<int> pivot_columns() const;

 private:
  int ncols_;
  bool finished_ = false;
  std::map<int, int> pivot_of_col_;     // column -> index into pivot_rows_
  std::vector<SparseRow> pivot_rows_;   // leading coefficient normalized to 1
};

// Convenience: nullspace of a dense row-list.
std::vector<DenseVec> nullspace_basis(const std::vector<DenseVec>& rows,
                                      int ncols);

int rank(const std::vector<DenseVec>& rows, int ncols);

// Span utilities over exact rationals.
class Span {
 public:
  explicit Span(int dim) : elim_(dim) {}
  bool insert(const DenseVec& v);         // false if already in span
  bool contains(const DenseVec& v) const;
  int dim() const { return elim_.rank(); }

 private:
  Eliminator elim_;
};

// Solves sum_i x_i * basis[i] = target exactly; throws std::domain_error if
// the target is outside the span.  Deterministic (least-index solution when
// the basis is linearly dependent).
DenseVec coordinates_in_span(const std::vector<DenseVec>& basis,
                             const DenseVec& target);

}  // namespace pwf
