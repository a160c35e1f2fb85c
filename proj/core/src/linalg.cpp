#include "pwforge/linalg.hpp"

#include <stdexcept>

namespace pwf {

namespace {

// row -= c * pivot (sparse).  c is taken by value: callers often pass a
// reference into `row` itself, which the update erases.
void axpy(SparseRow& row, Rational c, const SparseRow& pivot) {
  if (c == 0) return;
  for (const auto& [j, v] : pivot) {
    auto [it, fresh] = row.emplace(j, -c * v);
    if (!fresh) {
      it->second -= c * v;
      if (it->second == 0) row.erase(it);
    } else if (it->second == 0) {
      row.erase(it);
    }
  }
}

}  // namespace

SparseRow Eliminator::reduce(SparseRow row) const {
  // Eliminate every pivot column occurring in the row.  Each step removes
  // one pivot column and can only introduce columns to its right (before
  // finish()) or free columns (after finish()), so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& entry : row) {
      auto pt = pivot_of_col_.find(entry.first);
      if (pt != pivot_of_col_.end()) {
        Rational c = entry.second;  // copy: axpy erases this map node
        axpy(row, c, pivot_rows_[pt->second]);
        changed = true;
        break;
      }
    }
  }
  return row;
}

bool Eliminator::add_row(SparseRow row) {
  if (finished_) throw std::logic_error("add_row after finish");
  // Forward reduction against known pivots only.
  while (!row.empty()) {
    auto it = pivot_of_col_.find(row.begin()->first);
    if (it == pivot_of_col_.end()) break;
    axpy(row, row.begin()->second, pivot_rows_[it->second]);
  }
  if (row.empty()) return false;
  // Normalize leading coefficient to 1.
  Rational lead = row.begin()->second;
  for (auto& [j, v] : row) v /= lead;
  pivot_of_col_[row.begin()->first] = int(pivot_rows_.size());
  pivot_rows_.push_back(std::move(row));
  return true;
}

void Eliminator::finish() {
  if (finished_) return;
  // Eliminate pivot columns from all other pivot rows (back-elimination),
  // processing pivots in descending column order.
  for (auto it = pivot_of_col_.rbegin(); it != pivot_of_col_.rend(); ++it) {
    int col = it->first;
    const SparseRow pivot = pivot_rows_[it->second];
    for (auto& [c2, idx] : pivot_of_col_) {
      if (c2 == col) continue;
      SparseRow& r = pivot_rows_[idx];
      auto jt = r.find(col);
      if (jt != r.end()) {
        Rational c = jt->second;
        axpy(r, c, pivot);
      }
    }
  }
  finished_ = true;
}

std::vector<int> Eliminator::pivot_columns() const {
  std::vector<int> cols;
  cols.reserve(pivot_of_col_.size());
  for (const auto& [c, idx] : pivot_of_col_) cols.push_back(c);
  return cols;
}

std::vector<DenseVec> Eliminator::nullspace() const {
  if (!finished_) throw std::logic_error("nullspace before finish");
  std::vector<DenseVec> basis;
  for (int f = 0; f < ncols_; ++f) {
    if (pivot_of_col_.count(f)) continue;
    DenseVec v(ncols_, Rational(0));
    v[f] = 1;
    for (const auto& [pcol, idx] : pivot_of_col_) {
      auto it = pivot_rows_[idx].find(f);
      if (it != pivot_rows_[idx].end()) v[pcol] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<DenseVec> nullspace_basis(const std::vector<DenseVec>& rows,
                                      int ncols) {
  Eliminator e(ncols);
  for (const auto& r : rows) {
    SparseRow sr;
    for (int j = 0; j < ncols; ++j)
      if (r[j] != 0) sr[j] = r[j];
    e.add_row(std::move(sr));
  }
  e.finish();
  return e.nullspace();
}

int rank(const std::vector<DenseVec>& rows, int ncols) {
  Eliminator e(ncols);
  for (const auto& r : rows) {
    SparseRow sr;
    for (int j = 0; j < ncols; ++j)
      if (r[j] != 0) sr[j] = r[j];
    e.add_row(std::move(sr));
  }
  return e.rank();
}

bool Span::insert(const DenseVec& v) {
  SparseRow sr;
  for (size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) sr[int(j)] = v[j];
  return elim_.add_row(std::move(sr));
}

bool Span::contains(const DenseVec& v) const {
  SparseRow sr;
  for (size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) sr[int(j)] = v[j];
  return elim_.reduce(std::move(sr)).empty();
}

DenseVec coordinates_in_span(const std::vector<DenseVec>& basis,
                             const DenseVec& target) {
  // Solve x^T B = target via RREF of [B^T | target].
  size_t n = basis.size();
  size_t m = target.size();
  Eliminator e(int(n) + 1);
  for (size_t j = 0; j < m; ++j) {
    SparseRow row;
    for (size_t i = 0; i < n; ++i)
      if (basis[i][j] != 0) row[int(i)] = basis[i][j];
    if (target[j] != 0) row[int(n)] = target[j];
    e.add_row(std::move(row));
  }
  e.finish();
  auto pivots = e.pivot_columns();
  for (int p : pivots)
    if (p == int(n)) throw std::domain_error("target not in span");
  // Any nullspace vector with -1 in the last slot gives coordinates.
  for (const auto& v : e.nullspace()) {
    if (v[n] != 0) {
      DenseVec x(n);
      Rational s = -Rational(1) / v[n];
      for (size_t i = 0; i < n; ++i) x[i] = v[i] * s;
      return x;
    }
  }
  // Target is zero vector.
  return DenseVec(n, Rational(0));
}

}  // namespace pwf
