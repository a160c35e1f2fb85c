#include "pwforge/tensor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pwforge/linalg.hpp"

namespace pwf {

ChartPtr make_chart(std::string name, std::vector<std::string> vars) {
  auto c = std::make_shared<Chart>();
  c->name = std::move(name);
  c->vars = std::move(vars);
  return c;
}

ChartPtr base_chart(int n) {
  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  return make_chart("base" + std::to_string(n), std::move(vars));
}

size_t flat_index(const std::vector<int>& mi, int dim) {
  size_t f = 0;
  for (int i : mi) f = f * dim + i;
  return f;
}

bool next_multi_index(std::vector<int>& mi, int dim) {
  for (int k = int(mi.size()) - 1; k >= 0; --k) {
    if (++mi[k] < dim) return true;
    mi[k] = 0;
  }
  return false;
}

std::vector<int> first_multi_index(int rank) {
  return std::vector<int>(rank, 0);
}

TensorField::TensorField(ChartPtr chart, std::vector<Variance> idx)
    : chart_(std::move(chart)), idx_(std::move(idx)) {
  size_t n = 1;
  for (size_t i = 0; i < idx_.size(); ++i) n *= chart_->dim();
  comp_.resize(n);
}

TensorField TensorField::scalar(ChartPtr chart, Poly value) {
  TensorField t(std::move(chart), {});
  t.comp_[0] = std::move(value);
  return t;
}

TensorField TensorField::kronecker(ChartPtr chart) {
  TensorField t(chart, {Variance::Lower, Variance::Upper});
  for (int i = 0; i < chart->dim(); ++i)
    t.at({i, i}) = Poly(Rational(1));
  return t;
}

const Poly& TensorField::at(const std::vector<int>& mi) const {
  return comp_[flat_index(mi, dim())];
}

Poly& TensorField::at(const std::vector<int>& mi) {
  return comp_[flat_index(mi, dim())];
}

bool TensorField::is_zero() const {
  return std::all_of(comp_.begin(), comp_.end(),
                     [](const Poly& p) { return p.is_zero(); });
}

void TensorField::check_compatible(const TensorField& o) const {
  if (!chart_ || !o.chart_ || !(*chart_ == *o.chart_) || idx_ != o.idx_)
    throw std::invalid_argument("tensor chart/index mismatch");
}

TensorField TensorField::operator-() const {
  TensorField r = *this;
  for (auto& p : r.comp_) p = -p;
  return r;
}

TensorField TensorField::operator+(const TensorField& o) const {
  check_compatible(o);
  TensorField r = *this;
  for (size_t i = 0; i < comp_.size(); ++i) r.comp_[i] += o.comp_[i];
  return r;
}

TensorField TensorField::operator-(const TensorField& o) const {
  check_compatible(o);
  TensorField r = *this;
  for (size_t i = 0; i < comp_.size(); ++i) r.comp_[i] -= o.comp_[i];
  return r;
}

TensorField TensorField::operator*(const Rational& c) const {
  TensorField r = *this;
  for (auto& p : r.comp_) p = p * c;
  return r;
}

TensorField TensorField::operator*(const Poly& s) const {
  TensorField r = *this;
  for (auto& p : r.comp_) p = p * s;
  return r;
}

bool TensorField::operator==(const TensorField& o) const {
  if (!chart_ || !o.chart_ || !(*chart_ == *o.chart_) || idx_ != o.idx_)
    return false;
  for (size_t i = 0; i < comp_.size(); ++i)
    if (comp_[i] != o.comp_[i]) return false;
  return true;
}

TensorField TensorField::product(const TensorField& o) const {
  if (!(*chart_ == *o.chart_))
    throw std::invalid_argument("product across different charts");
  std::vector<Variance> idx = idx_;
  idx.insert(idx.end(), o.idx_.begin(), o.idx_.end());
  TensorField r(chart_, idx);
  for (size_t i = 0; i < comp_.size(); ++i) {
    if (comp_[i].is_zero()) continue;
    for (size_t j = 0; j < o.comp_.size(); ++j) {
      if (o.comp_[j].is_zero()) continue;
      r.comp_[i * o.comp_.size() + j] = comp_[i] * o.comp_[j];
    }
  }
  return r;
}

TensorField TensorField::contract(int slot_a, int slot_b) const {
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= rank() ||
      slot_b >= rank())
    throw std::invalid_argument("bad contraction slots");
  if (idx_[slot_a] == idx_[slot_b])
    throw std::invalid_argument("contraction needs one Upper and one Lower");
  int lo = std::min(slot_a, slot_b), hi = std::max(slot_a, slot_b);
  std::vector<Variance> idx;
  for (int i = 0; i < rank(); ++i)
    if (i != lo && i != hi) idx.push_back(idx_[i]);
  TensorField r(chart_, idx);
  int d = dim();
  std::vector<int> mi = first_multi_index(r.rank());
  if (r.rank() == 0) mi.clear();
  do {
    std::vector<int> full(rank());
    int k = 0;
    for (int i = 0; i < rank(); ++i)
      if (i != lo && i != hi) full[i] = mi[k++];
    Poly sum;
    for (int s = 0; s < d; ++s) {
      full[lo] = s;
      full[hi] = s;
      sum += at(full);
    }
    r.at(mi) = std::move(sum);
  } while (next_multi_index(mi, d));
  return r;
}

TensorField TensorField::permute(const std::vector<int>& perm) const {
  if (int(perm.size()) != rank())
    throw std::invalid_argument("bad permutation size");
  std::vector<Variance> idx(rank());
  for (int i = 0; i < rank(); ++i) idx[i] = idx_[perm[i]];
  TensorField r(chart_, idx);
  std::vector<int> mi = first_multi_index(rank());
  do {
    std::vector<int> src(rank());
    for (int i = 0; i < rank(); ++i) src[perm[i]] = mi[i];
    // result[mi] = this[old index arrangement]: result slot i takes the
    // value of old slot perm[i], i.e. old index vector o with o[perm[i]] =
    // mi[i].
    r.at(mi) = at(src);
  } while (rank() > 0 && next_multi_index(mi, dim()));
  return r;
}

namespace {

int parity(std::vector<int> p) {
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace

TensorField TensorField::symmetrize(const std::vector<int>& slots) const {
  for (size_t i = 1; i < slots.size(); ++i)
    if (idx_[slots[i]] != idx_[slots[0]])
      throw std::invalid_argument("symmetrize over mixed variance");
  std::vector<int> order(slots.begin(), slots.end());
  std::sort(order.begin(), order.end());
  TensorField acc(chart_, idx_);
  Rational count = 0;
  std::vector<int> arrangement = order;
  std::sort(arrangement.begin(), arrangement.end());
  do {
    std::vector<int> perm(rank());
    for (int i = 0; i < rank(); ++i) perm[i] = i;
    for (size_t i = 0; i < order.size(); ++i) perm[order[i]] = arrangement[i];
    acc += permute(perm);
    count += 1;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return acc * (Rational(1) / count);
}

TensorField TensorField::alternate(const std::vector<int>& slots) const {
  for (size_t i = 1; i < slots.size(); ++i)
    if (idx_[slots[i]] != idx_[slots[0]])
      throw std::invalid_argument("alternate over mixed variance");
  std::vector<int> order(slots.begin(), slots.end());
  std::sort(order.begin(), order.end());
  TensorField acc(chart_, idx_);
  Rational count = 0;
  std::vector<int> arrangement = order;
  do {
    std::vector<int> rel(order.size());
    for (size_t i = 0; i < order.size(); ++i)
      rel[i] = int(std::lower_bound(order.begin(), order.end(), arrangement[i]) -
                   order.begin());
    int sign = parity(rel);
    std::vector<int> perm(rank());
    for (int i = 0; i < rank(); ++i) perm[i] = i;
    for (size_t i = 0; i < order.size(); ++i) perm[order[i]] = arrangement[i];
    TensorField p = permute(perm);
    acc += (sign > 0) ? p : -p;
    count += 1;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return acc * (Rational(1) / count);
}

TensorField TensorField::pair_skew(int s0, int s1, int s2, int s3) const {
  return alternate({s0, s1}).alternate({s2, s3});
}

TensorField TensorField::window_part() const {
  if (rank() != 4) throw std::invalid_argument("window_part needs rank 4");
  // Pair-exchange symmetric part ...
  TensorField u = (*this + permute({2, 3, 0, 1})) * Rational(1, 2);
  // ... minus its full alternation.
  return u - u.alternate({0, 1, 2, 3});
}

TensorField TensorField::trace_free() const {
  int d = dim(), r = rank();
  // Enumerate (Upper, Lower) slot pairs.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (idx_[a] == Variance::Upper && idx_[b] == Variance::Lower)
        pairs.emplace_back(a, b);
  if (pairs.empty()) return *this;

  // Columns of the delta-insertion map: for each pair and each multi-index
  // of the remaining slots, the tensor delta(a,b) x e_rest.
  size_t ncomp = comp_.size();
  size_t per_pair = ncomp / (size_t(d) * d);
  size_t ncols = pairs.size() * per_pair;

  // Dense columns as index lists (entries are 0/1).
  std::vector<std::vector<size_t>> cols(ncols);
  {
    size_t c = 0;
    for (auto [ua, lb] : pairs) {
      std::vector<int> rest_slots;
      for (int i = 0; i < r; ++i)
        if (i != ua && i != lb) rest_slots.push_back(i);
      std::vector<int> rest = first_multi_index(int(rest_slots.size()));
      size_t cnt = 0;
      do {
        std::vector<int> full(r);
        for (size_t k = 0; k < rest_slots.size(); ++k)
          full[rest_slots[k]] = rest[k];
        for (int s = 0; s < d; ++s) {
          full[ua] = s;
          full[lb] = s;
          cols[c].push_back(flat_index(full, d));
        }
        ++c;
        ++cnt;
      } while (next_multi_index(rest, d));
      (void)cnt;
    }
  }

  // Normal equations: G c = rhs with G_{ij} = <col_i, col_j> (rational) and
  // rhs_i = <col_i, T> (polynomial).  Solve by elimination with rational
  // multipliers; the system is consistent by construction.
  std::vector<std::vector<Rational>> G(ncols,
                                       std::vector<Rational>(ncols, Rational(0)));
  for (size_t i = 0; i < ncols; ++i)
    for (size_t j = i; j < ncols; ++j) {
      // Columns are 0/1 index lists: inner product = size of intersection.
      size_t a = 0, b = 0, hits = 0;
      while (a < cols[i].size() && b < cols[j].size()) {
        if (cols[i][a] == cols[j][b]) {
          ++hits;
          ++a;
          ++b;
        } else if (cols[i][a] < cols[j][b]) {
          ++a;
        } else {
          ++b;
        }
      }
      G[i][j] = G[j][i] = Rational(long(hits));
    }
  std::vector<Poly> rhs(ncols);
  for (size_t i = 0; i < ncols; ++i)
    for (size_t f : cols[i]) rhs[i] += comp_[f];

  // Gaussian elimination on [G | rhs].
  std::vector<size_t> pivot_row_of_col;
  size_t prow = 0;
  std::vector<int> pivot_col(ncols, -1);
  for (size_t col = 0; col < ncols && prow < ncols; ++col) {
    size_t sel = prow;
    while (sel < ncols && G[sel][col] == 0) ++sel;
    if (sel == ncols) continue;
    std::swap(G[sel], G[prow]);
    std::swap(rhs[sel], rhs[prow]);
    Rational inv = Rational(1) / G[prow][col];
    for (size_t j = col; j < ncols; ++j) G[prow][j] *= inv;
    rhs[prow] = rhs[prow] * inv;
    for (size_t i = 0; i < ncols; ++i) {
      if (i == prow || G[i][col] == 0) continue;
      Rational f = G[i][col];
      for (size_t j = col; j < ncols; ++j) G[i][j] -= f * G[prow][j];
      rhs[i] -= rhs[prow] * f;
    }
    pivot_col[prow] = int(col);
    ++prow;
  }
  for (size_t i = prow; i < ncols; ++i)
    if (!rhs[i].is_zero())
      throw std::logic_error("inconsistent trace projection system");

  std::vector<Poly> coeff(ncols);
  for (size_t i = 0; i < prow; ++i) coeff[pivot_col[i]] = rhs[i];

  TensorField out = *this;
  for (size_t i = 0; i < ncols; ++i) {
    if (coeff[i].is_zero()) continue;
    for (size_t f : cols[i]) out.comp_[f] -= coeff[i];
  }
  return out;
}

TensorField TensorField::coordinate_derivative() const {
  std::vector<Variance> idx;
  idx.push_back(Variance::Lower);
  idx.insert(idx.end(), idx_.begin(), idx_.end());
  TensorField r(chart_, idx);
  int d = dim();
  for (int a = 0; a < d; ++a)
    for (size_t i = 0; i < comp_.size(); ++i)
      r.comp_[size_t(a) * comp_.size() + i] =
          comp_[i].diff(chart_->vars[a]);
  return r;
}

TensorField TensorField::subst(const std::string& var, const Poly& value) const {
  TensorField r = *this;
  for (auto& p : r.comp_) p = p.subst(var, value);
  return r;
}

int TensorField::degree() const {
  int d = 0;
  for (const auto& p : comp_) d = std::max(d, p.degree());
  return d;
}

}  // namespace pwf
