#include "pwforge/lie.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "pwforge/linalg.hpp"
#include "pwforge/poly.hpp"

namespace pwf {

namespace {

// Canonical key for one monomial of one vector-field component, shared
// across fields whose polynomials carry different per-poly var lists.
using MonoKey = std::pair<int, std::map<std::string, int32_t>>;

void collect_keys(const TensorField& v, std::map<MonoKey, int>& index) {
  int n = int(v.chart()->vars.size());
  for (int c = 0; c < n; ++c) {
    const Poly& p = v.at({c});
    for (const auto& [expo, coef] : p.terms()) {
      std::map<std::string, int32_t> mono;
      for (size_t k = 0; k < expo.size(); ++k)
        if (expo[k] != 0) mono[p.vars()[k]] = expo[k];
      index.emplace(MonoKey{c, std::move(mono)}, 0);
    }
  }
}

DenseVec flatten(const TensorField& v, const std::map<MonoKey, int>& index) {
  DenseVec out(index.size(), Rational(0));
  int n = int(v.chart()->vars.size());
  for (int c = 0; c < n; ++c) {
    const Poly& p = v.at({c});
    for (const auto& [expo, coef] : p.terms()) {
      std::map<std::string, int32_t> mono;
      for (size_t k = 0; k < expo.size(); ++k)
        if (expo[k] != 0) mono[p.vars()[k]] = expo[k];
      auto it = index.find({c, mono});
      if (it == index.end())
        throw std::domain_error("bracket falls outside the basis span");
      out[it->second] += coef;
    }
  }
  return out;
}

// [a, b] in coordinates, via the structure constants.
DenseVec coord_bracket(const LieAlgebraTable& t, const DenseVec& a,
                       const DenseVec& b) {
  size_t d = t.dim();
  DenseVec out(d, Rational(0));
  for (size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      Rational f = a[i] * b[j];
      for (size_t k = 0; k < d; ++k) out[k] += f * t.structure[i][j][k];
    }
  }
  return out;
}

int subspace_dim(const std::vector<DenseVec>& vecs, int ncols) {
  return rank(vecs, ncols);
}

// Determinant of a square Poly matrix by expansion along the first column.
Poly poly_det(std::vector<std::vector<Poly>> m) {
  size_t d = m.size();
  if (d == 0) return Poly::constant(Rational(1));
  if (d == 1) return m[0][0];
  Poly out;
  for (size_t r = 0; r < d; ++r) {
    if (m[r][0].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    minor.reserve(d - 1);
    for (size_t i = 0; i < d; ++i) {
      if (i == r) continue;
      std::vector<Poly> row(m[i].begin() + 1, m[i].end());
      minor.push_back(std::move(row));
    }
    Poly term = m[r][0] * poly_det(std::move(minor));
    if (r % 2 == 0)
      out += term;
    else
      out -= term;
  }
  return out;
}

// All rational roots of a univariate rational-coefficient polynomial in
// `var`, by the rational root theorem after clearing denominators.
std::vector<Rational> rational_roots(const Poly& p, const std::string& var) {
  std::map<int, Rational> coef;  // degree -> coefficient
  int deg = 0;
  for (const auto& [expo, c] : p.terms()) {
    int e = 0;
    for (size_t k = 0; k < expo.size(); ++k) {
      if (p.vars()[k] == var)
        e = expo[k];
      else if (expo[k] != 0)
        throw std::domain_error("characteristic polynomial not univariate");
    }
    coef[e] = c;
    deg = std::max(deg, e);
  }
  std::vector<Rational> roots;
  if (coef.empty()) return roots;
  // Strip the root 0 first.
  int low = coef.begin()->first;
  if (low > 0) {
    roots.push_back(Rational(0));
    std::map<int, Rational> shifted;
    for (const auto& [e, c] : coef) shifted[e - low] = c;
    coef = std::move(shifted);
    deg -= low;
  }
  if (deg == 0) return roots;
  Integer den(1);
  for (const auto& [e, c] : coef) den = lcm(den, denominator(c));
  Integer a0 = numerator(coef.at(0) * Rational(den));
  Integer an = numerator(coef.at(deg) * Rational(den));
  auto divisors = [](Integer x) {
    std::vector<Integer> out;
    x = abs(x);
    for (Integer d = 1; d * d <= x; ++d)
      if (x % d == 0) {
        out.push_back(d);
        out.push_back(x / d);
      }
    return out;
  };
  auto eval = [&](const Rational& r) {
    Rational acc(0), pw(1);
    for (int e = 0; e <= deg; ++e) {
      auto it = coef.find(e);
      if (it != coef.end()) acc += it->second * pw;
      pw *= r;
    }
    return acc;
  };
  for (const Integer& pnum : divisors(a0))
    for (const Integer& qden : divisors(an))
      for (int sgn : {1, -1}) {
        Rational cand = Rational(pnum * sgn, qden);
        if (std::find(roots.begin(), roots.end(), cand) != roots.end())
          continue;
        if (eval(cand) == 0) roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

TensorField vector_bracket(const TensorField& v, const TensorField& w) {
  const auto& vars = v.chart()->vars;
  int n = int(vars.size());
  TensorField out(v.chart(), {Variance::Upper});
  for (int c = 0; c < n; ++c) {
    Poly acc;
    for (int r = 0; r < n; ++r)
      acc += v.at({r}) * w.at({c}).diff(vars[r]) -
             w.at({r}) * v.at({c}).diff(vars[r]);
    out.at({c}) = std::move(acc);
  }
  return out;
}

LieAlgebraTable lie_structure(const std::vector<TensorField>& basis) {
  LieAlgebraTable t;
  t.basis = basis;
  size_t d = basis.size();
  t.structure.assign(d, std::vector<std::vector<Rational>>(d));
  if (d == 0) return t;

  // One shared monomial index covering the basis and all brackets.
  std::vector<std::vector<TensorField>> br(d, std::vector<TensorField>());
  std::map<MonoKey, int> index;
  for (const auto& b : basis) collect_keys(b, index);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      br[i].push_back(vector_bracket(basis[i], basis[j]));
      collect_keys(br[i].back(), index);
    }
  int col = 0;
  for (auto& [key, idx] : index) idx = col++;

  std::vector<DenseVec> flat;
  flat.reserve(d);
  for (const auto& b : basis) flat.push_back(flatten(b, index));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      t.structure[i][j] = coordinates_in_span(flat, flatten(br[i][j], index));
  return t;
}

std::vector<Rational> coordinates_in_basis(const LieAlgebraTable& table,
                                           const TensorField& field) {
  std::map<MonoKey, int> index;
  for (const auto& b : table.basis) collect_keys(b, index);
  collect_keys(field, index);
  int col = 0;
  for (auto& [key, idx] : index) idx = col++;
  std::vector<DenseVec> flat;
  flat.reserve(table.basis.size());
  for (const auto& b : table.basis) flat.push_back(flatten(b, index));
  return coordinates_in_span(flat, flatten(field, index));
}

bool LieAlgebraTable::antisymmetric() const {
  size_t d = dim();
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k)
        if (structure[i][j][k] != -structure[j][i][k]) return false;
  return true;
}

bool LieAlgebraTable::jacobi() const {
  size_t d = dim();
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j)
      for (size_t k = j + 1; k < d; ++k)
        for (size_t l = 0; l < d; ++l) {
          Rational s(0);
          for (size_t m = 0; m < d; ++m)
            s += structure[j][k][m] * structure[i][m][l] +
                 structure[k][i][m] * structure[j][m][l] +
                 structure[i][j][m] * structure[k][m][l];
          if (s != 0) return false;
        }
  return true;
}

std::vector<std::vector<Rational>> LieAlgebraTable::ad_matrix(
    const std::vector<Rational>& x) const {
  size_t d = dim();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
  for (size_t j = 0; j < d; ++j)
    for (size_t i = 0; i < d; ++i)
      if (x[i] != 0)
        for (size_t k = 0; k < d; ++k) m[k][j] += x[i] * structure[i][j][k];
  return m;
}

std::vector<std::vector<Rational>> LieAlgebraTable::killing_form() const {
  size_t d = dim();
  std::vector<std::vector<Rational>> K(d, std::vector<Rational>(d, Rational(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      Rational tr(0);
      for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b)
          tr += structure[i][a][b] * structure[j][b][a];
      K[i][j] = tr;
    }
  return K;
}

std::vector<std::vector<Rational>> LieAlgebraTable::nilradical() const {
  size_t d = dim();
  auto K = killing_form();
  std::vector<DenseVec> rows(K.begin(), K.end());
  std::vector<DenseVec> rad = nullspace_basis(rows, int(d));

  // Certificate 1: the radical of the Killing form is an ideal.
  Span span{int(d)};
  for (const auto& v : rad) span.insert(v);
  for (size_t i = 0; i < d; ++i) {
    DenseVec ei(d, Rational(0));
    ei[i] = 1;
    for (const auto& v : rad)
      if (!span.contains(coord_bracket(*this, ei, v)))
        throw std::domain_error(
            "Killing-form radical is not an ideal; nilradical not certified");
  }

  // Certificate 2: the ideal is nilpotent (lower central series hits zero).
  std::vector<DenseVec> layer = rad;
  for (size_t iter = 0; iter <= d && !layer.empty(); ++iter) {
    std::vector<DenseVec> next;
    for (const auto& a : rad)
      for (const auto& b : layer) {
        DenseVec c = coord_bracket(*this, a, b);
        if (std::any_of(c.begin(), c.end(),
                        [](const Rational& q) { return q != 0; }))
          next.push_back(std::move(c));
      }
    if (!next.empty() && subspace_dim(next, int(d)) >= subspace_dim(layer, int(d)))
      throw std::domain_error(
          "Killing-form radical is not nilpotent; nilradical not certified");
    layer = std::move(next);
  }
  if (!layer.empty())
    throw std::domain_error(
        "Killing-form radical is not nilpotent; nilradical not certified");
  return rad;
}

EigenReport ad_eigenspaces(const LieAlgebraTable& table,
                           const std::vector<Rational>& x,
                           const std::vector<std::vector<Rational>>& sub) {
  size_t d = table.dim();
  size_t s = sub.size();
  // Restrict ad(x) to the subspace: each [x, sub_j] must be expressible in
  // the sub basis.
  std::vector<std::vector<Rational>> M(s, std::vector<Rational>(s, Rational(0)));
  for (size_t j = 0; j < s; ++j) {
    DenseVec img = coord_bracket(table, x, sub[j]);
    DenseVec coords;
    try {
      coords = coordinates_in_span(sub, img);
    } catch (const std::domain_error&) {
      throw std::domain_error("subspace is not invariant under ad(x)");
    }
    for (size_t i = 0; i < s; ++i) M[i][j] = coords[i];
    (void)d;
  }

  // Characteristic polynomial det(M - L I) and its rational roots.
  std::vector<std::vector<Poly>> mp(s, std::vector<Poly>(s));
  Poly L = Poly::parse("L");
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      mp[i][j] = Poly::constant(M[i][j]);
      if (i == j) mp[i][j] -= L;
    }
  Poly chi = poly_det(std::move(mp));
  std::vector<Rational> roots = rational_roots(chi, "L");

  EigenReport rep;
  size_t total = 0;
  for (const Rational& lam : roots) {
    std::vector<DenseVec> rows(s, DenseVec(s, Rational(0)));
    for (size_t i = 0; i < s; ++i)
      for (size_t j = 0; j < s; ++j)
        rows[i][j] = M[i][j] - (i == j ? lam : Rational(0));
    size_t mult = s - size_t(rank(rows, int(s)));
    if (mult > 0) {
      rep.eigenspaces.emplace_back(lam, mult);
      total += mult;
    }
  }
  // Diagonalizability over the rationals is what the grading statements
  // assert; fail loudly if the eigenspaces do not fill the subspace.
  if (total != s)
    throw std::domain_error("ad(x) is not rationally diagonalizable");
  return rep;
}

}  // namespace pwf
