#include "pwforge/solvers.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace pwf {

// --------------------------------------------------------------------------
// Ansatz machinery.
// --------------------------------------------------------------------------

std::string CoeffPool::fresh() {
  std::string name = "c" + std::to_string(names_.size());
  names_.push_back(name);
  return name;
}

std::vector<std::vector<int32_t>> monomials_up_to(int nvars, int deg) {
  std::vector<std::vector<int32_t>> out;
  std::vector<int32_t> cur(nvars, 0);
  // Depth-first enumeration; deterministic order.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[pos] = e;
      rec(pos + 1, remaining - e);
    }
    cur[pos] = 0;
  };
  rec(0, deg);
  return out;
}

namespace {

Poly monomial(const std::vector<std::string>& vars,
              const std::vector<int32_t>& expo) {
  Poly m = Poly::constant(Rational(1));
  for (size_t i = 0; i < vars.size(); ++i) {
    if (expo[i] != 0) m *= Poly(vars[i], expo[i]);
  }
  return m;
}

}  // namespace

Poly ansatz_poly(CoeffPool& pool, const std::vector<std::string>& vars,
                 int deg) {
  Poly out;
  for (const auto& expo : monomials_up_to(int(vars.size()), deg)) {
    out += Poly(pool.fresh()) * monomial(vars, expo);
  }
  return out;
}

Poly ansatz_poly2(CoeffPool& pool, const std::vector<std::string>& vars_a,
                  int da, const std::vector<std::string>& vars_b, int db) {
  Poly out;
  for (const auto& ea : monomials_up_to(int(vars_a.size()), da)) {
    for (const auto& eb : monomials_up_to(int(vars_b.size()), db)) {
      out += Poly(pool.fresh()) * monomial(vars_a, ea) * monomial(vars_b, eb);
    }
  }
  return out;
}

TensorField ansatz_tensor(CoeffPool& pool, const ChartPtr& chart,
                          std::vector<Variance> idx, int deg, AnsatzSym sym) {
  TensorField T(chart, idx);
  if (sym == AnsatzSym::None) {
    if (!idx.empty()) {
      auto mi = first_multi_index(int(idx.size()));
      do {
        T.at(mi) = ansatz_poly(pool, chart->vars, deg);
      } while (next_multi_index(mi, chart->dim()));
    } else {
      T.at({}) = ansatz_poly(pool, chart->vars, deg);
    }
    return T;
  }
  if (idx.size() != 2) {
    throw std::logic_error("ansatz_tensor: symmetry requires rank 2");
  }
  const int d = chart->dim();
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      if (sym == AnsatzSym::Skew && i == j) continue;
      Poly p = ansatz_poly(pool, chart->vars, deg);
      T.at({i, j}) = p;
      T.at({j, i}) = (sym == AnsatzSym::Symmetric) ? p : -p;
    }
  }
  return T;
}

LinearConditions::LinearConditions(const CoeffPool& pool)
    : pool_(pool), elim_(pool.size()) {
  for (int i = 0; i < pool.size(); ++i) col_of_[pool.names()[i]] = i;
}

void LinearConditions::add(const Poly& residual) {
  // Split off the chart variables; what multiplies each chart monomial must
  // be linear homogeneous in the pool coefficients.
  std::vector<std::string> chart_vars;
  for (const auto& v : residual.vars()) {
    if (!col_of_.count(v)) chart_vars.push_back(v);
  }
  for (const auto& [expo, coef] : residual.collect(chart_vars)) {
    (void)expo;
    SparseRow row;
    const auto& cvars = coef.vars();
    for (const auto& [ce, value] : coef.terms()) {
      int which = -1;
      for (size_t i = 0; i < cvars.size(); ++i) {
        if (ce[i] == 0) continue;
        if (ce[i] != 1 || which != -1) {
          throw std::logic_error("LinearConditions: residual not linear");
        }
        which = int(i);
      }
      if (which == -1) {
        throw std::logic_error("LinearConditions: residual not homogeneous");
      }
      row[col_of_.at(cvars[which])] += value;
    }
    elim_.add_row(std::move(row));
  }
}

void LinearConditions::add(const TensorField& residual) {
  for (const auto& c : residual.components()) add(c);
}

std::vector<std::map<std::string, Rational>> LinearConditions::solve() {
  elim_.finish();
  std::vector<std::map<std::string, Rational>> out;
  for (const auto& vec : elim_.nullspace()) {
    std::map<std::string, Rational> assign;
    for (int i = 0; i < pool_.size(); ++i) {
      if (vec[i] != 0) assign[pool_.names()[i]] = vec[i];
    }
    out.push_back(std::move(assign));
  }
  return out;
}

Poly substitute_coeffs(const Poly& p,
                       const std::map<std::string, Rational>& assign,
                       const CoeffPool& pool) {
  std::set<std::string> pool_names(pool.names().begin(), pool.names().end());
  Poly out = p;
  for (const auto& v : p.vars()) {
    if (!pool_names.count(v)) continue;
    auto it = assign.find(v);
    Rational value = (it == assign.end()) ? Rational(0) : it->second;
    out = out.subst(v, Poly::constant(value));
  }
  return out;
}

TensorField substitute_coeffs(const TensorField& T,
                              const std::map<std::string, Rational>& assign,
                              const CoeffPool& pool) {
  TensorField out = T;
  for (auto& c : out.components()) c = substitute_coeffs(c, assign, pool);
  return out;
}

// --------------------------------------------------------------------------
// Einstein scales.
// --------------------------------------------------------------------------

namespace {

std::vector<EinsteinSolution> einstein_reduced_at(const AffineConnection& conn,
                                                  const TensorField& phi,
                                                  const CurvaturePack& pack,
                                                  int cap) {
  const auto& chart = conn.chart;
  CoeffPool pool;
  Poly tau = ansatz_poly(pool, chart->vars, cap);
  TensorField xi = ansatz_tensor(pool, chart, {Variance::Upper}, cap);

  LinearConditions lc(pool);
  // xi^R W_RB{}^C{}_D = 0.
  lc.add(xi.product(pack.weyl).contract(0, 1));
  // (D_A xi^B)_0 = 0.
  lc.add(covariant_derivative(conn, xi).trace_free());
  // (D_A D_B + P_AB) tau = F(xi, Phi)_AB.
  TensorField dtau =
      covariant_derivative(conn, TensorField::scalar(chart, tau));
  TensorField hess = covariant_derivative(conn, dtau) + pack.schouten * tau;
  lc.add(hess - coupling_F_xi(conn, xi, phi));

  std::vector<EinsteinSolution> basis;
  ChartPtr total = total_chart(chart);
  for (const auto& assign : lc.solve()) {
    EinsteinSolution sol;
    sol.tau = substitute_coeffs(tau, assign, pool);
    sol.xi = substitute_coeffs(xi, assign, pool);
    sol.sigma = sol.tau;
    for (int a = 0; a < chart->dim(); ++a) {
      sol.sigma += sol.xi.at({a}) * Poly(total->vars[chart->dim() + a]);
    }
    basis.push_back(std::move(sol));
  }
  return basis;
}

}  // namespace

EinsteinResult einstein_scales_reduced(const AffineConnection& conn,
                                       const TensorField& phi, int cap,
                                       bool witness) {
  CurvaturePack pack = curvature_pack(conn);
  EinsteinResult res;
  res.cap = cap;
  res.basis = einstein_reduced_at(conn, phi, pack, cap);
  if (witness) {
    auto next = einstein_reduced_at(conn, phi, pack, cap + 1);
    res.stabilized = (next.size() == res.basis.size());
  }
  return res;
}

TensorField einstein_trace_free_hessian(const PWSpace& pw, const Poly& sigma) {
  MetricCurvature mc = metric_curvature(pw.g, pw.g_inv, pw.lc);
  TensorField s = TensorField::scalar(pw.total, sigma);
  TensorField hess =
      covariant_derivative(pw.lc, covariant_derivative(pw.lc, s)) +
      mc.schouten * sigma;
  TensorField tr = pw.g_inv.product(hess).contract(0, 2).contract(0, 1);
  int m = 2 * pw.n();
  return hess - pw.g * (tr.at({}) / Rational(m));
}

namespace {

std::vector<EinsteinSolution> einstein_direct_at(const PWSpace& pw,
                                                 const MetricCurvature& mc,
                                                 int cap) {
  const int n = pw.n();
  std::vector<std::string> xvars(pw.total->vars.begin(),
                                 pw.total->vars.begin() + n);
  std::vector<std::string> pvars(pw.total->vars.begin() + n,
                                 pw.total->vars.end());
  CoeffPool pool;
  Poly sigma = ansatz_poly2(pool, xvars, cap, pvars, 1);

  TensorField s = TensorField::scalar(pw.total, sigma);
  TensorField hess =
      covariant_derivative(pw.lc, covariant_derivative(pw.lc, s)) +
      mc.schouten * sigma;
  TensorField tr = pw.g_inv.product(hess).contract(0, 2).contract(0, 1);
  TensorField res = hess - pw.g * (tr.at({}) / Rational(2 * n));

  LinearConditions lc(pool);
  lc.add(res);

  std::vector<EinsteinSolution> basis;
  for (const auto& assign : lc.solve()) {
    EinsteinSolution sol;
    sol.sigma = substitute_coeffs(sigma, assign, pool);
    sol.tau = sol.sigma;
    sol.xi = TensorField(pw.base, {Variance::Upper});
    for (int a = 0; a < n; ++a) {
      sol.xi.at({a}) = sol.sigma.diff(pvars[a]);
      sol.tau = sol.tau.subst(pvars[a], Poly::zero());
    }
    basis.push_back(std::move(sol));
  }
  return basis;
}

}  // namespace

EinsteinResult einstein_scales_direct(const PWSpace& pw, int cap,
                                      bool witness) {
  MetricCurvature mc = metric_curvature(pw.g, pw.g_inv, pw.lc);
  EinsteinResult res;
  res.cap = cap;
  res.basis = einstein_direct_at(pw, mc, cap);
  if (witness) {
    auto next = einstein_direct_at(pw, mc, cap + 1);
    res.stabilized = (next.size() == res.basis.size());
  }
  return res;
}

Poly einstein_scalar(const PWSpace& pw, const EinsteinSolution& sol) {
  const int n = pw.n();
  TensorField q = sol.xi.product(sol.xi).product(pw.phi).contract(0, 2)
                      .contract(0, 1);
  return q.at({}) * Rational(2 * n * (2 * n - 1));
}

// --------------------------------------------------------------------------
// Conformal Killing fields, reduced system.
// --------------------------------------------------------------------------

namespace {

std::vector<CKSolution> ck_reduced_at(const AffineConnection& conn,
                                      const TensorField& phi,
                                      const CurvaturePack& pack,
                                      const PWSpace& pw, int cap) {
  const auto& chart = conn.chart;
  const int n = chart->dim();
  CoeffPool pool;
  TensorField w = ansatz_tensor(
      pool, chart, {Variance::Upper, Variance::Upper}, cap, AnsatzSym::Skew);
  TensorField v = ansatz_tensor(pool, chart, {Variance::Upper}, cap);
  TensorField alpha = ansatz_tensor(pool, chart, {Variance::Lower}, cap);
  Poly psi0 = ansatz_poly(pool, chart->vars, cap);

  LinearConditions lc(pool);
  // w^{R(C} W_{R(A}{}^{D)}{}_{B)} = 0, slots arranged (C, A, D, B).
  lc.add(w.product(pack.weyl)
             .contract(0, 2)
             .symmetrize({0, 2})
             .symmetrize({1, 3}));
  // (D_A w^{BC})_0 = 0.
  lc.add(covariant_derivative(conn, w).trace_free());
  if (n == 2) {
    // On surfaces the trace-free derivative of a skew w^{BC} vanishes
    // identically, and the bivector equation is the second-order scale
    // equation on the associated weight-1 density.  In w-form (the parallel
    // volume form cancels) it reads D_A nu^B + P_AR w^{RB} = 0.
    lc.add(covariant_derivative(conn, coupling_nu(conn, w)) +
           pack.schouten.product(w).contract(1, 2));
  }
  // (D_(A D_B) v^C + P_AB v^C + v^R W_{R(A}{}^C{}_{B)})_0 = -(F(w,Phi)^C_AB)_0,
  // with F slots (A, B, C).
  TensorField ddv = covariant_derivative(conn, covariant_derivative(conn, v))
                        .symmetrize({0, 1});
  TensorField pv = pack.schouten.product(v);
  TensorField vw =
      v.product(pack.weyl).contract(0, 1).permute({0, 2, 1}).symmetrize(
          {0, 1});
  TensorField fw = coupling_F_w(conn, w, phi);
  lc.add((ddv + pv + vw + fw).trace_free());
  // D_(A alpha_B) + 1/2 (L_v Phi)_AB - 1/2 psi0 Phi_AB = 0.
  TensorField lv_phi = lie_derivative(conn, v, phi, 2, n + 1);
  lc.add(covariant_derivative(conn, alpha).symmetrize({0, 1}) +
         lv_phi * Rational(1, 2) - phi * (psi0 * Rational(1, 2)));
  // D_A psi0 = 2/(n+1) F(w,Phi)^R{}_{AR}.
  TensorField dpsi =
      covariant_derivative(conn, TensorField::scalar(chart, psi0));
  TensorField ftr = coupling_F_w(conn, w, phi).contract(2, 1);
  lc.add(dpsi - ftr * Rational(2, n + 1));

  std::vector<CKSolution> basis;
  for (const auto& assign : lc.solve()) {
    CKSolution sol;
    sol.w = substitute_coeffs(w, assign, pool);
    sol.v = substitute_coeffs(v, assign, pool);
    sol.alpha = substitute_coeffs(alpha, assign, pool);
    sol.psi0 = substitute_coeffs(psi0, assign, pool);
    sol.lift = lift_plus(pw, sol.w) + lift_zero(pw, sol.v, sol.w, sol.psi0) +
               lift_minus(pw, sol.alpha);
    basis.push_back(std::move(sol));
  }
  return basis;
}

}  // namespace

CKResult conformal_killing_reduced(const AffineConnection& conn,
                                   const TensorField& phi, int cap,
                                   bool witness) {
  CurvaturePack pack = curvature_pack(conn);
  PWSpace pw = build_pw(conn, phi);
  CKResult res;
  res.cap = cap;
  res.basis = ck_reduced_at(conn, phi, pack, pw, cap);
  if (witness) {
    auto next = ck_reduced_at(conn, phi, pack, pw, cap + 1);
    res.stabilized = (next.size() == res.basis.size());
  }
  return res;
}

// --------------------------------------------------------------------------
// Direct metric-level solvers.
// --------------------------------------------------------------------------

namespace {

TensorField total_vector_ansatz(CoeffPool& pool, const PWSpace& pw, int cap) {
  const int n = pw.n();
  std::vector<std::string> xvars(pw.total->vars.begin(),
                                 pw.total->vars.begin() + n);
  std::vector<std::string> pvars(pw.total->vars.begin() + n,
                                 pw.total->vars.end());
  TensorField v(pw.total, {Variance::Upper});
  for (int a = 0; a < 2 * n; ++a) {
    v.at({a}) = ansatz_poly2(pool, xvars, cap, pvars, 2);
  }
  return v;
}

std::vector<TensorField> vector_solve_at(
    CoeffPool& pool, const TensorField& ansatz, const TensorField& residual) {
  LinearConditions lc(pool);
  lc.add(residual);
  std::vector<TensorField> basis;
  for (const auto& assign : lc.solve()) {
    basis.push_back(substitute_coeffs(ansatz, assign, pool));
  }
  return basis;
}

}  // namespace

VectorBasis conformal_killing_direct(const PWSpace& pw, int cap,
                                     bool witness) {
  auto run = [&](int c) {
    CoeffPool pool;
    TensorField v = total_vector_ansatz(pool, pw, c);
    return vector_solve_at(pool, v, conformal_killing_residual(pw, v));
  };
  VectorBasis res;
  res.cap = cap;
  res.basis = run(cap);
  if (witness) res.stabilized = (run(cap + 1).size() == res.basis.size());
  return res;
}

VectorBasis killing_direct(const PWSpace& pw, int cap, bool witness) {
  auto run = [&](int c) {
    CoeffPool pool;
    TensorField v = total_vector_ansatz(pool, pw, c);
    return vector_solve_at(pool, v, lie_metric(pw, v));
  };
  VectorBasis res;
  res.cap = cap;
  res.basis = run(cap);
  if (witness) res.stabilized = (run(cap + 1).size() == res.basis.size());
  return res;
}

// --------------------------------------------------------------------------
// Base symmetries.
// --------------------------------------------------------------------------

namespace {

VectorBasis base_symmetries(const AffineConnection& conn, int cap,
                            bool witness, bool projective) {
  CurvaturePack pack = curvature_pack(conn);
  auto run = [&](int c) {
    CoeffPool pool;
    TensorField v =
        ansatz_tensor(pool, conn.chart, {Variance::Upper}, c);
    TensorField ddv =
        covariant_derivative(conn, covariant_derivative(conn, v));
    TensorField residual;
    if (projective) {
      TensorField vw = v.product(pack.weyl)
                           .contract(0, 1)
                           .permute({0, 2, 1})
                           .symmetrize({0, 1});
      residual =
          (ddv.symmetrize({0, 1}) + pack.schouten.product(v) + vw).trace_free();
    } else {
      // v^S R_SA{}^C{}_B with slots arranged (A, B, C) -> (A, C, B).
      TensorField vr =
          v.product(pack.riemann).contract(0, 1).permute({0, 2, 1});
      residual = ddv + vr;
    }
    return vector_solve_at(pool, v, residual);
  };
  VectorBasis res;
  res.cap = cap;
  res.basis = run(cap);
  if (witness) res.stabilized = (run(cap + 1).size() == res.basis.size());
  return res;
}

}  // namespace

VectorBasis affine_symmetries(const AffineConnection& conn, int cap,
                              bool witness) {
  return base_symmetries(conn, cap, witness, /*projective=*/false);
}

VectorBasis projective_symmetries(const AffineConnection& conn, int cap,
                                  bool witness) {
  return base_symmetries(conn, cap, witness, /*projective=*/true);
}

bool divergence_constant(const AffineConnection& conn, const TensorField& v) {
  TensorField div = covariant_derivative(conn, v).contract(1, 0);
  for (const auto& var : conn.chart->vars) {
    if (!div.at({}).diff(var).is_zero()) return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// Flatness criterion.
// --------------------------------------------------------------------------

FlatnessReport is_conformally_flat(const AffineConnection& conn,
                                   const TensorField& phi) {
  CurvaturePack pack = curvature_pack(conn);
  FlatnessReport rep;
  rep.projectively_flat = (conn.chart->dim() >= 3) ? pack.weyl.is_zero()
                                                   : pack.cotton.is_zero();
  rep.b2_vanishes = b2_twoform(conn, pack, phi).is_zero();
  return rep;
}

}  // namespace pwf
