#include "pwforge/walker.hpp"

#include <stdexcept>

namespace pwf {

ChartPtr total_chart(const ChartPtr& base) {
  std::vector<std::string> vars = base->vars;
  for (int a = 0; a < base->dim(); ++a)
    vars.push_back("p" + std::to_string(a + 1));
  return make_chart("total" + std::to_string(base->dim()), std::move(vars));
}

TensorField pullback(const ChartPtr& total, const TensorField& base_tensor) {
  for (auto v : base_tensor.indices())
    if (v != Variance::Lower)
      throw std::invalid_argument("pullback needs a fully covariant tensor");
  int n = base_tensor.dim();
  TensorField r(total, base_tensor.indices());
  int rk = r.rank();
  if (rk == 0) {
    r.at({}) = base_tensor.at({});
    return r;
  }
  std::vector<int> mi(rk, 0);
  do {
    bool horizontal = true;
    for (int s = 0; s < rk; ++s)
      if (mi[s] >= n) horizontal = false;
    if (horizontal) r.at(mi) = base_tensor.at(mi);
  } while (next_multi_index(mi, n));
  return r;
}

TensorField walker_inverse(const TensorField& g) {
  int m = g.dim();
  int n = m / 2;
  TensorField inv(g.chart(), {Variance::Upper, Variance::Upper});
  for (int A = 0; A < n; ++A) {
    inv.at({A, n + A}) = Poly(Rational(1));
    inv.at({n + A, A}) = Poly(Rational(1));
    for (int B = 0; B < n; ++B) inv.at({n + A, n + B}) = -g.at({A, B});
  }
  return inv;
}

AffineConnection levi_civita(const TensorField& g, const TensorField& g_inv) {
  auto dg = g.coordinate_derivative();  // (r, a, b) = d_r g_ab
  // U_{a r b} = d_a g_rb + d_b g_ra - d_r g_ab.
  auto u = dg + dg.permute({2, 1, 0}) - dg.permute({1, 0, 2});
  // Gamma_a{}^c{}_b = 1/2 g^{cr} U_{arb}.
  auto gamma = g_inv.product(u).contract(1, 3).permute({1, 0, 2}) *
               Rational(1, 2);
  return {g.chart(), gamma};
}

PWSpace build_pw(const AffineConnection& conn, const TensorField& phi) {
  conn.check();
  PWSpace pw;
  pw.base = conn.chart;
  pw.total = total_chart(pw.base);
  pw.base_conn = conn;
  pw.phi = phi;
  int n = pw.n();

  TensorField g(pw.total, {Variance::Lower, Variance::Lower});
  for (int A = 0; A < n; ++A) {
    g.at({A, n + A}) = Poly(Rational(1));
    g.at({n + A, A}) = Poly(Rational(1));
    for (int B = 0; B < n; ++B) {
      Poly xx;
      for (int C = 0; C < n; ++C) {
        const Poly& ga = conn.gamma.at({A, C, B});
        if (!ga.is_zero())
          xx -= ga * Poly("p" + std::to_string(C + 1)) * Rational(2);
      }
      g.at({A, B}) = xx;
    }
  }
  pw.g_std = g;
  if (!phi.is_zero()) {
    auto phi_tot = pullback(pw.total, phi);
    pw.g = g + phi_tot;
  } else {
    pw.g = g;
  }
  pw.g_inv = walker_inverse(pw.g);
  pw.g_std_inv = walker_inverse(pw.g_std);
  pw.lc = levi_civita(pw.g, pw.g_inv);
  pw.lc_std = levi_civita(pw.g_std, pw.g_std_inv);
  return pw;
}

TensorField horizontal_lift(const PWSpace& pw, const TensorField& upsilon) {
  int n = pw.n();
  TensorField r(pw.total, {Variance::Upper});
  for (int A = 0; A < n; ++A) r.at({A}) = upsilon.at({A});
  for (int B = 0; B < n; ++B) {
    Poly comp;
    for (int A = 0; A < n; ++A)
      for (int C = 0; C < n; ++C) {
        const Poly& ga = pw.base_conn.gamma.at({A, C, B});
        if (!ga.is_zero())
          comp += upsilon.at({A}) * ga * Poly("p" + std::to_string(C + 1));
      }
    r.at({n + B}) = comp;
  }
  return r;
}

TensorField vertical_lift(const PWSpace& pw, const TensorField& beta) {
  int n = pw.n();
  TensorField r(pw.total, {Variance::Upper});
  for (int A = 0; A < n; ++A) r.at({n + A}) = beta.at({A});
  return r;
}

TensorField k_field(const PWSpace& pw) {
  int n = pw.n();
  TensorField r(pw.total, {Variance::Upper});
  for (int A = 0; A < n; ++A)
    r.at({n + A}) = Poly("p" + std::to_string(A + 1)) * Rational(2);
  return r;
}

HorVert decompose_vector(const PWSpace& pw, const TensorField& v) {
  int n = pw.n();
  HorVert hv;
  for (int A = 0; A < n; ++A) hv.upsilon.push_back(v.at({A}));
  for (int B = 0; B < n; ++B) {
    Poly beta = v.at({n + B});
    for (int A = 0; A < n; ++A)
      for (int C = 0; C < n; ++C) {
        const Poly& ga = pw.base_conn.gamma.at({A, C, B});
        if (!ga.is_zero())
          beta -= hv.upsilon[size_t(A)] * ga *
                  Poly("p" + std::to_string(C + 1));
      }
    hv.beta.push_back(beta);
  }
  return hv;
}

MetricCurvature metric_curvature(const TensorField& g,
                                 const TensorField& g_inv,
                                 const AffineConnection& lc) {
  int m = g.dim();
  MetricCurvature mc;
  auto dg = lc.gamma.coordinate_derivative();
  auto gg = lc.gamma.product(lc.gamma).contract(2, 4).permute({0, 2, 1, 3});
  mc.riemann = (dg + gg).alternate({0, 1}) * Rational(2);
  mc.riemann_lower =
      mc.riemann.product(g).contract(2, 4).permute({0, 1, 3, 2});
  mc.ricci = mc.riemann.contract(0, 2);
  mc.scal = g_inv.product(mc.ricci).contract(0, 2).contract(0, 1).at({});
  mc.schouten = (mc.ricci - g * (mc.scal * Rational(1, 2 * (m - 1)))) *
                Rational(1, m - 2);
  // g_ac P_bd arranged as (a,b,c,d), then skewed over both pairs.
  auto gp = g.product(mc.schouten).permute({0, 2, 1, 3});
  mc.weyl_lower =
      mc.riemann_lower - gp.pair_skew(0, 1, 2, 3) * Rational(4);
  return mc;
}

TensorField difference_tensor(const PWSpace& pw) {
  return pw.lc.gamma - pw.lc_std.gamma;
}

TensorField lift_plus(const PWSpace& pw, const TensorField& w) {
  int n = pw.n();
  auto nu = coupling_nu(pw.base_conn, w);
  TensorField upsilon(pw.base, {Variance::Upper});
  TensorField beta(pw.base, {Variance::Lower});
  for (int A = 0; A < n; ++A) {
    Poly u;
    for (int B = 0; B < n; ++B)
      u += w.at({A, B}) * Poly("p" + std::to_string(B + 1));
    upsilon.at({A}) = u;
    // psi_A{}^{BC} p_B p_C with psi_A{}^{BC} = delta_A^{(B} nu^{C)} gives
    // p_A (nu^C p_C).
    Poly b;
    for (int C = 0; C < n; ++C)
      b += nu.at({C}) * Poly("p" + std::to_string(C + 1));
    beta.at({A}) = b * Poly("p" + std::to_string(A + 1));
  }
  return horizontal_lift(pw, upsilon) + vertical_lift(pw, beta);
}

TensorField lift_zero(const PWSpace& pw, const TensorField& v,
                      const TensorField& w, const Poly& psi0) {
  int n = pw.n();
  auto dv = covariant_derivative(pw.base_conn, v);  // (A, upB)
  auto core = dv;
  if (!pw.phi.is_zero() && !w.is_zero()) {
    // w^{SB} Phi_SA arranged as (A, upB).
    core += w.product(pw.phi).contract(0, 2).permute({1, 0});
  }
  Poly divv = dv.contract(0, 1).at({});
  auto delta = TensorField::kronecker(pw.base);
  auto phi_map =
      -core.trace_free() +
      delta * (divv * Rational(n - 1, n * (n + 1)) + psi0);
  TensorField beta(pw.base, {Variance::Lower});
  for (int A = 0; A < n; ++A) {
    Poly b;
    for (int B = 0; B < n; ++B)
      b += phi_map.at({A, B}) * Poly("p" + std::to_string(B + 1));
    beta.at({A}) = b;
  }
  return horizontal_lift(pw, v) + vertical_lift(pw, beta);
}

TensorField lift_minus(const PWSpace& pw, const TensorField& alpha) {
  return vertical_lift(pw, alpha);
}

TensorField lie_metric(const PWSpace& pw, const TensorField& v) {
  auto vlow = pw.g.product(v).contract(1, 2);
  return covariant_derivative(pw.lc, vlow).symmetrize({0, 1}) * Rational(2);
}

TensorField conformal_killing_residual(const PWSpace& pw,
                                       const TensorField& v) {
  auto L = lie_metric(pw, v);
  Poly tr = pw.g_inv.product(L).contract(0, 2).contract(0, 1).at({});
  return L - pw.g * (tr * Rational(1, 2 * pw.n()));
}

RelationsReport check_relations(const PWSpace& pw) {
  RelationsReport rep;
  int n = pw.n();
  MetricCurvature bar = metric_curvature(pw.g, pw.g_inv, pw.lc);
  MetricCurvature til = metric_curvature(pw.g_std, pw.g_std_inv, pw.lc_std);
  TensorField Phi = pullback(pw.total, pw.phi);

  // Riemann relation.  DD(c,e,f,g) = Ds_c Ds_e Phi_fg.
  auto dd = covariant_derivative(pw.lc_std, covariant_derivative(pw.lc_std, Phi));
  auto t1 = dd.permute({1, 2, 0, 3}).alternate({0, 1});  // Ds_c Ds_[a Phi_b]d
  auto t2 = dd.permute({1, 2, 3, 0}).alternate({0, 1});  // Ds_d Ds_[a Phi_b]c
  // R(std)_ab{}^r{}_[c Phi_d]r.
  auto t3 = til.riemann.product(Phi).contract(2, 5).alternate({2, 3});
  rep.riemann =
      (bar.riemann_lower - til.riemann_lower + t1 - t2 + t3).is_zero();

  // In this curvature normalization the metric Ricci is twice the pullback
  // of the Ricci of the base connection.
  CurvaturePack base_pack = curvature_pack(pw.base_conn);
  rep.ricci =
      (bar.ricci - pullback(pw.total, base_pack.ricci) * Rational(2)).is_zero();

  // Weyl relation.  Raise the third slot of the unmodified Weyl tensor:
  // Wup(a,b,e,r) = W(std)_ab{}^r{}_e.
  auto wup = til.weyl_lower.product(pw.g_std_inv).contract(4, 2);
  auto wp1 = wup.product(Phi).contract(3, 5).alternate({2, 3});
  auto wp2 = wp1.permute({2, 3, 0, 1});
  auto b2 = pullback(pw.total,
                     b2_twoform(pw.base_conn, base_pack, pw.phi));
  rep.weyl = (bar.weyl_lower - til.weyl_lower + b2 * Rational(2) +
              (wp1 + wp2) * Rational(1, 2))
                 .is_zero();

  // Verticality of the modified Weyl tensor in the first and last slots.
  rep.vertical = true;
  std::vector<int> mi = {0, 0, 0, 0};
  for (int a = n; a < 2 * n && rep.vertical; ++a)
    for (int b = 0; b < 2 * n && rep.vertical; ++b)
      for (int c = 0; c < 2 * n && rep.vertical; ++c)
        for (int d = n; d < 2 * n && rep.vertical; ++d) {
          mi = {a, b, c, d};
          if (!bar.weyl_lower.at(mi).is_zero()) rep.vertical = false;
        }
  return rep;
}

}  // namespace pwf
