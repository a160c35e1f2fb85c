#include "pwforge/ambient.hpp"

#include <stdexcept>
#include <utility>

namespace pwf {

namespace {

// Element num / unit^up of the localization at `unit`.  No reduction is
// performed: zero testing only looks at the numerator.
struct UF {
  Poly num;
  int up = 0;
};

class Ring {
 public:
  Ring(Poly unit, std::vector<std::string> vars)
      : u_(std::move(unit)), vars_(std::move(vars)) {
    trivial_ = u_.is_constant() && u_.constant_value() == 1;
    for (const auto& v : vars_) du_.push_back(u_.diff(v));
  }

  const std::vector<std::string>& vars() const { return vars_; }

  UF from(Poly p) const { return UF{std::move(p), 0}; }

  UF add(const UF& a, const UF& b) const {
    if (trivial_) return UF{a.num + b.num, 0};
    int up = std::max(a.up, b.up);
    return UF{lift(a, up) + lift(b, up), up};
  }
  UF sub(const UF& a, const UF& b) const {
    if (trivial_) return UF{a.num - b.num, 0};
    int up = std::max(a.up, b.up);
    return UF{lift(a, up) - lift(b, up), up};
  }
  UF mul(const UF& a, const UF& b) const {
    if (a.num.is_zero() || b.num.is_zero()) return UF{};
    return UF{a.num * b.num, a.up + b.up};
  }
  UF neg(const UF& a) const { return UF{-a.num, a.up}; }
  UF scale(const UF& a, const Rational& c) const { return UF{a.num * c, a.up}; }

  UF diff(const UF& a, size_t var_idx) const {
    Poly d = a.num.diff(vars_[var_idx]);
    if (trivial_ || a.up == 0) return UF{std::move(d), a.up};
    // d(num u^-k) = (num' u - k num u') u^-(k+1)
    return UF{d * u_ - Rational(a.up) * a.num * du_[var_idx], a.up + 1};
  }

  bool is_zero(const UF& a) const { return a.num.is_zero(); }

 private:
  Poly lift(const UF& a, int up) const {
    Poly out = a.num;
    for (int k = a.up; k < up; ++k) out *= u_;
    return out;
  }

  Poly u_;
  bool trivial_ = true;
  std::vector<std::string> vars_;
  std::vector<Poly> du_;
};

using UFMat = std::vector<std::vector<UF>>;

// Inverse of the ambient metric from its block structure: the (t, rho)
// block [[2 rho, t], [t, 0]] and the spatial block t^2 [[A, u I], [u I, 0]]
// with u = am.unit.  The caller certifies the result by multiplying back.
UFMat block_inverse(const AmbientMetric& am, const Ring& ring) {
  int n = am.n;
  int m = 2 * n + 2;
  UFMat inv(m, std::vector<UF>(m));
  Poly t = Poly::parse("t");
  Poly tinv = Poly::parse("t^-1");
  Poly tinv2 = tinv * tinv;
  // (t, rho) block.
  inv[0][1] = inv[1][0] = ring.from(tinv);
  inv[1][1] = ring.from(Poly::parse("-2*rho") * tinv2);
  // Spatial block: [[A, u I],[u I, 0]]^-1 = [[0, u^-1 I],[u^-1 I, -u^-2 A]].
  for (int i = 0; i < n; ++i) {
    inv[2 + i][2 + n + i] = UF{tinv2, 1};
    inv[2 + n + i][2 + i] = UF{tinv2, 1};
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // A_ij = g[2+i][2+j] / t^2.
      Poly a = am.g[2 + i][2 + j] * tinv2;
      if (!a.is_zero()) inv[2 + n + i][2 + n + j] = UF{-a * tinv2, 2};
    }
  return inv;
}

void check_shape(const AmbientMetric& am) {
  int n = am.n;
  int m = 2 * n + 2;
  Poly t = Poly::parse("t");
  Poly t2 = t * t;
  if (am.g[0][0] != Poly::parse("2*rho") || am.g[0][1] != t ||
      !am.g[1][1].is_zero())
    throw std::domain_error("ambient metric not in normal form");
  for (int a = 2; a < m; ++a)
    if (!am.g[0][a].is_zero() || !am.g[1][a].is_zero())
      throw std::domain_error("ambient metric not in normal form");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!am.g[2 + n + i][2 + n + j].is_zero())
        throw std::domain_error("ambient inversion failure: pp block");
      Poly want = (i == j) ? am.unit * t2 : Poly();
      if (am.g[2 + i][2 + n + j] != want)
        throw std::domain_error("ambient inversion failure: xp block");
    }
}

// Christoffel symbols Gamma^c_ab over the localized ring.
std::vector<UFMat> christoffel(const AmbientMetric& am, const UFMat& inv,
                               const Ring& ring) {
  int m = 2 * am.n + 2;
  // dg[a][b][c] = d_c g_ab as ring elements.
  std::vector<UFMat> dg(m, UFMat(m, std::vector<UF>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (am.g[a][b].is_zero()) continue;
      for (int c = 0; c < m; ++c)
        dg[a][b][c] = ring.from(am.g[a][b].diff(ring.vars()[c]));
    }
  std::vector<UFMat> gamma(m, UFMat(m, std::vector<UF>(m)));
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        UF acc;
        for (int d = 0; d < m; ++d) {
          if (ring.is_zero(inv[c][d])) continue;
          UF s = ring.add(dg[d][b][a], dg[a][d][b]);
          s = ring.sub(s, dg[a][b][d]);
          acc = ring.add(acc, ring.mul(inv[c][d], s));
        }
        acc = ring.scale(acc, Rational(1, 2));
        gamma[c][a][b] = acc;
        gamma[c][b][a] = std::move(acc);
      }
  return gamma;
}

struct AmbientDerived {
  Ring ring;
  UFMat inv;
  std::vector<UFMat> gamma;
};

AmbientDerived derive(const AmbientMetric& am) {
  check_shape(am);
  Ring ring(am.unit, am.chart->vars);
  UFMat inv = block_inverse(am, ring);
  int m = 2 * am.n + 2;
  // Certify the inverse: G . G^-1 = I exactly.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      UF acc;
      for (int c = 0; c < m; ++c)
        acc = ring.add(acc, ring.mul(ring.from(am.g[a][c]), inv[c][b]));
      UF want = ring.from(a == b ? Poly::constant(Rational(1)) : Poly());
      if (!ring.is_zero(ring.sub(acc, want)))
        throw std::domain_error("ambient inversion failure");
    }
  auto gamma = christoffel(am, inv, ring);
  return AmbientDerived{std::move(ring), std::move(inv), std::move(gamma)};
}

// Lowered homothety k_a = 2 p_A on the x-slots (base dimension 2), as an
// x-block matrix contribution alpha * k k and alpha dalpha (.) k.
std::vector<std::vector<Poly>> xx_block_kk(const Poly& alpha, int n) {
  std::vector<std::vector<Poly>> out(n, std::vector<Poly>(n));
  std::vector<Poly> k;
  for (int i = 0; i < n; ++i)
    k.push_back(Poly::parse("2*p" + std::to_string(i + 1)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = alpha * k[i] * k[j];
  return out;
}

}  // namespace

AmbientMetric build_ambient(const AffineConnection& conn,
                            const TensorField& phi) {
  PWSpace pw = build_pw(conn, phi);
  int n = pw.n();
  CurvaturePack pack = curvature_pack(conn);

  AmbientMetric am;
  am.n = n;
  std::vector<std::string> vars = {"t", "rho"};
  for (const auto& v : pw.total->vars) vars.push_back(v);
  am.chart = make_chart("ambient" + std::to_string(n), vars);
  am.unit = Poly::constant(Rational(1));

  int m = 2 * n + 2;
  am.g.assign(m, std::vector<Poly>(m));
  am.g[0][0] = Poly::parse("2*rho");
  am.g[0][1] = am.g[1][0] = Poly::parse("t");
  Poly t2 = Poly::parse("t^2");
  Poly tworho = Poly::parse("2*rho");
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      Poly entry = pw.g.at({i, j});
      if (i < n && j < n) entry += tworho * pack.schouten.at({i, j});
      am.g[2 + i][2 + j] = entry * t2;
    }
  return am;
}

AmbientMetric build_ambient_extra(const AffineConnection& conn,
                                  const TensorField& phi, const Poly& alpha,
                                  const Rational& c) {
  PWSpace pw = build_pw(conn, phi);
  int n = pw.n();
  if (n != 2)
    throw std::domain_error("extra-modified ambient requires base dimension 2");

  // Extra-modified base metric g_bb = g + alpha k k (x-block only).
  TensorField gbb = pw.g;
  auto kk = xx_block_kk(alpha, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gbb.at({i, j}) += kk[i][j];
  TensorField gbb_inv = walker_inverse(gbb);
  AffineConnection lc = levi_civita(gbb, gbb_inv);
  MetricCurvature mc = metric_curvature(gbb, gbb_inv, lc);

  // Laplacian of alpha with respect to the unmodified metric.
  Poly lap;
  {
    const auto& vars = pw.total->vars;
    int m = 2 * n;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Poly gi = pw.g_std_inv.at({a, b});
        if (gi.is_zero()) continue;
        Poly hess = alpha.diff(vars[a]).diff(vars[b]);
        for (int d = 0; d < m; ++d)
          hess -= pw.lc_std.gamma.at({a, d, b}) * alpha.diff(vars[d]);
        lap += gi * hess;
      }
  }

  // dalpha (.) k with the half-symmetrized product convention.
  std::vector<std::vector<Poly>> dak(2 * n, std::vector<Poly>(2 * n));
  {
    const auto& vars = pw.total->vars;
    std::vector<Poly> k(2 * n), da(2 * n);
    for (int i = 0; i < n; ++i) k[i] = Poly::parse("2*p" + std::to_string(i + 1));
    for (int a = 0; a < 2 * n; ++a) da[a] = alpha.diff(vars[a]);
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b)
        dak[a][b] = (da[a] * k[b] + k[a] * da[b]) / Rational(2);
  }

  AmbientMetric am;
  am.n = n;
  std::vector<std::string> vars = {"t", "rho"};
  for (const auto& v : pw.total->vars) vars.push_back(v);
  am.chart = make_chart("ambient-extra", vars);

  int m = 2 * n + 2;
  am.g.assign(m, std::vector<Poly>(m));
  am.g[0][0] = Poly::parse("2*rho");
  am.g[0][1] = am.g[1][0] = Poly::parse("t");
  Poly t2 = Poly::parse("t^2");
  Poly rho = Poly::parse("rho");
  Poly rho2 = rho * rho;
  // rho^2 block: alpha^2 g_bb + 2 alpha dalpha (.) k plus c times the
  // deformation (Lap alpha) g_bb - 2 alpha dalpha (.) dalpha.  The
  // deformation direction was certified exactly (Ricci-flat for a symbolic
  // multiple); with dalpha (.) k in its place flatness fails.
  Poly a2 = alpha * alpha + c * lap;  // rho^2 coefficient of g_bb
  const auto& tvars = pw.total->vars;
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      Poly entry = gbb.at({i, j});
      entry += Rational(2) * rho * mc.schouten.at({i, j});
      Poly dada = alpha.diff(tvars[i]) * alpha.diff(tvars[j]);
      entry += rho2 * (a2 * gbb.at({i, j}) + Rational(2) * alpha * dak[i][j] -
                       Rational(2) * c * dada * alpha);
      am.g[2 + i][2 + j] = entry * t2;
    }
  // Unit: scalar factor on the xp block (the pure-trace part survives the
  // rho^2 term through g_bb's pairing block).
  am.unit = Poly::constant(Rational(1)) + rho2 * a2;
  // The rho-linear Schouten term may also contribute to the xp block.
  Poly schouten_xp = mc.schouten.at({0, n});
  am.unit += Rational(2) * rho * schouten_xp;
  return am;
}

RicciNumerators ambient_ricci(const AmbientMetric& am) {
  AmbientDerived d = derive(am);
  const Ring& ring = d.ring;
  int m = 2 * am.n + 2;
  RicciNumerators out;
  out.num.assign(m, std::vector<Poly>(m));
  out.upow.assign(m, std::vector<int>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      // R_ab = d_c Gamma^c_ab - d_a Gamma^c_cb
      //        + Gamma^c_cd Gamma^d_ab - Gamma^c_ad Gamma^d_cb.
      UF acc;
      for (int c2 = 0; c2 < m; ++c2) {
        acc = ring.add(acc, ring.diff(d.gamma[c2][a][b], size_t(c2)));
        acc = ring.sub(acc, ring.diff(d.gamma[c2][c2][b], size_t(a)));
        for (int e = 0; e < m; ++e) {
          acc = ring.add(acc, ring.mul(d.gamma[c2][c2][e], d.gamma[e][a][b]));
          acc = ring.sub(acc, ring.mul(d.gamma[c2][a][e], d.gamma[e][c2][b]));
        }
      }
      out.num[a][b] = out.num[b][a] = acc.num;
      out.upow[a][b] = out.upow[b][a] = acc.up;
    }
  return out;
}

RicciReport verify_ricci_flat(const AmbientMetric& am) {
  RicciNumerators ric = ambient_ricci(am);
  int m = 2 * am.n + 2;
  RicciReport rep;
  rep.flat = true;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      if (!ric.num[a][b].is_zero()) {
        rep.flat = false;
        ++rep.nonzero_components;
        if (rep.sample.empty()) rep.sample = ric.num[a][b].str();
      }
  return rep;
}

bool check_log_t_harmonic(const AmbientMetric& am) {
  AmbientDerived d = derive(am);
  const Ring& ring = d.ring;
  int m = 2 * am.n + 2;
  // d_a log t = t^-1 delta_a^t;  d_t d_t log t = -t^-2.
  Poly tinv = Poly::parse("t^-1");
  UF acc = ring.mul(d.inv[0][0], ring.from(-tinv * tinv));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (ring.is_zero(d.inv[a][b])) continue;
      UF term = ring.mul(d.inv[a][b], ring.mul(d.gamma[0][a][b], ring.from(tinv)));
      acc = ring.sub(acc, term);
    }
  return ring.is_zero(acc);
}

TensorField ambient_restriction(const AmbientMetric& am) {
  int n = am.n;
  std::vector<std::string> total_vars(am.chart->vars.begin() + 2,
                                      am.chart->vars.end());
  ChartPtr total = make_chart("pw" + std::to_string(n), total_vars);
  TensorField out(total, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j)
      out.at({i, j}) = am.g[2 + i][2 + j]
                           .subst("rho", Poly())
                           .subst("t", Poly::constant(Rational(1)));
  return out;
}

AmbientMetric perturb_ambient(const AmbientMetric& am, int i, int j,
                              const Poly& extra) {
  AmbientMetric out = am;
  out.g[i][j] += extra;
  if (i != j) out.g[j][i] += extra;
  return out;
}

}  // namespace pwf
