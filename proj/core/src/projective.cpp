#include "pwforge/projective.hpp"

#include <stdexcept>

namespace pwf {

AffineConnection AffineConnection::flat(ChartPtr chart) {
  return {chart, TensorField(chart, {Variance::Lower, Variance::Upper,
                                     Variance::Lower})};
}

void AffineConnection::check() const {
  if (gamma.indices() !=
      std::vector<Variance>{Variance::Lower, Variance::Upper, Variance::Lower})
    throw std::invalid_argument("connection index pattern must be (L,U,L)");
  if (!(gamma.permute({2, 1, 0}) == gamma))
    throw std::invalid_argument("connection must be torsion-free");
}

AffineConnection projective_change(const AffineConnection& conn,
                                   const TensorField& upsilon) {
  if (upsilon.indices() != std::vector<Variance>{Variance::Lower})
    throw std::invalid_argument("Upsilon must be a one-form");
  auto delta = TensorField::kronecker(conn.chart);
  // delta_A^C Upsilon_B: product gives (A,C,B) directly.
  auto du = delta.product(upsilon);
  return {conn.chart, conn.gamma + du + du.permute({2, 1, 0})};
}

TensorField covariant_derivative(const AffineConnection& conn,
                                 const TensorField& T) {
  TensorField r = T.coordinate_derivative();
  int d = T.dim();
  int rk = T.rank();
  if (rk == 0) return r;
  std::vector<int> mi(rk + 1, 0);
  do {
    int a = mi[0];
    Poly corr;
    std::vector<int> src(mi.begin() + 1, mi.end());
    for (int s = 0; s < rk; ++s) {
      int orig = src[s];
      for (int R = 0; R < d; ++R) {
        src[s] = R;
        const Poly& g = (T.indices()[s] == Variance::Upper)
                            ? conn.gamma.at({a, orig, R})
                            : conn.gamma.at({a, R, orig});
        if (g.is_zero()) continue;
        if (T.indices()[s] == Variance::Upper)
          corr += g * T.at(src);
        else
          corr -= g * T.at(src);
      }
      src[s] = orig;
    }
    r.at(mi) += corr;
  } while (next_multi_index(mi, d));
  return r;
}

CurvaturePack curvature_pack(const AffineConnection& conn) {
  conn.check();
  int n = conn.chart->dim();
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");

  // dGamma_(A)(B,C,D) = d_A Gamma_B{}^C{}_D.
  auto dg = conn.gamma.coordinate_derivative();
  // GG_(A,C,B,D) = Gamma_A{}^C{}_R Gamma_B{}^R{}_D.
  auto gg = conn.gamma.product(conn.gamma).contract(2, 4);
  // gg has slots (A, C, B, D); bring to (A, B, C, D).
  gg = gg.permute({0, 2, 1, 3});
  CurvaturePack pack;
  pack.riemann = (dg + gg).alternate({0, 1}) * Rational(2);
  pack.ricci = pack.riemann.contract(0, 2);
  pack.special = pack.ricci.symmetrize({0, 1}) == pack.ricci;
  pack.schouten = pack.ricci * Rational(1, n - 1);

  auto delta = TensorField::kronecker(conn.chart);
  // P_AD delta_B^C with product slots (A, D, B, C) -> (A, B, C, D).
  auto pd = pack.schouten.product(delta).permute({0, 2, 3, 1});
  pack.weyl = pack.riemann + pd - pd.permute({1, 0, 2, 3});

  // Y_CAB = 2 D_[A P_B]C, computed as (A,B,C) then moved to (C,A,B).
  auto dp = covariant_derivative(conn, pack.schouten);
  pack.cotton = (dp.alternate({0, 1}) * Rational(2)).permute({2, 0, 1});
  return pack;
}

TensorField transform_weighted(const TensorField& T, const TensorField& DT,
                               int weight, const TensorField& upsilon) {
  TensorField r = DT;
  int d = T.dim();
  int rk = T.rank();
  std::vector<int> mi(rk + 1, 0);
  do {
    int a = mi[0];
    std::vector<int> base(mi.begin() + 1, mi.end());
    Poly corr = upsilon.at({a}) * T.at(base) * Rational(weight);
    for (int s = 0; s < rk; ++s) {
      if (T.indices()[s] == Variance::Upper) {
        corr += upsilon.at({a}) * T.at(base);
        if (base[s] == a) {
          std::vector<int> src = base;
          for (int R = 0; R < d; ++R) {
            src[s] = R;
            corr += upsilon.at({R}) * T.at(src);
          }
        }
      } else {
        corr -= upsilon.at({a}) * T.at(base);
        std::vector<int> src = base;
        src[s] = a;
        corr -= upsilon.at({base[s]}) * T.at(src);
      }
    }
    r.at(mi) += corr;
  } while (next_multi_index(mi, d));
  return r;
}

TensorField lie_derivative(const AffineConnection& conn, const TensorField& v,
                           const TensorField& T, int weight, int divisor) {
  if (v.indices() != std::vector<Variance>{Variance::Upper})
    throw std::invalid_argument("Lie derivative needs an Upper vector");
  // Torsion-free connection: the standard Lie derivative may be written
  // with covariant derivatives throughout.
  auto dT = covariant_derivative(conn, T);
  auto dv = covariant_derivative(conn, v);  // (A lower, B upper)
  // v^R D_R T.
  TensorField r = v.product(dT).contract(0, 1);
  int d = T.dim();
  int rk = T.rank();
  if (rk > 0) {
    std::vector<int> mi(rk, 0);
    do {
      Poly corr;
      for (int s = 0; s < rk; ++s) {
        std::vector<int> src = mi;
        for (int R = 0; R < d; ++R) {
          src[s] = R;
          if (T.indices()[s] == Variance::Lower)
            corr += dv.at({mi[s], R}) * T.at(src);  // (D_{C_s} v^R) T_..R..
          else
            corr -= dv.at({R, mi[s]}) * T.at(src);  // -(D_R v^{B_s}) T^..R..
        }
      }
      r.at(mi) += corr;
    } while (next_multi_index(mi, d));
  }
  if (weight != 0) {
    Poly div = dv.contract(0, 1).at({});
    r -= T * (div * Rational(weight, divisor));
  }
  return r;
}

TensorField epsilon2_lower(ChartPtr chart) {
  if (chart->dim() != 2) throw std::invalid_argument("epsilon2 needs dim 2");
  TensorField e(chart, {Variance::Lower, Variance::Lower});
  e.at({0, 1}) = Poly(Rational(1));
  e.at({1, 0}) = Poly(Rational(-1));
  return e;
}

TensorField epsilon2_upper(ChartPtr chart) {
  if (chart->dim() != 2) throw std::invalid_argument("epsilon2 needs dim 2");
  TensorField e(chart, {Variance::Upper, Variance::Upper});
  e.at({0, 1}) = Poly(Rational(1));
  e.at({1, 0}) = Poly(Rational(-1));
  return e;
}

Poly star_bivector(const TensorField& w) {
  if (w.indices() != std::vector<Variance>{Variance::Upper, Variance::Upper})
    throw std::invalid_argument("star_bivector needs w^{AB}");
  auto e = epsilon2_lower(w.chart());
  return (e.at({0, 1}) * w.at({0, 1}) + e.at({1, 0}) * w.at({1, 0})) *
         Rational(1, 2);
}

Poly star_twoform(const TensorField& f) {
  if (f.indices() != std::vector<Variance>{Variance::Lower, Variance::Lower})
    throw std::invalid_argument("star_twoform needs F_{AB}");
  auto e = epsilon2_upper(f.chart());
  return (e.at({0, 1}) * f.at({0, 1}) + e.at({1, 0}) * f.at({1, 0})) *
         Rational(1, 2);
}

TensorField unstar_bivector(ChartPtr chart, const Poly& s) {
  return epsilon2_upper(chart) * s;
}

TensorField unstar_twoform(ChartPtr chart, const Poly& s) {
  return epsilon2_lower(chart) * s;
}

}  // namespace pwf
