#include "pwforge/bgg.hpp"

#include <stdexcept>

namespace pwf {

TensorField b1_scalar(const AffineConnection& conn, const CurvaturePack& pack,
                      const TensorField& tau) {
  auto ddtau = covariant_derivative(conn, covariant_derivative(conn, tau));
  return ddtau + pack.schouten * tau.at({});
}

TensorField b2_scalar(const AffineConnection& conn, const TensorField& T) {
  return covariant_derivative(conn, T).alternate({0, 1});
}

TensorField comp_scalar_rhs(const AffineConnection& conn,
                            const CurvaturePack& pack,
                            const TensorField& tau) {
  auto dtau = covariant_derivative(conn, tau);
  // W_CA{}^R{}_B D_R tau with result slots (C, A, B).
  auto wd = pack.weyl.product(dtau).contract(2, 4);
  // Y_BCA tau: cotton slots are (first, skew, skew) = (B, C, A) here; bring
  // to (C, A, B).
  auto y = (pack.cotton * tau.at({})).permute({1, 2, 0});
  return (wd - y) * Rational(-1, 2);
}

TensorField b1_oneform(const AffineConnection& conn, const TensorField& phi) {
  return covariant_derivative(conn, phi).symmetrize({0, 1});
}

TensorField b2_twoform(const AffineConnection& conn, const CurvaturePack& pack,
                       const TensorField& Phi) {
  // D_A D_C Phi_BD + P_AC Phi_BD, slots (A, C, B, D) -> (A, B, C, D).
  auto ddphi = covariant_derivative(conn, covariant_derivative(conn, Phi));
  auto core = (ddphi + pack.schouten.product(Phi)).permute({0, 2, 1, 3});
  return core.pair_skew(0, 1, 2, 3).window_part();
}

TensorField b2_twoform_explicit(const AffineConnection& conn,
                                const CurvaturePack& pack,
                                const TensorField& Phi) {
  auto ddphi = covariant_derivative(conn, covariant_derivative(conn, Phi));
  auto core = (ddphi + pack.schouten.product(Phi)).permute({0, 2, 1, 3});
  // 1/4 W_AB{}^R{}_C Phi_DR - 1/4 W_CD{}^R{}_A Phi_BR, slots (A,B,C,D).
  auto wphi = pack.weyl.product(Phi).contract(2, 5);  // W_xy{}^R{}_z Phi_wR
  // wphi slots: (x, y, z, w) = (A, B, C, D) for the first term ...
  auto t1 = wphi;
  // ... and (C, D, A, B) for the second.
  auto t2 = wphi.permute({2, 3, 0, 1});
  return (core + (t1 - t2) * Rational(1, 4)).pair_skew(0, 1, 2, 3);
}

std::vector<TensorField> comp_oneform_terms(const AffineConnection& conn,
                                            const CurvaturePack& pack,
                                            const TensorField& phi) {
  auto dphi = covariant_derivative(conn, phi);
  auto skew = dphi.alternate({0, 1});   // D_[R phi_D]
  auto sym = dphi.symmetrize({0, 1});   // D_(D phi_R)
  std::vector<TensorField> t;
  // t

  // t1 = W_AB{}^R{}_C D_[R phi_D]                       slots (A,B,C,D)
  t.push_back(pack.weyl.product(skew).contract(2, 4));
  // t2 = W_CD{}^R{}_A D_[R phi_B]
  t.push_back(
      pack.weyl.product(skew).contract(2, 4).permute({2, 3, 0, 1}));
  // t3 = W_AB{}^R{}_C D_(D phi_R)
  t.push_back(pack.weyl.product(sym).contract(2, 5));
  // t4 = W_CD{}^R{}_A D_(B phi_R)
  t.push_back(pack.weyl.product(sym).contract(2, 5).permute({2, 3, 0, 1}));
  // t5 = (D_A W_CD{}^R{}_B) phi_R
  auto dW = covariant_derivative(conn, pack.weyl);
  t.push_back(dW.product(phi).contract(3, 5).permute({0, 3, 1, 2}));
  // t6 = phi_C Y_DAB
  t.push_back(phi.product(pack.cotton).permute({2, 3, 0, 1}));
  for (auto& x : t) x = x.pair_skew(0, 1, 2, 3);
  return t;
}

TensorField comp_oneform_rhs(const AffineConnection& conn,
                             const CurvaturePack& pack,
                             const TensorField& phi) {
  // Coefficients over comp_oneform_terms.  The six terms satisfy one linear
  // relation (the basis has rank 5), so this representative is not unique;
  // it was determined by an exact linear solve against the operator
  // composition on random special connections at n = 2 and n = 3, and the
  // identity is re-certified in the test suite.
  static const Rational k[6] = {Rational(-1), Rational(0),  Rational(1, 4),
                                Rational(1, 4), Rational(-1, 2),
                                Rational(-1, 2)};
  auto terms = comp_oneform_terms(conn, pack, phi);
  TensorField acc = terms[0] * k[0];
  for (int i = 1; i < 6; ++i) acc += terms[i] * k[i];
  return acc;
}

TensorField b1_vector(const AffineConnection& conn, const TensorField& xi) {
  return covariant_derivative(conn, xi).trace_free();
}

TensorField b2_vector(const AffineConnection& conn, const TensorField& Xi) {
  return covariant_derivative(conn, Xi).alternate({0, 1}).trace_free();
}

TensorField comp_vector_rhs(const CurvaturePack& pack, const TensorField& xi) {
  return pack.weyl.product(xi).contract(3, 4) * Rational(1, 2);
}

TensorField b1_bivector(const AffineConnection& conn, const TensorField& w) {
  return covariant_derivative(conn, w).trace_free();
}

TensorField b2_bivector(const AffineConnection& conn, const TensorField& V) {
  return covariant_derivative(conn, V).alternate({0, 1}).trace_free();
}

TensorField comp_bivector_rhs(const CurvaturePack& pack,
                              const TensorField& w) {
  // Q_CD{}^{AB} = W_CD{}^A{}_R w^{RB}; the closed form is
  // -(W_CD{}^{[A}{}_R w^{B]R})_0 = (alt_{AB} Q)_0.
  auto q = pack.weyl.product(w).contract(3, 4);
  return q.alternate({2, 3}).trace_free();
}

TensorField b1_adjoint(const AffineConnection& conn, const CurvaturePack& pack,
                       const TensorField& v) {
  auto ddv = covariant_derivative(conn, covariant_derivative(conn, v))
                 .symmetrize({0, 1});
  return (ddv + pack.schouten.product(v)).trace_free();
}

TensorField b1_adjoint_modified(const AffineConnection& conn,
                                const CurvaturePack& pack,
                                const TensorField& v) {
  auto ddv = covariant_derivative(conn, covariant_derivative(conn, v))
                 .symmetrize({0, 1});
  // v^R W_RA{}^C{}_B with slots (A, C, B) -> (A, B, C), then symmetrized.
  auto vw = v.product(pack.weyl).contract(0, 1).permute({0, 2, 1})
                .symmetrize({0, 1});
  return (ddv + pack.schouten.product(v) + vw).trace_free();
}

TensorField b2_adjoint(const AffineConnection& conn, const TensorField& V) {
  return covariant_derivative(conn, V).alternate({0, 1}).trace_free();
}

TensorField lie_weyl(const AffineConnection& conn, const CurvaturePack& pack,
                     const TensorField& v) {
  return lie_derivative(conn, v, pack.weyl, 0, conn.chart->dim() + 1);
}

TensorField comp_adjoint_rhs(const AffineConnection& conn,
                             const CurvaturePack& pack, const TensorField& v) {
  // 1/2 (L_v W)_DA{}^C{}_B, brought to the b2_adjoint slot order (D,A,B,C).
  return (lie_weyl(conn, pack, v) * Rational(1, 2)).permute({0, 1, 3, 2});
}

TensorField coupling_F_xi(const AffineConnection& conn, const TensorField& xi,
                          const TensorField& Phi) {
  int n = conn.chart->dim();
  auto dPhi = covariant_derivative(conn, Phi);  // (R, A, B)
  // S_ABR = D_(A Phi_B)R - 1/2 D_R Phi_AB.
  auto s = dPhi.symmetrize({0, 1}).permute({0, 1, 2}) -
           dPhi.permute({1, 2, 0}) * Rational(1, 2);
  auto f = xi.product(s).contract(0, 3);
  auto div = covariant_derivative(conn, xi).contract(0, 1).at({});
  return f + Phi * (div * Rational(1, n));
}

TensorField coupling_nu(const AffineConnection& conn, const TensorField& w) {
  int n = conn.chart->dim();
  return covariant_derivative(conn, w).contract(0, 1) * Rational(1, n - 1);
}

TensorField coupling_F_w(const AffineConnection& conn, const TensorField& w,
                         const TensorField& Phi) {
  auto dPhi = covariant_derivative(conn, Phi);
  auto s = dPhi.symmetrize({0, 1}) - dPhi.permute({1, 2, 0}) * Rational(1, 2);
  // w^{RC} S_ABR -> slots (C, A, B) -> (A, B, C).
  auto f = w.product(s).contract(0, 4).permute({1, 2, 0});
  auto nu = coupling_nu(conn, w);
  return f + Phi.product(nu);
}

WProlongation prolongation_check(const AffineConnection& conn,
                                 const CurvaturePack& pack,
                                 const TensorField& w) {
  int n = conn.chart->dim();
  auto nu = coupling_nu(conn, w);
  auto delta = TensorField::kronecker(conn.chart);
  WProlongation pr;
  auto dn = delta.product(nu);  // (A, upB, upC)
  pr.r1 = covariant_derivative(conn, w) -
          dn.alternate({1, 2}) * Rational(2);
  // w^{RS} W_RS{}^B{}_A, slots (upB, A) -> (A, upB).
  auto wW = w.product(pack.weyl).contract(0, 2).contract(0, 1).permute({1, 0});
  pr.trace_w = wW;
  pr.r2 = covariant_derivative(conn, nu) +
          pack.schouten.product(w).contract(1, 2);
  if (n > 2) pr.r2 += wW * Rational(1, 2 * (n - 2));
  return pr;
}

}  // namespace pwf
