#pragma once

#include "pwforge/tensor.hpp"

namespace pwf {

// Torsion-free affine connection given by Christoffel symbols
// Gamma_A{}^C{}_B, stored with index order (Lower A, Upper C, Lower B) and
// symmetric in A,B.
struct AffineConnection {
  ChartPtr chart;
  TensorField gamma;

  static AffineConnection flat(ChartPtr chart);
  void check() const;  // symmetry of Gamma in its lower indices
};

// Projectively changed connection:
//   Gamma^ = Gamma + delta_A^C Upsilon_B + delta_B^C Upsilon_A.
AffineConnection projective_change(const AffineConnection& conn,
                                   const TensorField& upsilon);

// D_A T with a new leading Lower slot.  No weight correction is applied:
// sections of weighted bundles are computed in the trivialization given by
// the reference connection, where components of weight-w objects carry no
// extra term.
TensorField covariant_derivative(const AffineConnection& conn,
                                 const TensorField& T);

// Curvature quantities in the convention
//   (D_A D_B - D_B D_A) xi^C = R_AB{}^C{}_R xi^R.
struct CurvaturePack {
  TensorField riemann;   // R_AB{}^C{}_D   (L,L,U,L)
  TensorField ricci;     // Ric_AB = R_RA{}^R{}_B
  TensorField schouten;  // P_AB = Ric_AB / (n-1), meaningful when special
  TensorField weyl;      // W_AB{}^C{}_D = R + P_AD delta^C_B - P_BD delta^C_A
  TensorField cotton;    // Y_CAB = 2 D_[A P_B]C, stored with slots (C,A,B)
  bool special = false;  // Ricci symmetric
};

CurvaturePack curvature_pack(const AffineConnection& conn);

// Recorded projective transformation of a weighted covariant derivative:
// given DT = covariant_derivative(conn, T), produces the derivative with
// respect to the Upsilon-changed connection acting on T as a weight-w
// object:
//   D^_A T = D_A T + w Upsilon_A T
//            + sum over Upper slots ( Upsilon_A T + delta_A^B Upsilon_R T^R )
//            + sum over Lower slots ( -Upsilon_A T - Upsilon_C T|_{C->A} ).
TensorField transform_weighted(const TensorField& T, const TensorField& DT,
                               int weight, const TensorField& upsilon);

// Lie derivative of T along the vector field v, for a weight-w density
// (projective weight on base charts: divisor = n+1; conformal weight on
// metric charts: divisor = 2n):
//   L_v T = standard Lie derivative - (w/divisor) (D_R v^R) T.
TensorField lie_derivative(const AffineConnection& conn, const TensorField& v,
                           const TensorField& T, int weight, int divisor);

// Dimension-2 volume forms, eps_12 = +1 and eps^12 = +1.
TensorField epsilon2_lower(ChartPtr chart);
TensorField epsilon2_upper(ChartPtr chart);

// Star identifications in dimension 2:
//   bivector w^{AB}  -> scalar  (1/2) eps_AB w^AB,
//   two-form  F_AB   -> scalar  (1/2) eps^AB F_AB,
// and their inverses scalar -> s * eps.
Poly star_bivector(const TensorField& w);
Poly star_twoform(const TensorField& f);
TensorField unstar_bivector(ChartPtr chart, const Poly& s);
TensorField unstar_twoform(ChartPtr chart, const Poly& s);

}  // namespace pwf
