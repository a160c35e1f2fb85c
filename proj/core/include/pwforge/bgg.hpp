#pragma once

#include "pwforge/projective.hpp"

namespace pwf {

// First and second operators of the five BGG-type sequences, together with
// the closed-form compositions they satisfy, and the two coupling operators
// used by the reduced solvers.  All operators act on component functions in
// the trivialization of the reference special connection.

// --- scalar sequence: E(1) -> E_(AB)(1) -> E_[CA]B(1) ---
TensorField b1_scalar(const AffineConnection& conn, const CurvaturePack& pack,
                      const TensorField& tau);
// slots of the result: (C, A, B) with skew [C,A]
TensorField b2_scalar(const AffineConnection& conn, const TensorField& T);
// Composition closed form, derived by commutator expansion in this
// convention: (B2 o B1)(tau)_CAB = -1/2 ( W_CA{}^R{}_B D_R tau - Y_BCA tau ).
TensorField comp_scalar_rhs(const AffineConnection& conn,
                            const CurvaturePack& pack, const TensorField& tau);

// --- one-form sequence: E_B(2) -> E_(AB)(2) -> window E_[AB][CD](2) ---
TensorField b1_oneform(const AffineConnection& conn, const TensorField& phi);
// Window projection of D_A D_C Phi_BD + P_AC Phi_BD; slots (A,B,C,D).
TensorField b2_twoform(const AffineConnection& conn, const CurvaturePack& pack,
                       const TensorField& Phi);
// Pair-skew of the explicit four-term form (with the quarter-Weyl terms).
TensorField b2_twoform_explicit(const AffineConnection& conn,
                                const CurvaturePack& pack,
                                const TensorField& Phi);
// Composition closed form as a coefficient vector over the six curvature
// terms; see comp_oneform_terms for the term basis.
TensorField comp_oneform_rhs(const AffineConnection& conn,
                             const CurvaturePack& pack,
                             const TensorField& phi);
// The six pair-skew projected terms the composition expands over.
std::vector<TensorField> comp_oneform_terms(const AffineConnection& conn,
                                            const CurvaturePack& pack,
                                            const TensorField& phi);

// --- vector sequence ( n >= 3 ): E^B(-1) -> (E_A{}^B)_0 -> (E_[CA]{}^B)_0 ---
TensorField b1_vector(const AffineConnection& conn, const TensorField& xi);
TensorField b2_vector(const AffineConnection& conn, const TensorField& Xi);
// (B2 o B1)(xi)_CA{}^B = 1/2 W_CA{}^B{}_R xi^R.
TensorField comp_vector_rhs(const CurvaturePack& pack, const TensorField& xi);

// --- bivector sequence ( n >= 4 ): E^[AB](-2) -> ... ---
TensorField b1_bivector(const AffineConnection& conn, const TensorField& w);
TensorField b2_bivector(const AffineConnection& conn, const TensorField& V);
// (B2 o B1)(w)_CD{}^{AB} = -( W_CD{}^{[A}{}_R w^{B]R} )_0.
TensorField comp_bivector_rhs(const CurvaturePack& pack, const TensorField& w);

// --- adjoint sequence: E^C -> (E_(AB)^C)_0 -> (E_[DA]B^C)_0 ---
TensorField b1_adjoint(const AffineConnection& conn, const CurvaturePack& pack,
                       const TensorField& v);
// Modified operator with the extra v^R W_R(A{}^C{}_B) term.
TensorField b1_adjoint_modified(const AffineConnection& conn,
                                const CurvaturePack& pack,
                                const TensorField& v);
TensorField b2_adjoint(const AffineConnection& conn, const TensorField& V);
// (B2 o B1#)(v)_DAB{}^C = 1/2 (L_v W)_DA{}^C{}_B.
TensorField comp_adjoint_rhs(const AffineConnection& conn,
                             const CurvaturePack& pack, const TensorField& v);

// Lie derivative of the Weyl tensor along v (weight 0).
TensorField lie_weyl(const AffineConnection& conn, const CurvaturePack& pack,
                     const TensorField& v);

// --- coupling operators ---
// F(xi, Phi)_AB = xi^R ( D_(A Phi_B)R - 1/2 D_R Phi_AB )
//                 + (1/n) (D_R xi^R) Phi_AB.
TensorField coupling_F_xi(const AffineConnection& conn, const TensorField& xi,
                          const TensorField& Phi);
// nu^C = 1/(n-1) D_R w^{RC}.
TensorField coupling_nu(const AffineConnection& conn, const TensorField& w);
// F(w, Phi)^C{}_AB, returned with slots (A, B, C-upper).
TensorField coupling_F_w(const AffineConnection& conn, const TensorField& w,
                         const TensorField& Phi);

// Prolongation residuals of the bivector equation (zero on solutions).
struct WProlongation {
  TensorField r1;       // D_A w^{BC} - 2 delta_A{}^{[B} nu^{C]}
  TensorField r2;       // D_A nu^B + P_AR w^{RB} + w^{RS} W_RS{}^B{}_A / (2(n-2))
  TensorField trace_w;  // w^{TR} W_TR{}^B{}_A
};
WProlongation prolongation_check(const AffineConnection& conn,
                                 const CurvaturePack& pack,
                                 const TensorField& w);

}  // namespace pwf
