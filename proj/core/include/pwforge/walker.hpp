#pragma once

#include "pwforge/bgg.hpp"
#include "pwforge/projective.hpp"

namespace pwf {

// Chart on the (co)tangent total space: variables x1..xn, p1..pn.
ChartPtr total_chart(const ChartPtr& base);

// A modified pairing metric ("Walker extension") built from an affine
// connection Gamma and a symmetric modification Phi_{AB} on the base:
//   g_{x^A p_B} = delta_A^B,
//   g_{x^A x^B} = -2 Gamma_A{}^C{}_B p_C + Phi_AB,
//   g_{p p}     = 0 .
struct PWSpace {
  ChartPtr base;
  ChartPtr total;
  AffineConnection base_conn;  // reference special connection on the base
  TensorField phi;             // Phi_{AB} on the base (zero allowed)
  TensorField g;               // modified metric on the total chart
  TensorField g_inv;
  TensorField g_std;           // unmodified companion (Phi = 0)
  TensorField g_std_inv;
  AffineConnection lc;         // Levi-Civita connection of g
  AffineConnection lc_std;     // Levi-Civita connection of g_std

  int n() const { return base->dim(); }
};

PWSpace build_pw(const AffineConnection& conn, const TensorField& phi);

// Inverse of a metric with the block structure [[A, I], [I, 0]] in the
// (x, p) coordinate ordering: the inverse is [[0, I], [I, -A]].
TensorField walker_inverse(const TensorField& g);

// Levi-Civita connection of a metric with known inverse.
AffineConnection levi_civita(const TensorField& g, const TensorField& g_inv);

// Pullback of a fully covariant base tensor along the projection to the
// base (components indexed by x-slots only).
TensorField pullback(const ChartPtr& total, const TensorField& base_tensor);

// Horizontal lift of a base vector field upsilon^A with respect to the
// reference connection: upsilon^A ( d/dx^A + Gamma_A{}^C{}_B p_C d/dp_B ).
// The components of upsilon may involve the fibre variables.
TensorField horizontal_lift(const PWSpace& pw, const TensorField& upsilon);

// Vertical lift of a base one-form beta_A: beta_A d/dp_A.
TensorField vertical_lift(const PWSpace& pw, const TensorField& beta);

// The canonical vertical field k = 2 p_A d/dp_A (a homothety of g_std).
TensorField k_field(const PWSpace& pw);

// Decomposition v = upsilon^A eta^a_A + beta_A chi^{aA} of a total vector.
struct HorVert {
  std::vector<Poly> upsilon;  // base-indexed, polynomials in x and p
  std::vector<Poly> beta;
};
HorVert decompose_vector(const PWSpace& pw, const TensorField& v);

// Curvature of a metric connection.
struct MetricCurvature {
  TensorField riemann;        // R_ab{}^c{}_d, same convention as the base
  TensorField riemann_lower;  // R_ab{}^r{}_d g_rc arranged as (a,b,c,d)
  TensorField ricci;          // R_ra{}^r{}_b
  Poly scal;                  // g^{ab} Ric_ab
  TensorField schouten;       // conformal: (Ric - Scal g / (2(m-1)))/(m-2)
  TensorField weyl_lower;     // R_abcd - 4 alt_[ab][cd] ( g_ac P_bd )
};
MetricCurvature metric_curvature(const TensorField& g,
                                 const TensorField& g_inv,
                                 const AffineConnection& lc);

// Difference tensor F_a{}^c{}_d between the Levi-Civita connections of the
// modified and the unmodified metric.
TensorField difference_tensor(const PWSpace& pw);

// Lifts of the reduced conformal-symmetry data to total vector fields.
// lift_plus:  w^{AB} p_B eta_A + delta_A{}^{(B} nu^{C)} p_B p_C chi^A,
//             nu^C = D_R w^{RC} / (n-1).
// lift_zero:  v^A eta_A + phi_A{}^B p_B chi^A with
//             phi_A{}^B = -( D_A v^B + w^{SB} Phi_SA )_0
//                         + ( (n-1)/(n(n+1)) D_S v^S + psi0 ) delta_A^B.
// lift_minus: alpha_A chi^A.
TensorField lift_plus(const PWSpace& pw, const TensorField& w);
TensorField lift_zero(const PWSpace& pw, const TensorField& v,
                      const TensorField& w, const Poly& psi0);
TensorField lift_minus(const PWSpace& pw, const TensorField& alpha);

// Conformal-Killing residual: L_v g - (divisor-normalized) trace part, i.e.
// the trace-free part (with respect to g) of the Lie derivative of g.
TensorField conformal_killing_residual(const PWSpace& pw,
                                       const TensorField& v);

// Killing residual L_v g (no trace removal).
TensorField lie_metric(const PWSpace& pw, const TensorField& v);

// Exact curvature-relation identities between the modified metric, the
// unmodified companion, and the base connection:
//   riemann:   R(g)_ab{}^r{}_d g_rc = R(g_std)_abcd
//              - Ds_c Ds_[a Phi_b]d + Ds_d Ds_[a Phi_b]c
//              - R(g_std)_ab{}^r{}_[c Phi_d]r   (Ds = std Levi-Civita)
//   ricci:     Ric(g) = 2 * pullback of Ric(base connection)
//              (the factor 2 is the normalization of metric_curvature)
//   weyl:      W(g)_ab{}^r{}_d g_cr = W(g_std)_abcd - 2 pullback(B2(Phi))
//              - 1/2 ( W(g_std)_ab{}^r{}_[c Phi_d]r
//                      + W(g_std)_cd{}^r{}_[a Phi_b]r )
//   vertical:  W(g)_abcd v^a w^d = 0 for all vertical v, w
struct RelationsReport {
  bool riemann = false;
  bool ricci = false;
  bool weyl = false;
  bool vertical = false;
  bool all() const { return riemann && ricci && weyl && vertical; }
};
RelationsReport check_relations(const PWSpace& pw);

}  // namespace pwf
