#pragma once

#include <map>
#include <string>
#include <vector>

#include "pwforge/bgg.hpp"
#include "pwforge/linalg.hpp"
#include "pwforge/walker.hpp"

namespace pwf {

// ---------------------------------------------------------------------------
// Polynomial-ansatz machinery.
//
// Unknown tensors are expanded in chart monomials up to a degree cap, with
// one fresh coefficient variable per (component, monomial).  Running the
// tensor calculus verbatim on such an ansatz yields residuals whose
// components are polynomials *linear and homogeneous* in the coefficient
// variables; collecting by chart monomial turns each residual into exact
// rational rows, and the solution space is a nullspace computation.
// ---------------------------------------------------------------------------

// Pool of coefficient variables "c0", "c1", ...  The prefix never collides
// with chart variables (x*, p*, t, rho).
class CoeffPool {
 public:
  std::string fresh();
  const std::vector<std::string>& names() const { return names_; }
  int size() const { return int(names_.size()); }

 private:
  std::vector<std::string> names_;
};

// All exponent vectors over nvars variables with total degree <= deg,
// in deterministic (graded-lex) order.
std::vector<std::vector<int32_t>> monomials_up_to(int nvars, int deg);

// General polynomial of total degree <= deg in the given variables, one
// fresh coefficient per monomial.
Poly ansatz_poly(CoeffPool& pool, const std::vector<std::string>& vars,
                 int deg);

// Two independent degree caps for two variable groups (used on the total
// chart: x-degree <= da, p-degree <= db).
Poly ansatz_poly2(CoeffPool& pool, const std::vector<std::string>& vars_a,
                  int da, const std::vector<std::string>& vars_b, int db);

enum class AnsatzSym { None, Symmetric, Skew };  // rank-2 patterns only

// Tensor ansatz of the given index pattern with polynomial components of
// total degree <= deg; for rank 2 an exact symmetry can be imposed (fewer
// coefficients, shared across the symmetric/skew pairs).
TensorField ansatz_tensor(CoeffPool& pool, const ChartPtr& chart,
                          std::vector<Variance> idx, int deg,
                          AnsatzSym sym = AnsatzSym::None);

// Homogeneous linear conditions on the pool coefficients, accumulated from
// residual polynomials/tensors.  Throws std::logic_error if a residual is
// not linear homogeneous in the coefficient variables.
class LinearConditions {
 public:
  explicit LinearConditions(const CoeffPool& pool);
  void add(const Poly& residual);
  void add(const TensorField& residual);

  // Nullspace basis in reduced echelon normal form; each solution maps
  // coefficient name -> value (zeros omitted).
  std::vector<std::map<std::string, Rational>> solve();
  int rank() const { return elim_.rank(); }

 private:
  const CoeffPool& pool_;
  std::map<std::string, int> col_of_;
  Eliminator elim_;
};

// Substitute a coefficient assignment; coefficient variables absent from
// the map are set to zero.  Non-coefficient variables are untouched.
Poly substitute_coeffs(const Poly& p,
                       const std::map<std::string, Rational>& assign,
                       const CoeffPool& pool);
TensorField substitute_coeffs(const TensorField& T,
                              const std::map<std::string, Rational>& assign,
                              const CoeffPool& pool);

// ---------------------------------------------------------------------------
// Einstein scales of a modified metric, reduced to the base.
// ---------------------------------------------------------------------------

struct EinsteinSolution {
  Poly tau;         // tau = sigma restricted to the zero section
  TensorField xi;   // xi^A, the fibre-linear part
  Poly sigma;       // xi^R p_R + tau on the total chart
};

struct EinsteinResult {
  std::vector<EinsteinSolution> basis;
  int cap = 0;             // x-degree cap used
  bool stabilized = true;  // dimension unchanged at cap+1 (when witnessed)
  int dim() const { return int(basis.size()); }
};

// Joint linear solve for (tau, xi) of the reduced system
//   xi^R W_RB{}^C{}_D = 0,
//   (D_A xi^B)_0 = 0,
//   (D_A D_B + P_AB) tau = F(xi, Phi)_AB .
EinsteinResult einstein_scales_reduced(const AffineConnection& conn,
                                       const TensorField& phi, int cap,
                                       bool witness = true);

// Direct solve on the total space: trace-free part of (Dbar Dbar + Pbar)
// sigma vanishes, with sigma polynomial, linear in the fibre variables and
// of x-degree <= cap.
EinsteinResult einstein_scales_direct(const PWSpace& pw, int cap,
                                      bool witness = true);

// Residual of the direct equation for a given sigma (verification oracle):
// trace-free part of (Dbar_a Dbar_b + Pbar_ab) sigma with respect to g.
TensorField einstein_trace_free_hessian(const PWSpace& pw, const Poly& sigma);

// Scalar curvature of the sigma-rescaled metric, as the closed form
// 2n(2n-1) Phi_RS xi^R xi^S (a polynomial on the base).
Poly einstein_scalar(const PWSpace& pw, const EinsteinSolution& sol);

// ---------------------------------------------------------------------------
// Conformal Killing fields of a modified metric, reduced to the base.
// ---------------------------------------------------------------------------

struct CKSolution {
  TensorField w;      // skew w^{AB}
  TensorField v;      // base vector v^A
  TensorField alpha;  // one-form alpha_A
  Poly psi0;          // the scalar appearing in the alpha-equation
  TensorField lift;   // assembled total-space vector field
};

struct CKResult {
  std::vector<CKSolution> basis;
  int cap = 0;
  bool stabilized = true;
  int dim() const { return int(basis.size()); }
};

// Joint linear solve for (w, v, alpha, psi0) of the reduced system
//   w^{R(C} W_{R(A}{}^{D)}{}_{B)} = 0,
//   (D_A w^{BC})_0 = 0,
//   (D_A D_B v^C + P_AB v^C + v^R W_{R(A}{}^C{}_{B)})_0 = -(F(w,Phi)^C_AB)_0,
//   D_(A alpha_B) = -1/2 (L_v Phi)_AB + 1/2 psi0 Phi_AB,
//   D_A psi0 = 2/(n+1) F(w,Phi)^R{}_{AR} ,
// with psi0 an unknown scalar function (constancy is not assumed).
// Each basis element is assembled into a total vector field via the lifts.
CKResult conformal_killing_reduced(const AffineConnection& conn,
                                   const TensorField& phi, int cap,
                                   bool witness = true);

// Generic basis of vector fields; used by the direct metric-level solvers
// and the base symmetry solvers.
struct VectorBasis {
  std::vector<TensorField> basis;
  int cap = 0;
  bool stabilized = true;
  int dim() const { return int(basis.size()); }
};

// Direct solve of the conformal Killing equation on the total space:
// trace-free part of L_v g vanishes; components have p-degree <= 2 and
// x-degree <= cap.
VectorBasis conformal_killing_direct(const PWSpace& pw, int cap,
                                     bool witness = true);

// Genuine Killing fields, L_v g = 0, same ansatz shape.
VectorBasis killing_direct(const PWSpace& pw, int cap, bool witness = true);

// ---------------------------------------------------------------------------
// Symmetries of the base connection / projective structure.
// ---------------------------------------------------------------------------

// Affine:     D_A D_B v^C + v^S R_SA{}^C{}_B = 0.
// Projective: (D_A D_B v^C + P_AB v^C + v^R W_{R(A}{}^C{}_{B)})_0 = 0.
VectorBasis affine_symmetries(const AffineConnection& conn, int cap,
                              bool witness = true);
VectorBasis projective_symmetries(const AffineConnection& conn, int cap,
                                  bool witness = true);

// Divergence-constancy criterion: a projective symmetry is affine for the
// given special connection iff D_A D_R v^R = 0.
bool divergence_constant(const AffineConnection& conn, const TensorField& v);

// ---------------------------------------------------------------------------
// Flatness criterion for the conformal extension.
// ---------------------------------------------------------------------------

struct FlatnessReport {
  bool projectively_flat = false;  // W = 0 (n >= 3) / Y = 0 (n = 2)
  bool b2_vanishes = false;        // B2(Phi) = 0
  bool conformally_flat() const { return projectively_flat && b2_vanishes; }
};

FlatnessReport is_conformally_flat(const AffineConnection& conn,
                                   const TensorField& phi);

}  // namespace pwf
