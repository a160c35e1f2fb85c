#pragma once

// Explicit ambient metrics over the cotangent-bundle metrics: the normal
// form 2 rho dt (.) dt + 2t dt (.) drho + t^2 g(rho) with a rho-linear (or,
// for the extra-modified four-dimensional family, rho-quadratic) block,
// exact Ricci-flatness certification, and the Laplacian check on log t.

#include <string>
#include <vector>

#include "pwforge/projective.hpp"
#include "pwforge/tensor.hpp"
#include "pwforge/walker.hpp"

namespace pwf {

// Metric on the (2n+2)-chart (t, rho, x1..xn, p1..pn).  Components are
// polynomial in (rho, x, p) and Laurent-polynomial in t.  Derived
// quantities (inverse, Christoffels, curvature) live in the localization
// at `unit`: every denominator is a power of it.  For the rho-linear
// build the unit is 1 and everything stays polynomial.
struct AmbientMetric {
  ChartPtr chart;
  int n = 0;  // base dimension
  std::vector<std::vector<Poly>> g;
  Poly unit;
};

// Rho-linear ambient metric of the modified cotangent-bundle metric of
// (D, Phi): spatial block t^2 (g_bar + 2 rho Schouten(g_bar)), with the
// Schouten block strictly horizontal.
AmbientMetric build_ambient(const AffineConnection& conn,
                            const TensorField& phi);

// Four-dimensional extra-modified family (base dimension 2 only): base
// metric g_bb = g_std + Phi + alpha k k with the lowered homothety k, and
// spatial block
//   t^2 ( g_bb + 2 rho Schouten(g_bb)
//         + rho^2 ( alpha^2 g_bb + 2 alpha dalpha (.) k
//                   + c ( (Lap alpha) g_bb - 2 alpha dalpha (x) dalpha ) ) )
// where Lap is the Laplacian of the unmodified cotangent-bundle metric.
AmbientMetric build_ambient_extra(const AffineConnection& conn,
                                  const TensorField& phi, const Poly& alpha,
                                  const Rational& c);

// Ricci tensor of the ambient metric in the localization at `unit`:
// component (a,b) equals num[a][b] / unit^upow[a][b].
struct RicciNumerators {
  std::vector<std::vector<Poly>> num;
  std::vector<std::vector<int>> upow;
};
RicciNumerators ambient_ricci(const AmbientMetric& am);

struct RicciReport {
  bool flat = false;
  int nonzero_components = 0;
  std::string sample;  // one nonzero residual numerator, for diagnostics
};

// Symbolic Ricci tensor of the ambient metric; exact-zero verdict.  The
// inverse is certified by multiplying back to the identity.
RicciReport verify_ricci_flat(const AmbientMetric& am);

// Exact check of Lap(log t) = G^{ab} (d_a d_b log t - Gamma^c_ab d_c log t)
// = 0 for the ambient Laplacian.
bool check_log_t_harmonic(const AmbientMetric& am);

// Spatial block restricted to rho = 0, t = 1, as a metric on the
// cotangent-bundle chart; equals the metric the ambient was built over.
TensorField ambient_restriction(const AmbientMetric& am);

// Negative-control helper: returns a copy with extra added to the
// component g[i][j] (and symmetrically g[j][i]).
AmbientMetric perturb_ambient(const AmbientMetric& am, int i, int j,
                              const Poly& extra);

}  // namespace pwf
