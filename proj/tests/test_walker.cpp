#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwforge/walker.hpp"
#include "test_util.hpp"

using namespace pwf;
using pwtest::Rng;

namespace {

PWSpace random_pw(uint64_t seed, int n, bool with_phi = true, int deg = 1) {
  Rng rng(seed);
  auto ch = base_chart(n);
  auto conn = pwtest::random_special_connection(rng, ch, deg);
  auto phi = with_phi ? pwtest::random_symmetric2(rng, ch, deg)
                      : TensorField(ch, {Variance::Lower, Variance::Lower});
  return build_pw(conn, phi);
}

TensorField coordinate_one_form(const ChartPtr& base, int A) {
  TensorField e(base, {Variance::Lower});
  e.at({A}) = Poly(Rational(1));
  return e;
}

TensorField coordinate_vector(const ChartPtr& base, int A) {
  TensorField e(base, {Variance::Upper});
  e.at({A}) = Poly(Rational(1));
  return e;
}

Poly pair(const TensorField& g, const TensorField& u, const TensorField& v) {
  return g.product(u).contract(1, 2).product(v).contract(0, 1).at({});
}

}  // namespace

TEST_CASE("metric inverse and Levi-Civita properties") {
  auto pw = random_pw(401, 2);
  auto delta = TensorField::kronecker(pw.total);
  // g . g_inv = id (in both orders of the mixed delta).
  auto prod = pw.g.product(pw.g_inv).contract(1, 2);
  CHECK(prod == delta);
  pw.lc.check();  // torsion-free, right index pattern
  CHECK(covariant_derivative(pw.lc, pw.g).is_zero());
  CHECK(covariant_derivative(pw.lc_std, pw.g_std).is_zero());
}

TEST_CASE("difference tensor closed form") {
  for (uint64_t seed : {411u, 412u}) {
    auto pw = random_pw(seed, 2);
    auto phi_tot = pullback(pw.total, pw.phi);
    auto dphi = covariant_derivative(pw.lc_std, phi_tot);  // (r, a, b)
    // F_acd = Dtilde_(a Phi_d)c - 1/2 Dtilde_c Phi_ad.
    auto x = dphi.permute({0, 2, 1}).symmetrize({0, 2});
    auto y = dphi.permute({1, 0, 2});
    auto rhs = x - y * Rational(1, 2);
    auto lowered = difference_tensor(pw).product(pw.g_std).contract(1, 3)
                       .permute({0, 2, 1});
    CHECK(lowered == rhs);
    // Strict horizontality: all components with any p-index vanish.
    int n = pw.n(), m = 2 * n;
    bool horizontal = true;
    std::vector<int> mi(3, 0);
    do {
      if ((mi[0] >= n || mi[1] >= n || mi[2] >= n) && !rhs.at(mi).is_zero())
        horizontal = false;
    } while (next_multi_index(mi, m));
    CHECK(horizontal);
  }
}

TEST_CASE("Ricci of the modification equals Ricci of the base connection") {
  for (int n : {2, 3}) {
    auto pw = random_pw(421 + uint64_t(n), n);
    auto mc_bar = metric_curvature(pw.g, pw.g_inv, pw.lc);
    auto mc_std = metric_curvature(pw.g_std, pw.g_std_inv, pw.lc_std);
    auto base_pack = curvature_pack(pw.base_conn);
    // In this curvature normalization the metric Ricci is twice the
    // pullback of the base Ricci, so the conformal Schouten (divisor
    // 2(n-1)) coincides with the pullback of the projective Schouten
    // (divisor n-1) exactly.
    auto ric_pull = pullback(pw.total, base_pack.ricci) * Rational(2);
    CHECK(mc_bar.ricci == ric_pull);
    CHECK(mc_std.ricci == ric_pull);
    CHECK(mc_bar.scal.is_zero());
    CHECK(mc_bar.schouten == pullback(pw.total, base_pack.schouten));
  }
}

TEST_CASE("Riemann relation between modified and unmodified metric") {
  auto pw = random_pw(431, 2);
  auto mc_bar = metric_curvature(pw.g, pw.g_inv, pw.lc);
  auto mc_std = metric_curvature(pw.g_std, pw.g_std_inv, pw.lc_std);
  auto phi_tot = pullback(pw.total, pw.phi);
  auto dd = covariant_derivative(pw.lc_std,
                                 covariant_derivative(pw.lc_std, phi_tot));
  auto t1 = dd.permute({1, 2, 0, 3}).alternate({0, 1});  // D_c D_[a Phi_b]d
  auto t2 = dd.permute({1, 2, 3, 0}).alternate({0, 1});  // D_d D_[a Phi_b]c
  auto t3 = mc_std.riemann.product(phi_tot).contract(2, 5)
                .alternate({2, 3});                      // R_ab{}^r{}_[c Ph_d]r
  CHECK(mc_bar.riemann_lower == mc_std.riemann_lower - t1 + t2 - t3);
}

TEST_CASE("Weyl relation expresses the window operator of the base") {
  auto pw = random_pw(441, 2);
  auto mc_bar = metric_curvature(pw.g, pw.g_inv, pw.lc);
  auto mc_std = metric_curvature(pw.g_std, pw.g_std_inv, pw.lc_std);
  auto base_pack = curvature_pack(pw.base_conn);
  auto b2_pull = pullback(pw.total,
                          b2_twoform(pw.base_conn, base_pack, pw.phi));
  auto phi_tot = pullback(pw.total, pw.phi);
  // Raise the third slot of the lowered standard Weyl tensor.
  auto wup = pw.g_std_inv.product(mc_std.weyl_lower).contract(1, 4)
                 .permute({1, 2, 0, 3});
  auto q1 = wup.product(phi_tot).contract(2, 5).alternate({2, 3});
  auto q2 = q1.permute({2, 3, 0, 1});
  CHECK(mc_bar.weyl_lower ==
        mc_std.weyl_lower - b2_pull * Rational(2) -
            (q1 + q2) * Rational(1, 2));
}

TEST_CASE("Weyl integrability: vertical-vertical insertions vanish") {
  auto pw = random_pw(451, 2);
  auto mc_bar = metric_curvature(pw.g, pw.g_inv, pw.lc);
  int n = pw.n(), m = 2 * n;
  std::vector<int> mi(4, 0);
  bool ok = true;
  do {
    if (mi[0] >= n && mi[3] >= n && !mc_bar.weyl_lower.at(mi).is_zero())
      ok = false;
  } while (next_multi_index(mi, m));
  CHECK(ok);
}

TEST_CASE("bundled relation checker confirms all four identities") {
  // Flat base with no modification, a random curved instance, and the
  // quadratic single-entry example.
  auto ch = base_chart(2);
  auto flat = build_pw(AffineConnection::flat(ch),
                       TensorField(ch, {Variance::Lower, Variance::Lower}));
  CHECK(check_relations(flat).all());

  CHECK(check_relations(random_pw(461, 2)).all());

  TensorField phi(ch, {Variance::Lower, Variance::Lower});
  phi.at({0, 0}) = Poly::parse("x2^2");
  CHECK(check_relations(build_pw(AffineConnection::flat(ch), phi)).all());
}

TEST_CASE("flat base gives flat standard metric") {
  auto ch = base_chart(2);
  auto pw = build_pw(AffineConnection::flat(ch),
                     TensorField(ch, {Variance::Lower, Variance::Lower}));
  auto mc = metric_curvature(pw.g, pw.g_inv, pw.lc);
  CHECK(mc.riemann.is_zero());
}

TEST_CASE("frame pairings of the standard metric") {
  auto pw = random_pw(461, 2, false);
  int n = pw.n();
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B) {
      auto chiA = vertical_lift(pw, coordinate_one_form(pw.base, A));
      auto chiB = vertical_lift(pw, coordinate_one_form(pw.base, B));
      auto etaA = horizontal_lift(pw, coordinate_vector(pw.base, A));
      auto etaB = horizontal_lift(pw, coordinate_vector(pw.base, B));
      CHECK(pair(pw.g_std, chiA, chiB).is_zero());
      CHECK(pair(pw.g_std, etaA, etaB).is_zero());
      Poly expectation = (A == B) ? Poly(Rational(1)) : Poly();
      CHECK(pair(pw.g_std, chiA, etaB) == expectation);
    }
  // g = 2 chi_(a^A etacheck_b)A reproduces the metric.
  TensorField sum(pw.total, {Variance::Lower, Variance::Lower});
  for (int A = 0; A < n; ++A) {
    auto chi_form = pw.g_std.product(
        vertical_lift(pw, coordinate_one_form(pw.base, A))).contract(1, 2);
    auto eta_form = pw.g_std.product(
        horizontal_lift(pw, coordinate_vector(pw.base, A))).contract(1, 2);
    sum += chi_form.product(eta_form).symmetrize({0, 1}) * Rational(2);
  }
  CHECK(sum == pw.g_std);
}

TEST_CASE("canonical vertical field is a homothety of the standard metric") {
  auto pw = random_pw(471, 2, false);
  auto k = k_field(pw);
  auto klow = pw.g_std.product(k).contract(1, 2);
  auto dk = covariant_derivative(pw.lc_std, klow);
  CHECK(dk.symmetrize({0, 1}) == pw.g_std);
  // mu^a{}_b acts as -1 on vertical and +1 on horizontal lifts.
  auto mu = dk.alternate({0, 1});
  auto mu_up = pw.g_std_inv.product(mu).contract(1, 2);  // (upa, b)
  auto chi = vertical_lift(pw, coordinate_one_form(pw.base, 0));
  auto eta = horizontal_lift(pw, coordinate_vector(pw.base, 1));
  CHECK(mu_up.product(chi).contract(1, 2) == -chi);
  CHECK(mu_up.product(eta).contract(1, 2) == eta);
}

TEST_CASE("trace-free derivative of the vertical field detects the modification") {
  for (uint64_t seed : {481u, 482u}) {
    auto pw = random_pw(seed, 2);
    int m = 2 * pw.n();
    auto k = k_field(pw);
    auto klow = pw.g.product(k).contract(1, 2);
    auto sym = covariant_derivative(pw.lc, klow).symmetrize({0, 1});
    Poly tr = pw.g_inv.product(sym).contract(0, 2).contract(0, 1).at({});
    auto tf = sym - pw.g * (tr * Rational(1, m));
    CHECK(tf == -pullback(pw.total, pw.phi));
  }
}

TEST_CASE("regauging the section shifts the modification by the first operator") {
  Rng rng(491);
  auto ch = base_chart(2);
  auto conn = pwtest::random_special_connection(rng, ch, 1);
  auto phi = pwtest::random_symmetric2(rng, ch, 1);
  auto alpha = pwtest::random_one_form(rng, ch, 2);
  // Shifting the vertical one-form by a pullback changes the detected
  // modification by the image of the first operator, for the SAME metric.
  auto phi2 = phi - b1_oneform(conn, alpha);
  auto pw1 = build_pw(conn, phi);
  int m = 2 * pw1.n();
  auto k = k_field(pw1);
  auto kprime = pw1.g.product(k).contract(1, 2) +
                pullback(pw1.total, alpha);
  auto sym = covariant_derivative(pw1.lc, kprime).symmetrize({0, 1});
  Poly tr = pw1.g_inv.product(sym).contract(0, 2).contract(0, 1).at({});
  auto tf = sym - pw1.g * (tr * Rational(1, m));
  CHECK(tf == -pullback(pw1.total, phi2));
}

TEST_CASE("horizontal-vertical decomposition round trip") {
  Rng rng(501);
  auto pw = random_pw(502, 3);
  auto ups = pwtest::random_tensor(rng, pw.base, {Variance::Upper});
  auto beta = pwtest::random_one_form(rng, pw.base);
  auto v = horizontal_lift(pw, ups) + vertical_lift(pw, beta);
  auto hv = decompose_vector(pw, v);
  for (int A = 0; A < pw.n(); ++A) {
    CHECK(hv.upsilon[size_t(A)] == ups.at({A}));
    CHECK(hv.beta[size_t(A)] == beta.at({A}));
  }
}

TEST_CASE("lifts are eigenvectors of the canonical homothety") {
  Rng rng(511);
  auto pw = random_pw(512, 2);
  auto k = k_field(pw);
  auto w = pwtest::random_tensor(rng, pw.base,
                                 {Variance::Upper, Variance::Upper})
               .alternate({0, 1});
  auto v = pwtest::random_tensor(rng, pw.base, {Variance::Upper});
  auto alpha = pwtest::random_one_form(rng, pw.base);
  Poly psi0 = pwtest::random_poly(rng, pw.base, 0);
  auto vp = lift_plus(pw, w);
  auto v0 = lift_zero(pw, v, w, psi0);
  auto vm = lift_minus(pw, alpha);
  auto bracket = [&](const TensorField& x) {
    return lie_derivative(pw.lc_std, k, x, 0, 1);
  };
  CHECK(bracket(vp) == vp * Rational(2));
  CHECK(bracket(v0).is_zero());
  CHECK(bracket(vm) == vm * Rational(-2));
}

TEST_CASE("window of the induced second-order operator matches the pullback") {
  // Dtilde_a Dtilde_c Phi_bd + Ptilde_ac Phi_bd, window-projected, against
  // the pullback of the base window operator.
  auto pw = random_pw(521, 2);
  auto mc_std = metric_curvature(pw.g_std, pw.g_std_inv, pw.lc_std);
  auto base_pack = curvature_pack(pw.base_conn);
  auto phi_tot = pullback(pw.total, pw.phi);
  auto dd = covariant_derivative(pw.lc_std,
                                 covariant_derivative(pw.lc_std, phi_tot));
  auto core = (dd + mc_std.schouten.product(phi_tot)).permute({0, 2, 1, 3});
  auto win = core.pair_skew(0, 1, 2, 3).window_part();
  CHECK(win == pullback(pw.total, b2_twoform(pw.base_conn, base_pack, pw.phi)));
}
