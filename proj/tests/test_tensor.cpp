#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwforge/tensor.hpp"

using namespace pwf;

TEST_CASE("kronecker identity") {
  auto ch = base_chart(3);
  auto delta = TensorField::kronecker(ch);
  auto tr = delta.contract(0, 1);
  CHECK(tr.at({}) == Poly(Rational(3)));
}

TEST_CASE("product and contract") {
  auto ch = base_chart(2);
  TensorField v(ch, {Variance::Upper});
  v.at({0}) = Poly::parse("x1");
  v.at({1}) = Poly::parse("x2^2");
  TensorField w(ch, {Variance::Lower});
  w.at({0}) = Poly::parse("2");
  w.at({1}) = Poly::parse("x1");
  auto pairing = v.product(w).contract(0, 1);
  CHECK(pairing.at({}) == Poly::parse("2*x1 + x1*x2^2"));
}

TEST_CASE("symmetrize and alternate weights") {
  auto ch = base_chart(2);
  TensorField t(ch, {Variance::Lower, Variance::Lower});
  t.at({0, 1}) = Poly(Rational(1));
  auto s = t.symmetrize({0, 1});
  CHECK(s.at({0, 1}) == Poly(Rational(1, 2)));
  CHECK(s.at({1, 0}) == Poly(Rational(1, 2)));
  auto a = t.alternate({0, 1});
  CHECK(a.at({0, 1}) == Poly(Rational(1, 2)));
  CHECK(a.at({1, 0}) == Poly(Rational(-1, 2)));
  // Idempotence.
  CHECK(s.symmetrize({0, 1}) == s);
  CHECK(a.alternate({0, 1}) == a);
  // Alternation kills symmetric part and vice versa.
  CHECK(s.alternate({0, 1}).is_zero());
  CHECK(a.symmetrize({0, 1}).is_zero());
}

TEST_CASE("pair_skew example") {
  auto ch = base_chart(2);
  TensorField t(ch, std::vector<Variance>(4, Variance::Lower));
  t.at({1, 0, 1, 0}) = Poly(Rational(2));  // T_2121 = 2 (1-based)
  auto p = t.pair_skew(0, 1, 2, 3);
  CHECK(p.at({1, 0, 1, 0}) == Poly(Rational(1, 2)));
  CHECK(p.at({0, 1, 1, 0}) == Poly(Rational(-1, 2)));
  CHECK(p.at({0, 1, 0, 1}) == Poly(Rational(1, 2)));
  // Idempotent.
  CHECK(p.pair_skew(0, 1, 2, 3) == p);
}

TEST_CASE("trace_free basic shapes") {
  auto ch = base_chart(2);
  // E_A^B with T = diag(1, 0): trace-free part diag(1/2, -1/2).
  TensorField t(ch, {Variance::Lower, Variance::Upper});
  t.at({0, 0}) = Poly(Rational(1));
  auto t0 = t.trace_free();
  CHECK(t0.at({0, 0}) == Poly(Rational(1, 2)));
  CHECK(t0.at({1, 1}) == Poly(Rational(-1, 2)));
  CHECK(t0.contract(0, 1).at({}).is_zero());
  // Projection is idempotent and kills pure deltas.
  CHECK(t0.trace_free() == t0);
  CHECK(TensorField::kronecker(ch).trace_free().is_zero());
}

TEST_CASE("trace_free rank three symmetric shape") {
  auto ch = base_chart(3);
  TensorField t(ch, {Variance::Lower, Variance::Lower, Variance::Upper});
  t.at({0, 1, 2}) = Poly::parse("x1");
  t.at({1, 0, 2}) = Poly::parse("x1");
  t.at({0, 0, 0}) = Poly::parse("3");
  auto t0 = t.trace_free();
  CHECK(t0.contract(2, 0).is_zero());
  CHECK(t0.contract(2, 1).is_zero());
  CHECK(t0.trace_free() == t0);
  // Symmetry in the two lower slots is preserved.
  CHECK(t0.permute({1, 0, 2}) == t0.symmetrize({0, 1}).permute({1, 0, 2}));
}

TEST_CASE("window part") {
  auto ch = base_chart(3);
  TensorField t(ch, std::vector<Variance>(4, Variance::Lower));
  t.at({0, 1, 0, 2}) = Poly(Rational(6));
  auto ps = t.pair_skew(0, 1, 2, 3);
  auto w = ps.window_part();
  // Window tensors: pair-skew, exchange-symmetric, first Bianchi holds.
  CHECK(w.alternate({0, 1}) == w);
  CHECK(w.alternate({2, 3}) == w);
  CHECK(w.permute({2, 3, 0, 1}) == w);
  CHECK(w.alternate({0, 1, 2}).is_zero());
  CHECK(w.window_part() == w);
}

TEST_CASE("coordinate derivative") {
  auto ch = base_chart(2);
  auto s = TensorField::scalar(ch, Poly::parse("x1^2*x2"));
  auto ds = s.coordinate_derivative();
  CHECK(ds.at({0}) == Poly::parse("2*x1*x2"));
  CHECK(ds.at({1}) == Poly::parse("x1^2"));
}
