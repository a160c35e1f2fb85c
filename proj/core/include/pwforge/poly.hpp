#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pwforge/rational.hpp"

namespace pwf {

// Sparse multivariate polynomial with exact rational coefficients.
// Exponents are non-negative except for the distinguished variable "t",
// which may carry negative exponents (Laurent in t only).
//
// Monomials are keyed by exponent vectors relative to the polynomial's own
// ordered variable list; binary operations align the variable lists by
// sorted name union first.  Map ordering of exponent vectors is
// lexicographic, which fixes the canonical term order everywhere (printing,
// matrix extraction, basis normalization).
class Poly {
 public:
  using Expo = std::vector<int32_t>;

  Poly() = default;
  explicit Poly(const Rational& c);                       // constant
  Poly(const std::string& var, int32_t power = 1);        // single variable

  static Poly zero() { return Poly(); }
  static Poly constant(const Rational& c) { return Poly(c); }
  static Poly variable(const std::string& name) { return Poly(name); }

  // Parses the linear ASCII form: terms joined by '+'/'-', each term a
  // '*'-separated product of an optional rational coefficient "a" or "a/b"
  // and factors "var" or "var^k" (k may be negative for t only).
  static Poly parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Expo, Rational>& terms() const { return terms_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Rational& c) const;
  Poly operator/(const Rational& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly diff(const std::string& var) const;

  // Substitute a polynomial for a variable; the variable must occur with
  // non-negative exponents only.
  Poly subst(const std::string& var, const Poly& value) const;

  // Substitute var -> c * var (works for Laurent exponents; c must be
  // invertible, which every nonzero rational is).
  Poly scale_var(const std::string& var, const Rational& c) const;

  // Substitute var -> factor * var where factor is another variable
  // (used for homogeneity checks with Laurent exponents).
  Poly scale_var_by(const std::string& var, const std::string& factor) const;

  int degree() const;                                        // total degree
  int degree_in(const std::vector<std::string>& subset) const;
  bool depends_on(const std::string& var) const;

  // Coefficient of the monomial in `subset` variables given by `expo`
  // (a polynomial in the remaining variables).
  Poly coefficient_of(const std::vector<std::string>& subset,
                      const std::vector<int32_t>& expo) const;

  // Splits into (monomial in subset -> coefficient poly in other vars).
  std::map<Expo, Poly> collect(const std::vector<std::string>& subset) const;

  std::string str() const;

 private:
  void prune();
  void check_laurent() const;
  static Poly aligned(const Poly& p, const std::vector<std::string>& vars);

  std::vector<std::string> vars_;   // sorted, unique
  std::map<Expo, Rational> terms_;  // exponent vector -> nonzero coefficient
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

}  // namespace pwf
