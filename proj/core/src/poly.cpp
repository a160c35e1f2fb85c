#include "pwforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pwf {

namespace {
const std::string kLaurentVar = "t";
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

Poly::Poly(const std::string& var, int32_t power) {
  if (power == 0) {
    terms_[{}] = 1;
    return;
  }
  if (power < 0 && var != kLaurentVar)
    throw std::invalid_argument("negative exponent on non-t variable " + var);
  vars_ = {var};
  terms_[{power}] = 1;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](int32_t e) { return e == 0; }));
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::domain_error("poly is not constant");
  return terms_.begin()->second;
}

void Poly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
  // Drop variables that no longer occur.
  if (terms_.empty()) {
    vars_.clear();
    return;
  }
  std::vector<size_t> used;
  for (size_t i = 0; i < vars_.size(); ++i) {
    bool occurs = false;
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) {
        occurs = true;
        break;
      }
    if (occurs) used.push_back(i);
  }
  if (used.size() == vars_.size()) return;
  std::vector<std::string> nv;
  for (size_t i : used) nv.push_back(vars_[i]);
  std::map<Expo, Rational> nt;
  for (const auto& [e, c] : terms_) {
    Expo ne;
    ne.reserve(used.size());
    for (size_t i : used) ne.push_back(e[i]);
    nt[std::move(ne)] = c;
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

Poly Poly::aligned(const Poly& p, const std::vector<std::string>& vars) {
  if (p.vars_ == vars) return p;
  Poly r;
  r.vars_ = vars;
  std::vector<int> pos(p.vars_.size());
  for (size_t i = 0; i < p.vars_.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), p.vars_[i]);
    pos[i] = int(it - vars.begin());
  }
  for (const auto& [e, c] : p.terms_) {
    Expo ne(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    r.terms_[std::move(ne)] = c;
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<std::string> uv;
  std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                 std::back_inserter(uv));
  Poly a = aligned(*this, uv), b = aligned(o, uv);
  for (const auto& [e, c] : b.terms_) {
    auto [it, fresh] = a.terms_.emplace(e, c);
    if (!fresh) it->second += c;
  }
  a.prune();
  return a;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<std::string> uv;
  std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                 std::back_inserter(uv));
  Poly a = aligned(*this, uv), b = aligned(o, uv);
  Poly r;
  r.vars_ = uv;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Expo e(uv.size());
      for (size_t i = 0; i < uv.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, fresh] = r.terms_.emplace(std::move(e), ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  r.prune();
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::operator/(const Rational& c) const {
  if (c == 0) throw std::invalid_argument("division by zero");
  return *this * (Rational(1) / c);
}

bool Poly::operator==(const Poly& o) const {
  return (*this - o).is_zero();
}

Poly Poly::diff(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return Poly();
  size_t idx = it - vars_.begin();
  Poly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Expo ne = e;
    ne[idx] -= 1;
    r.terms_[std::move(ne)] = c * e[idx];
  }
  r.prune();
  return r;
}

Poly Poly::subst(const std::string& var, const Poly& value) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return *this;
  size_t idx = it - vars_.begin();
  // Group by power of var, evaluate by Horner on sorted powers.
  std::map<int32_t, Poly> by_pow;
  for (const auto& [e, c] : terms_) {
    if (e[idx] < 0)
      throw std::domain_error("cannot substitute into negative power of " + var);
    Expo ne = e;
    ne[idx] = 0;
    Poly mono;
    mono.vars_ = vars_;
    mono.terms_[ne] = c;
    mono.prune();
    auto [jt, fresh] = by_pow.emplace(e[idx], mono);
    if (!fresh) jt->second += mono;
  }
  Poly result;
  Poly power(Rational(1));
  int32_t reached = 0;
  for (const auto& [k, coeff] : by_pow) {
    for (; reached < k; ++reached) power *= value;
    result += coeff * power;
  }
  return result;
}

Poly Poly::scale_var(const std::string& var, const Rational& c) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return *this;
  if (c == 0) throw std::invalid_argument("scale_var by zero");
  size_t idx = it - vars_.begin();
  auto rat_pow = [](Rational base, int32_t k) {
    Rational r = 1;
    if (k < 0) {
      base = Rational(1) / base;
      k = -k;
    }
    for (int32_t i = 0; i < k; ++i) r *= base;
    return r;
  };
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v *= rat_pow(c, e[idx]);
  r.prune();
  return r;
}

Poly Poly::scale_var_by(const std::string& var, const std::string& factor) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return *this;
  if (factor != kLaurentVar) {
    // Positive powers only unless the factor itself tolerates Laurent.
    for (const auto& [e, c] : terms_)
      if (e[it - vars_.begin()] < 0)
        throw std::domain_error("Laurent power needs Laurent-capable factor");
  }
  size_t idx = it - vars_.begin();
  Poly r;
  for (const auto& [e, c] : terms_) {
    Poly mono;
    mono.vars_ = vars_;
    mono.terms_[e] = c;
    mono.prune();
    r += mono * Poly(factor, e[idx]);
  }
  return r;
}

int Poly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int32_t k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

int Poly::degree_in(const std::vector<std::string>& subset) const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (size_t i = 0; i < vars_.size(); ++i)
      if (std::find(subset.begin(), subset.end(), vars_[i]) != subset.end())
        s += e[i];
    d = std::max(d, s);
  }
  return d;
}

bool Poly::depends_on(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return false;
  size_t idx = it - vars_.begin();
  for (const auto& [e, c] : terms_)
    if (e[idx] != 0) return true;
  return false;
}

std::map<Poly::Expo, Poly> Poly::collect(
    const std::vector<std::string>& subset) const {
  std::vector<int> sel(vars_.size(), -1);
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(subset.begin(), subset.end(), vars_[i]);
    if (it != subset.end()) sel[i] = int(it - subset.begin());
  }
  std::map<Expo, Poly> out;
  for (const auto& [e, c] : terms_) {
    Expo key(subset.size(), 0);
    Expo rest = e;
    for (size_t i = 0; i < vars_.size(); ++i)
      if (sel[i] >= 0) {
        key[sel[i]] = e[i];
        rest[i] = 0;
      }
    Poly mono;
    mono.vars_ = vars_;
    mono.terms_[rest] = c;
    mono.prune();
    auto [it, fresh] = out.emplace(std::move(key), mono);
    if (!fresh) it->second += mono;
  }
  return out;
}

Poly Poly::coefficient_of(const std::vector<std::string>& subset,
                          const std::vector<int32_t>& expo) const {
  auto groups = collect(subset);
  auto it = groups.find(expo);
  return it == groups.end() ? Poly() : it->second;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return s[i];
  }
};

std::string read_number(Lexer& lx) {
  lx.skip();
  size_t start = lx.i;
  while (lx.i < lx.s.size() && std::isdigit((unsigned char)lx.s[lx.i])) ++lx.i;
  if (lx.i == start) throw std::invalid_argument("expected number in: " + lx.s);
  return lx.s.substr(start, lx.i - start);
}

std::string read_name(Lexer& lx) {
  lx.skip();
  size_t start = lx.i;
  while (lx.i < lx.s.size() &&
         (std::isalnum((unsigned char)lx.s[lx.i]) || lx.s[lx.i] == '_'))
    ++lx.i;
  return lx.s.substr(start, lx.i - start);
}

Poly read_factor(Lexer& lx) {
  lx.skip();
  if (std::isdigit((unsigned char)lx.peek())) {
    std::string num = read_number(lx);
    if (!lx.eof() && lx.peek() == '/') {
      ++lx.i;
      std::string den = read_number(lx);
      return Poly(parse_rational(num + "/" + den));
    }
    return Poly(parse_rational(num));
  }
  if (std::isalpha((unsigned char)lx.peek()) || lx.peek() == '_') {
    std::string name = read_name(lx);
    int32_t power = 1;
    if (!lx.eof() && lx.peek() == '^') {
      ++lx.i;
      bool neg = false;
      lx.skip();
      if (lx.peek() == '-') {
        neg = true;
        ++lx.i;
      }
      power = std::stoi(read_number(lx));
      if (neg) power = -power;
    }
    return Poly(name, power);
  }
  throw std::invalid_argument("bad polynomial factor in: " + lx.s);
}

}  // namespace

Poly Poly::parse(const std::string& text) {
  Lexer lx{text};
  Poly result;
  bool first = true;
  while (!lx.eof()) {
    Rational sign = 1;
    lx.skip();
    if (lx.peek() == '+') {
      ++lx.i;
    } else if (lx.peek() == '-') {
      sign = -1;
      ++lx.i;
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in: " + text);
    }
    if (lx.eof()) throw std::invalid_argument("dangling sign in: " + text);
    Poly term = read_factor(lx);
    while (!lx.eof() && lx.peek() == '*') {
      ++lx.i;
      term *= read_factor(lx);
    }
    result += term * sign;
    first = false;
  }
  if (first) throw std::invalid_argument("empty polynomial text");
  return result;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (a < 0) {
      os << (first ? "-" : " - ");
      a = -a;
    } else if (!first) {
      os << " + ";
    }
    bool printed = false;
    if (a != 1) {
      os << a.str();
      printed = true;
    }
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vars_[i];
      if (e[i] != 1) os << "^" << e[i];
      printed = true;
    }
    if (!printed) os << "1";
    first = false;
  }
  return os.str();
}

void Poly::check_laurent() const {
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == kLaurentVar) continue;
    for (const auto& [e, c] : terms_)
      if (e[i] < 0)
        throw std::domain_error("negative exponent on " + vars_[i]);
  }
}

}  // namespace pwf
