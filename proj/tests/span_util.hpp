#pragma once

// Exact span-membership checks for polynomial and tensor solution spaces:
// flatten onto coordinate vectors over the union of occurring monomials.

#include <map>
#include <string>
#include <vector>

#include "pwforge/linalg.hpp"
#include "pwforge/tensor.hpp"

namespace pwtest {

class Flattener {
 public:
  void observe(const pwf::Poly& p, int component = 0) {
    for (const auto& [expo, c] : p.terms()) {
      (void)c;
      key(component, p.vars(), expo);
    }
  }
  void observe(const pwf::TensorField& t) {
    const auto& comps = t.components();
    for (size_t i = 0; i < comps.size(); ++i) observe(comps[i], int(i));
  }
  pwf::DenseVec vec(const pwf::Poly& p, int component = 0) const {
    pwf::DenseVec out(cols_.size(), pwf::Rational(0));
    for (const auto& [expo, c] : p.terms()) {
      out[size_t(cols_.at(label(component, p.vars(), expo)))] = c;
    }
    return out;
  }
  pwf::DenseVec vec(const pwf::TensorField& t) const {
    pwf::DenseVec out(cols_.size(), pwf::Rational(0));
    const auto& comps = t.components();
    for (size_t i = 0; i < comps.size(); ++i) {
      for (const auto& [expo, c] : comps[i].terms()) {
        out[size_t(cols_.at(label(int(i), comps[i].vars(), expo)))] = c;
      }
    }
    return out;
  }

 private:
  static std::string label(int component,
                           const std::vector<std::string>& vars,
                           const pwf::Poly::Expo& expo) {
    std::string s = std::to_string(component) + ":";
    for (size_t i = 0; i < vars.size(); ++i) {
      if (expo[i] != 0) s += vars[i] + "^" + std::to_string(expo[i]) + " ";
    }
    return s;
  }
  void key(int component, const std::vector<std::string>& vars,
           const pwf::Poly::Expo& expo) {
    std::string s = label(component, vars, expo);
    if (!cols_.count(s)) {
      int next = int(cols_.size());
      cols_[s] = next;
    }
  }
  std::map<std::string, int> cols_;
};

inline bool in_span(const std::vector<pwf::TensorField>& basis,
                    const pwf::TensorField& t) {
  Flattener fl;
  for (const auto& b : basis) fl.observe(b);
  fl.observe(t);
  pwf::Span span{int(fl.vec(t).size())};
  for (const auto& b : basis) span.insert(fl.vec(b));
  return span.contains(fl.vec(t));
}

inline bool poly_in_span(const std::vector<pwf::Poly>& basis,
                         const pwf::Poly& p) {
  Flattener fl;
  for (const auto& b : basis) fl.observe(b);
  fl.observe(p);
  pwf::Span span{int(fl.vec(p).size())};
  for (const auto& b : basis) span.insert(fl.vec(b));
  return span.contains(fl.vec(p));
}

// Mutual containment of two lists of same-shape tensor fields.
inline bool spans_equal(const std::vector<pwf::TensorField>& a,
                        const std::vector<pwf::TensorField>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& t : a)
    if (!in_span(b, t)) return false;
  for (const auto& t : b)
    if (!in_span(a, t)) return false;
  return true;
}

}  // namespace pwtest
