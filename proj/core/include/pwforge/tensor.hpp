#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pwforge/poly.hpp"

namespace pwf {

enum class Variance { Lower, Upper };

// A named coordinate chart; the variable order fixes the index order.
struct Chart {
  std::string name;
  std::vector<std::string> vars;
  int dim() const { return int(vars.size()); }
  bool operator==(const Chart& o) const {
    return name == o.name && vars == o.vars;
  }
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, std::vector<std::string> vars);

// Base chart with coordinates x1..xn.
ChartPtr base_chart(int n);

// Dense tensor field over a chart; components stored row-major, indices
// run 0..dim-1 internally (1-based in all serialized forms).
class TensorField {
 public:
  TensorField() = default;
  TensorField(ChartPtr chart, std::vector<Variance> idx);

  static TensorField scalar(ChartPtr chart, Poly value);
  static TensorField kronecker(ChartPtr chart);  // delta_A^B: idx (Lower,Upper)

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Variance>& indices() const { return idx_; }
  int rank() const { return int(idx_.size()); }
  int dim() const { return chart_->dim(); }

  const Poly& at(const std::vector<int>& mi) const;
  Poly& at(const std::vector<int>& mi);
  const std::vector<Poly>& components() const { return comp_; }
  std::vector<Poly>& components() { return comp_; }

  bool is_zero() const;

  TensorField operator-() const;
  TensorField operator+(const TensorField& o) const;
  TensorField operator-(const TensorField& o) const;
  TensorField operator*(const Rational& c) const;
  TensorField operator*(const Poly& s) const;
  TensorField& operator+=(const TensorField& o) { return *this = *this + o; }
  TensorField& operator-=(const TensorField& o) { return *this = *this - o; }
  bool operator==(const TensorField& o) const;

  // Outer product: indices of *this followed by those of o.
  TensorField product(const TensorField& o) const;

  // Contract an Upper slot with a Lower slot (0-based positions).
  TensorField contract(int slot_a, int slot_b) const;

  // Slot permutation: result slot i = old slot perm[i].
  TensorField permute(const std::vector<int>& perm) const;

  // Symmetrize / alternate over the given slots with 1/k! weight.
  TensorField symmetrize(const std::vector<int>& slots) const;
  TensorField alternate(const std::vector<int>& slots) const;

  // Proj_[s0 s1][s2 s3]: compose the two alternations (overall 1/4 weight
  // over the two transpositions).
  TensorField pair_skew(int s0, int s1, int s2, int s3) const;

  // Projection of a pair-skew rank-4 tensor onto the window symmetry type
  // (pair-exchange symmetric part minus its full alternation); input must
  // already be skew in (0,1) and (2,3).
  TensorField window_part() const;

  // Exact removal of all delta-trace parts: the unique GL-equivariant
  // complement of the span of delta-insertions, computed by orthogonal
  // projection in the standard component inner product.  Works for any
  // index pattern; identity when no Upper/Lower pair exists.
  TensorField trace_free() const;

  // Coordinate derivative: new leading Lower slot, (dT)_{a...} = d_a T_{...}.
  TensorField coordinate_derivative() const;

  // Apply poly substitution component-wise.
  TensorField subst(const std::string& var, const Poly& value) const;

  // Maximum total degree over components.
  int degree() const;

 private:
  void check_compatible(const TensorField& o) const;

  ChartPtr chart_;
  std::vector<Variance> idx_;
  std::vector<Poly> comp_;
};

// Multi-index helpers.
size_t flat_index(const std::vector<int>& mi, int dim);
bool next_multi_index(std::vector<int>& mi, int dim);
std::vector<int> first_multi_index(int rank);

}  // namespace pwf
