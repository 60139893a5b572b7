#pragma once

#include <vector>

#include "polyalab/numerics.hpp"

namespace polyalab {

// Coefficients alpha_j > 0 of a hypoexponential density; a_j = 1 / alpha_j.
class ParamVector {
 public:
  explicit ParamVector(std::vector<Float> alpha);
  static ParamVector from_doubles(const std::vector<double>& alpha);
  static ParamVector from_rates(const std::vector<Float>& a);

  std::size_t size() const { return alpha_.size(); }
  const std::vector<Float>& alpha() const { return alpha_; }
  const std::vector<Float>& rates() const { return a_; }
  bool distinct() const { return distinct_; }
  // alpha_1 ... alpha_m
  Float alpha_product() const;
  // a_1 ... a_m
  Float rate_product() const;

 private:
  std::vector<Float> alpha_;
  std::vector<Float> a_;
  bool distinct_ = true;
};

template <class T>
struct SymPolyTable {
  std::vector<T> values;
};

// h_0..h_n by the prefix recurrence h_p(x_1..x_k) = h_p(x_1..x_{k-1}) + x_k h_{p-1}(x_1..x_k).
template <class T>
std::vector<T> h_table(const std::vector<T>& args, unsigned n) {
  std::vector<T> h(n + 1, T(0));
  h[0] = T(1);
  for (const T& x : args)
    for (unsigned p = 1; p <= n; ++p) h[p] += x * h[p - 1];
  return h;
}

template <class T>
T h_eval(const std::vector<T>& args, unsigned p) {
  return h_table(args, p)[p];
}

template <class T>
std::vector<T> e_table(const std::vector<T>& args) {
  std::vector<T> e(args.size() + 1, T(0));
  e[0] = T(1);
  for (std::size_t k = 0; k < args.size(); ++k)
    for (std::size_t p = k + 1; p >= 1; --p) e[p] += args[k] * e[p - 1];
  return e;
}

template <class T>
T e_eval(const std::vector<T>& args, unsigned p) {
  if (p > args.size()) return T(0);
  return e_table(args)[p];
}

// Jacobi-Trudi: e_k = det(h_{1-i+j})_{i,j=1..k}.
SymPolyTable<Exact> h_to_e(const SymPolyTable<Exact>& h, unsigned m);
SymPolyTable<Float> h_to_e(const SymPolyTable<Float>& h, unsigned m);

// sum_{p=0}^{N} h_p(args) z^p; needs |z| < 1 / max(args).
Float h_generating_partial_sum(const std::vector<Float>& args, const Float& z, unsigned n);

}  // namespace polyalab
