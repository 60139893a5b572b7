#include "polyalab/symfunc.hpp"

namespace polyalab {

ParamVector::ParamVector(std::vector<Float> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw Error(ErrorKind::Domain, "parameter vector must be non-empty");
  for (const Float& v : alpha_)
    if (!(v > 0) || !isfinite(v))
      throw Error(ErrorKind::Domain, "parameters must be positive and finite");
  a_.reserve(alpha_.size());
  for (const Float& v : alpha_) a_.push_back(1 / v);
  const Float rel("1e-12");
  for (std::size_t i = 0; i < alpha_.size(); ++i)
    for (std::size_t j = i + 1; j < alpha_.size(); ++j)
      if (abs(alpha_[i] - alpha_[j]) <= rel * std::max(alpha_[i], alpha_[j]))
        distinct_ = false;
}

ParamVector ParamVector::from_doubles(const std::vector<double>& alpha) {
  std::vector<Float> v;
  v.reserve(alpha.size());
  for (double d : alpha) v.emplace_back(d);
  return ParamVector(std::move(v));
}

ParamVector ParamVector::from_rates(const std::vector<Float>& a) {
  std::vector<Float> v;
  v.reserve(a.size());
  for (const Float& r : a) {
    if (!(r > 0)) throw Error(ErrorKind::Domain, "rates must be positive");
    v.push_back(1 / r);
  }
  return ParamVector(std::move(v));
}

Float ParamVector::alpha_product() const {
  Float p(1);
  for (const Float& v : alpha_) p *= v;
  return p;
}

Float ParamVector::rate_product() const {
  Float p(1);
  for (const Float& v : a_) p *= v;
  return p;
}

namespace {

template <class T>
Matrix<T> jacobi_trudi(const std::vector<T>& h, unsigned k) {
  Matrix<T> jt(k, k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) {
      int idx = 1 - static_cast<int>(i) + static_cast<int>(j);
      jt(i, j) = idx < 0 ? T(0) : h[idx];
    }
  return jt;
}

template <class T>
void check_table(const SymPolyTable<T>& h, unsigned m) {
  if (h.values.size() < m + 1)
    throw Error(ErrorKind::Dimension, "h-table must contain h_0..h_m");
}

}  // namespace

SymPolyTable<Exact> h_to_e(const SymPolyTable<Exact>& h, unsigned m) {
  check_table(h, m);
  SymPolyTable<Exact> e;
  e.values.push_back(Exact(1));
  for (unsigned k = 1; k <= m; ++k) e.values.push_back(det_exact(jacobi_trudi(h.values, k)));
  return e;
}

SymPolyTable<Float> h_to_e(const SymPolyTable<Float>& h, unsigned m) {
  check_table(h, m);
  SymPolyTable<Float> e;
  e.values.push_back(Float(1));
  for (unsigned k = 1; k <= m; ++k)
    e.values.push_back(det_float(jacobi_trudi(h.values, k)).value);
  return e;
}

Float h_generating_partial_sum(const std::vector<Float>& args, const Float& z, unsigned n) {
  if (n < 1) throw Error(ErrorKind::Domain, "need at least one term");
  for (const Float& a : args)
    if (abs(a * z) >= 1)
      throw Error(ErrorKind::Domain, "z lies outside the radius of convergence");
  std::vector<Float> h = h_table(args, n);
  Float sum(0), zp(1);
  for (unsigned p = 0; p <= n; ++p) {
    sum += h[p] * zp;
    zp *= z;
  }
  return sum;
}

}  // namespace polyalab
