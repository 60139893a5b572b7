// Parameter recovery from moments or Maclaurin data, and powers of densities
// whose rates form an arithmetic progression.
#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyalab/lab.hpp"

namespace polyalab {

namespace {

Float factorial(unsigned n) {
  Float f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Roots of z^m - e_1 z^{m-1} + e_2 z^{m-2} - ...
std::vector<Float> roots_from_e(const SymPolyTable<Float>& e, unsigned m) {
  std::vector<Float> coeffs(m + 1);
  for (unsigned k = 0; k <= m; ++k) coeffs[k] = (k % 2 ? -1 : 1) * e.values[k];
  std::vector<Float> r = real_roots_monic(coeffs);
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<Float> moments_of(const ParamVector& p, unsigned m) {
  std::vector<Float> h = h_table(p.alpha(), m);
  std::vector<Float> mu(m);
  for (unsigned k = 1; k <= m; ++k) mu[k - 1] = factorial(k) * h[k];
  return mu;
}

}  // namespace

RecoveryResult recover_from_moments(const std::vector<Float>& mu, unsigned m) {
  if (m < 1) throw Error(ErrorKind::Precondition, "m must be positive");
  if (mu.size() != m)
    throw Error(ErrorKind::Dimension, "expected " + std::to_string(m) + " moments, got " +
                                          std::to_string(mu.size()));
  SymPolyTable<Float> h;
  h.values.push_back(Float(1));
  for (unsigned k = 1; k <= m; ++k) h.values.push_back(mu[k - 1] / factorial(k));
  std::vector<Float> alpha = roots_from_e(h_to_e(h, m), m);
  ParamVector rec(alpha);
  std::vector<Float> back = moments_of(rec, m);
  Float residual = 0;
  for (unsigned k = 0; k < m; ++k) residual = std::max(residual, Float(abs(back[k] - mu[k])));
  return {rec, residual};
}

std::vector<Float> maclaurin_derivatives(const ParamVector& p) {
  const unsigned m = static_cast<unsigned>(p.size());
  std::vector<Float> h = h_table(p.rates(), m);
  const Float prod = p.rate_product();
  std::vector<Float> c(m + 1);
  for (unsigned j = 0; j <= m; ++j) c[j] = (j % 2 ? -1 : 1) * prod * h[j];
  return c;
}

RecoveryResult recover_from_maclaurin(const std::vector<Float>& c, unsigned m) {
  if (m < 1) throw Error(ErrorKind::Precondition, "m must be positive");
  if (c.size() != m + 1)
    throw Error(ErrorKind::Dimension, "expected " + std::to_string(m + 1) +
                                          " derivative values, got " + std::to_string(c.size()));
  if (c[0] == 0) throw Error(ErrorKind::DegenerateInput, "the leading derivative value is zero");
  SymPolyTable<Float> h;
  h.values.push_back(Float(1));
  for (unsigned j = 1; j <= m; ++j) h.values.push_back((j % 2 ? -1 : 1) * c[j] / c[0]);
  std::vector<Float> a = roots_from_e(h_to_e(h, m), m);
  std::vector<Float> alpha;
  for (const Float& x : a) alpha.push_back(1 / x);
  std::sort(alpha.begin(), alpha.end());
  ParamVector rec(alpha);
  std::vector<Float> back = maclaurin_derivatives(rec);
  Float residual = 0;
  for (unsigned j = 0; j <= m; ++j) residual = std::max(residual, Float(abs(back[j] - c[j])));
  return {rec, residual};
}

APPowerResult arithmetic_progression_power(const ParamVector& p, unsigned k) {
  if (k < 1) throw Error(ErrorKind::Precondition, "k must be a positive integer");
  const unsigned m = static_cast<unsigned>(p.size());
  std::vector<Float> a = p.rates();
  std::sort(a.begin(), a.end());
  const std::vector<Float> rates = a;
  const Float d = m > 1 ? Float(a[1] - a[0]) : Float(0);
  for (unsigned i = 1; i < m; ++i)
    if (abs(a[i] - a[i - 1] - d) > Float("1e-10") * std::max(Float(1), a.back()))
      throw Error(ErrorKind::Precondition, "the reciprocal parameters are not an arithmetic progression");
  const unsigned mk = k * (m - 1) + 1;
  const bool erlang = m == 1 || d <= Float("1e-10") * a.back();

  std::vector<Float> mu(mk);
  Float norm;
  {
    const unsigned work = precision_bits();
    auto compute = [&](unsigned bits, Float& ratio) {
      PrecisionGuard guard(bits);
      if (erlang) {
        const Float rate = std::accumulate(a.begin(), a.end(), Float(0)) / m;
        const Float lam = rate * k;
        Float lead = pow(rate, m) / factorial(m - 1);
        norm = pow(lead, k) * factorial(mk - 1) / pow(lam, mk);
        for (unsigned n = 1; n <= mk; ++n) mu[n - 1] = factorial(mk + n - 1) / (factorial(mk - 1) * pow(lam, n));
        ratio = 1;
        return;
      }
      // Lambda(x) = e^{-a_0 x} sum_i c_i y^i with y = e^{-d x}
      std::vector<Float> a;
      for (const Float& r : rates) a.push_back(at_working_precision(r));
      const Float d = a[1] - a[0];
      Float prod = 1;
      for (const Float& r : a) prod *= r;
      std::vector<Float> c(m);
      for (unsigned i = 0; i < m; ++i) {
        Float den = 1;
        for (unsigned j = 0; j < m; ++j)
          if (j != i) den *= a[j] - a[i];
        c[i] = prod / den;
      }
      std::vector<Float> b{Float(1)};
      for (unsigned t = 0; t < k; ++t) {
        std::vector<Float> next(b.size() + m - 1, Float(0));
        for (std::size_t s = 0; s < b.size(); ++s)
          for (unsigned i = 0; i < m; ++i) next[s + i] += b[s] * c[i];
        b = std::move(next);
      }
      Float mag = 0;
      norm = 0;
      for (std::size_t s = 0; s < b.size(); ++s) {
        const Float lam = a[0] * k + d * static_cast<double>(s);
        norm += b[s] / lam;
        mag += abs(b[s]) / lam;
      }
      for (unsigned n = 1; n <= mk; ++n) {
        Float acc = 0;
        for (std::size_t s = 0; s < b.size(); ++s) {
          const Float lam = a[0] * k + d * static_cast<double>(s);
          acc += b[s] / pow(lam, n + 1);
        }
        mu[n - 1] = acc * factorial(n) / norm;
      }
      ratio = mag / abs(norm);
    };
    Float ratio;
    compute(work + 64, ratio);
    const double lost = std::log2(std::max(1.0, ratio.convert_to<double>()));
    if (lost > 48) compute(work + 64 + static_cast<unsigned>(std::ceil(lost)), ratio);
    for (Float& v : mu) v = at_working_precision(v);
    norm = at_working_precision(norm);
  }

  RecoveryResult rec = recover_from_moments(mu, mk);
  const KernelSpec base = hw_kernel(p);
  const KernelSpec fitted = hw_kernel(rec.recovered);
  Float residual = 0;
  const Float horizon = base.decay_horizon();
  for (unsigned i = 0; i <= 40; ++i) {
    const Float x = horizon * i / 40;
    const Float lhs = norm * eval(fitted, x).value;
    const Float rhs = pow(eval(base, x).value, k);
    residual = std::max(residual, Float(abs(lhs - rhs)));
  }
  const std::vector<Float> xs = ap_grid(5, Float("0.5"));
  const std::vector<Float> ys = ap_grid(5, Float("0.5"), Float(-1));
  TnReport ver = check_tn(sample(power_of(base, Float(k)), xs, ys), kFullOrder);
  return {rec.recovered, norm, residual, ver};
}

}  // namespace polyalab
