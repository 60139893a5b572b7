#include <algorithm>
#include <cmath>
#include <limits>

#include "polyalab/densities.hpp"

namespace polyalab {

Float hciz_det(const std::vector<Float>& a, const std::vector<Float>& b) {
  const std::size_t m = a.size();
  if (m == 0 || b.size() != m)
    throw Error(ErrorKind::Dimension, "a and b must have the same positive length");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (a[i] == a[j] || b[i] == b[j])
        throw Error(ErrorKind::DegenerateInput, "entries of a and b must be pairwise distinct");

  // det(exp(b_i a_j)) cancels down to about V(a)V(b); carry the lost bits.
  Float va = vandermonde(a), vb = vandermonde(b);
  auto bits_lost = [](const Float& v) {
    const double l = -std::log2(std::abs(v.convert_to<double>()));
    return std::isfinite(l) ? std::max(0.0, l) : 2048.0;
  };
  const double lost = bits_lost(va) + bits_lost(vb);
  unsigned extra = 64 + static_cast<unsigned>(std::max(0.0, std::ceil(lost)));
  Float out;
  {
    PrecisionGuard guard(precision_bits() + extra);
    // the products must be formed at the raised precision too
    Matrix<Float> e(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        e(i, j) = exp(at_working_precision(b[i]) * at_working_precision(a[j]));
    Float c(1);
    for (std::size_t j = 2; j < m; ++j) {
      Float f(1);
      for (std::size_t k = 2; k <= j; ++k) f *= k;
      c *= f;
    }
    out = c * det_float(e).value / (vandermonde(a) * vandermonde(b));
  }
  return at_working_precision(out);
}

EvalResult hciz_series(const std::vector<Float>& a, const Float& x, unsigned n_terms) {
  if (n_terms < 1) throw Error(ErrorKind::Domain, "need at least one term");
  if (a.empty()) throw Error(ErrorKind::Dimension, "a must be non-empty");
  const std::size_t m = a.size();
  std::vector<Float> h = h_table(a, n_terms);
  // t_j = (m-1)! x^j / (j+m-1)!
  Float t(1), sum(0), abs_sum(0);
  for (unsigned j = 0; j <= n_terms; ++j) {
    if (j > 0) t = t * x / static_cast<double>(j + m - 1);
    sum += h[j] * t;
    abs_sum += abs(h[j] * t);
  }
  // h_j(a) <= C(j+m-1, m-1) A^j, so term j <= (A|x|)^j / j!
  Float big(0);
  for (const Float& v : a) big = std::max(big, Float(abs(v)));
  Float ax = big * abs(x);
  Float next(1);
  for (unsigned j = 1; j <= n_terms + 1; ++j) next = next * ax / static_cast<double>(j);
  Float tail;
  if (ax < n_terms + 2)
    tail = next / (1 - ax / static_cast<double>(n_terms + 2));
  else
    tail = Float(std::numeric_limits<double>::infinity());
  Float rounding = abs_sum * unit_roundoff() * static_cast<double>(4 * n_terms + 4 * m);
  return {sum, tail + rounding};
}

}  // namespace polyalab
