#include "polyalab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <ios>

namespace polyalab {

namespace {

unsigned digits10_for_bits(unsigned bits) {
  // smallest digits10 whose backend precision covers `bits`
  unsigned d = static_cast<unsigned>(std::floor(bits * 0.30102999566398120));
  if (d < 1) d = 1;
  while (boost::multiprecision::detail::digits10_2_2(d) < bits) ++d;
  while (d > 1 && boost::multiprecision::detail::digits10_2_2(d - 1) >= bits) --d;
  return d;
}

struct DefaultPrecisionInit {
  DefaultPrecisionInit() { set_precision_bits(kDefaultPrecisionBits); }
} default_precision_init;

}  // namespace

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::InconsistentInput: return "inconsistent-input";
    case ErrorKind::RequiresDistinct: return "requires-distinct";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::Grid: return "grid";
    case ErrorKind::Sampling: return "sampling";
    case ErrorKind::Mode: return "mode";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

unsigned precision_bits() {
  Float probe;
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

void set_precision_bits(unsigned bits) {
  if (bits < kMinPrecisionBits)
    throw Error(ErrorKind::Domain, "precision must be at least 64 bits");
  Float::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::PrecisionGuard(unsigned bits)
    : saved_digits10_(Float::default_precision()) {
  set_precision_bits(bits);
}

PrecisionGuard::~PrecisionGuard() { Float::default_precision(saved_digits10_); }

Float at_working_precision(const Float& v) {
  Float r;
  mpfr_set(r.backend().data(), v.backend().data(), MPFR_RNDN);
  return r;
}

Float unit_roundoff() {
  Float u(1);
  return ldexp(u, -static_cast<int>(precision_bits()));
}

std::string to_decimal(const Float& v, int significant) {
  if (v == 0) return "0";
  return v.str(significant - 1, std::ios_base::scientific);
}

Float parse_float(const std::string& text) {
  try {
    Float v(text);
    if (!isfinite(v)) throw std::runtime_error("not finite");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "cannot parse number '" + text + "'");
  }
}

const char* to_string(SignClass s) {
  switch (s) {
    case SignClass::Negative: return "Negative";
    case SignClass::Zero: return "Zero";
    case SignClass::Positive: return "Positive";
  }
  return "Zero";
}

SignClass negate(SignClass s) {
  if (s == SignClass::Negative) return SignClass::Positive;
  if (s == SignClass::Positive) return SignClass::Negative;
  return SignClass::Zero;
}

Exact det_exact(const Matrix<Exact>& m) {
  if (!m.square()) throw Error(ErrorKind::Dimension, "det_exact needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Exact(1);

  // Clear denominators row by row, then run Bareiss over the integers.
  std::vector<Integer> a(n * n);
  Integer scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    Integer l(1);
    for (std::size_t j = 0; j < n; ++j)
      l = boost::multiprecision::lcm(l, Integer(denominator(m(i, j))));
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) {
      const Exact& q = m(i, j);
      a[i * n + j] = Integer(numerator(q)) * (l / Integer(denominator(q)));
    }
  }

  int sign = 1;
  Integer prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return Exact(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        a[i * n + j] = t / prev;
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  Exact det(a[n * n - 1], scale);
  return sign < 0 ? Exact(-det) : det;
}

namespace {

FloatDet det_float_impl(const Matrix<Float>& m, const Matrix<Float>* entry_errors) {
  if (!m.square()) throw Error(ErrorKind::Dimension, "det_float needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {Float(1), Float(0)};
  if (entry_errors && (entry_errors->rows() != n || entry_errors->cols() != n))
    throw Error(ErrorKind::Dimension, "entry error matrix shape mismatch");

  Matrix<Float> a = m;
  Matrix<Float> l(n, n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  bool negative = false;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Float best = abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      Float v = abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0) continue;  // zero column: det is exactly zero
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        if (j < k) std::swap(l(k, j), l(p, j));
      }
      std::swap(perm[k], perm[p]);
      negative = !negative;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Float f = a(i, k) / a(k, k);
      l(i, k) = f;
      a(i, k) = 0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }

  Float value(1);
  for (std::size_t k = 0; k < n; ++k) value *= a(k, k);
  if (negative) value = -value;

  const Float u = unit_roundoff();
  const Float nu = u * static_cast<double>(n);
  const Float gamma = nu / (1 - nu);

  // Row norms of the permuted input and of the backward error bound
  // gamma * |L||U|, plus any entry uncertainty.
  std::vector<Float> r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    Float ra(0), rlu(0), rd(0);
    const std::size_t src = perm[i];
    for (std::size_t j = 0; j < n; ++j) {
      ra += m(src, j) * m(src, j);
      Float lu = abs(a(i, j)) * (i <= j ? 1 : 0);
      for (std::size_t k = 0; k < std::min(i, j + 1); ++k)
        lu += abs(l(i, k)) * abs(a(k, j));
      rlu += lu * lu;
      if (entry_errors) rd += (*entry_errors)(src, j) * (*entry_errors)(src, j);
    }
    r[i] = sqrt(ra);
    s[i] = gamma * sqrt(rlu) + sqrt(rd);
  }
  // prod(r + s) - prod(r), summed as a telescoping series of positive terms
  Float diff(0);
  for (std::size_t k = 0; k < n; ++k) {
    Float t = s[k];
    for (std::size_t i = 0; i < k; ++i) t *= (r[i] + s[i]);
    for (std::size_t i = k + 1; i < n; ++i) t *= r[i];
    diff += t;
  }
  Float bound = 2 * (diff + gamma * abs(value));
  if (!isfinite(bound)) bound = fallback_error_bound(m);
  return {value, bound};
}

}  // namespace

FloatDet det_float(const Matrix<Float>& m) { return det_float_impl(m, nullptr); }

FloatDet det_float(const Matrix<Float>& m, const Matrix<Float>& entry_errors) {
  return det_float_impl(m, &entry_errors);
}

Float fallback_error_bound(const Matrix<Float>& m) {
  Float big(0);
  for (const Float& v : m.entries()) big = std::max(big, Float(abs(v)));
  return Float("1e-12") * pow(big, static_cast<long>(m.rows()));
}

SignClass sign_with_tolerance(const Float& v, const Float& error_bound) {
  if (error_bound < 0) throw Error(ErrorKind::Domain, "error bound must be non-negative");
  if (v < -error_bound) return SignClass::Negative;
  if (v > error_bound) return SignClass::Positive;
  return SignClass::Zero;
}

SignClass sign_exact(const Exact& v) {
  if (v < 0) return SignClass::Negative;
  if (v > 0) return SignClass::Positive;
  return SignClass::Zero;
}

}  // namespace polyalab
