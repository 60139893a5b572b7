#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "polyalab/error.hpp"

namespace polyalab {

using Exact = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Float = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

constexpr unsigned kDefaultPrecisionBits = 128;
constexpr unsigned kMinPrecisionBits = 64;

// Working precision is process-wide (mpfr default precision). New Float
// values are created at this precision. The backend sets precision in
// decimal digits, so a request is rounded up to the next reachable bit
// count (at most 3 bits more; 128 is exact).
unsigned precision_bits();
void set_precision_bits(unsigned bits);

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

// Copy rounded to the current working precision (plain copies keep the
// source precision).
Float at_working_precision(const Float& v);

// 2^-p at the current working precision p.
Float unit_roundoff();

std::string to_decimal(const Float& v, int significant = 30);
Float parse_float(const std::string& text);

enum class SignClass { Negative = -1, Zero = 0, Positive = 1 };

const char* to_string(SignClass s);
SignClass negate(SignClass s);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorKind::Dimension, "matrix entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw Error(ErrorKind::Dimension, "ragged matrix rows");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<T>& entries() const { return data_; }

  Matrix submatrix(const std::vector<std::size_t>& r,
                   const std::vector<std::size_t>& c) const {
    Matrix out(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = (*this)(r[i], c[j]);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

Exact det_exact(const Matrix<Exact>& m);

struct FloatDet {
  Float value;
  Float error_bound;
};

// Partially pivoted elimination. The bound covers rounding in the
// factorization and, when given, absolute errors already present in the
// entries.
FloatDet det_float(const Matrix<Float>& m);
FloatDet det_float(const Matrix<Float>& m, const Matrix<Float>& entry_errors);

// 1e-12 * (max |entry|)^n, for callers without a usable bound.
Float fallback_error_bound(const Matrix<Float>& m);

SignClass sign_with_tolerance(const Float& v, const Float& error_bound);
SignClass sign_exact(const Exact& v);

template <class T>
T vandermonde(const std::vector<T>& a) {
  T prod(1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) prod *= (a[j] - a[i]);
  return prod;
}

// coeffs in descending order with coeffs[0] == 1. Returns all roots sorted
// ascending, repeated by multiplicity. Throws InconsistentInput if a root is
// complex or not positive.
std::vector<Float> real_roots_monic(const std::vector<Float>& coeffs);

// Descending coefficients of prod (z - r_i).
template <class T>
std::vector<T> monic_from_roots(const std::vector<T>& roots) {
  std::vector<T> c{T(1)};
  for (const T& r : roots) {
    c.push_back(T(0));
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= r * c[k - 1];
  }
  return c;
}

}  // namespace polyalab
