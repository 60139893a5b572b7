// Real positive roots of a monic polynomial: double-precision companion
// eigenvalues as starting points, Aberth-Ehrlich refinement at working
// precision, then clustering into multiple roots.
#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "polyalab/numerics.hpp"

namespace polyalab {

namespace {

struct Cx {
  Float re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cx operator/(const Cx& a, const Cx& b) {
  Float d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Float cabs(const Cx& a) { return hypot(a.re, a.im); }

// p(z), p'(z) and the rounding-noise scale sum |c_i| |z|^(n-i)
void horner(const std::vector<Float>& c, const Cx& z, Cx& p, Cx& dp, Float& scale) {
  p = {c[0], Float(0)};
  dp = {Float(0), Float(0)};
  Float az = cabs(z);
  scale = abs(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i) {
    dp = dp * z + p;
    p = p * z + Cx{c[i], Float(0)};
    scale = scale * az + abs(c[i]);
  }
}

std::vector<Cx> initial_estimates(const std::vector<Float>& c) {
  const std::size_t n = c.size() - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) comp(0, j) = -c[j + 1].convert_to<double>();
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<Cx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> e = es.eigenvalues()(k);
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) e = {1.0, 0.0};
    // nudge apart so coincident starting points never divide by zero
    double theta = 2.0 * M_PI * (k + 0.5) / n + 0.4;
    double r = 1e-6 * (1.0 + std::abs(e));
    z[k] = {Float(e.real() + r * std::cos(theta)), Float(e.imag() + r * std::sin(theta))};
  }
  return z;
}

// A k-fold root is a simple root of p^(k-1); Newton there restores full
// accuracy to the cluster mean.
Float polish(const std::vector<Float>& c, const Float& start, std::size_t k, const Float& tol) {
  std::vector<Float> d = c;  // descending coefficients of p^(k-1)
  for (std::size_t t = 1; t < k; ++t) {
    const std::size_t deg = d.size() - 1;
    std::vector<Float> nd(deg);
    for (std::size_t i = 0; i < deg; ++i) nd[i] = d[i] * static_cast<double>(deg - i);
    d = std::move(nd);
  }
  if (d.size() < 2) return start;
  const Float u = unit_roundoff();
  Float x = start;
  for (int it = 0; it < 60; ++it) {
    Float f = d[0], df(0);
    for (std::size_t i = 1; i < d.size(); ++i) {
      df = df * x + f;
      f = f * x + d[i];
    }
    if (df == 0) break;
    Float step = f / df;
    x -= step;
    if (abs(step) <= 4 * u * abs(x)) break;
  }
  if (!isfinite(x) || abs(x - start) > tol * (1 + abs(start))) return start;
  return x;
}

}  // namespace

std::vector<Float> real_roots_monic(const std::vector<Float>& coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::Domain, "empty coefficient vector");
  if (coeffs[0] != 1) throw Error(ErrorKind::Domain, "polynomial must be monic");
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};

  std::vector<Cx> z;
  if (n == 1) {
    z.push_back({-coeffs[1], Float(0)});
  } else {
    z = initial_estimates(coeffs);
    const Float u = unit_roundoff();
    const Float conv = ldexp(Float(1), -static_cast<int>(precision_bits()) + 8);
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < 500; ++iter) {
      bool all_done = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (done[k]) continue;
        Cx p, dp;
        Float scale;
        horner(coeffs, z[k], p, dp, scale);
        if (cabs(p) <= 4 * u * static_cast<double>(n) * scale) {
          done[k] = true;
          continue;
        }
        all_done = false;
        Cx s{Float(0), Float(0)};
        for (std::size_t j = 0; j < n; ++j)
          if (j != k) s = s + Cx{Float(1), Float(0)} / (z[k] - z[j]);
        Cx ratio = (cabs(dp) == 0) ? Cx{Float(0), Float(0)} : p / dp;
        Cx w = ratio / (Cx{Float(1), Float(0)} - ratio * s);
        z[k] = z[k] - w;
        if (cabs(w) <= conv * (1 + cabs(z[k]))) done[k] = true;
      }
      if (all_done) break;
    }
  }

  // Cluster roots that agree to within the attainable accuracy of a root
  // of multiplicity up to n.
  const Float u = unit_roundoff();
  Float tol = 16 * pow(u, Float(1) / static_cast<double>(n));
  if (tol < Float("1e-8")) tol = Float("1e-8");

  std::sort(z.begin(), z.end(), [](const Cx& a, const Cx& b) { return a.re < b.re; });
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Float scale = 1 + std::max(cabs(z[i]), cabs(z[j]));
      if (cabs(z[i] - z[j]) <= tol * scale) parent[find(j)] = find(i);
    }

  std::vector<Float> roots;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) != i) continue;
    Cx mean{Float(0), Float(0)};
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == i) {
        mean = mean + z[j];
        ++count;
      }
    mean.re /= static_cast<double>(count);
    mean.im /= static_cast<double>(count);
    if (abs(mean.im) > tol * (1 + abs(mean.re)))
      throw Error(ErrorKind::InconsistentInput,
                  "polynomial has a complex root " + to_decimal(mean.re, 12) + " + " +
                      to_decimal(mean.im, 12) + "i");
    if (mean.re <= 0)
      throw Error(ErrorKind::InconsistentInput,
                  "polynomial has a non-positive root " + to_decimal(mean.re, 12));
    Float r = polish(coeffs, mean.re, count, tol);
    if (r <= 0)
      throw Error(ErrorKind::InconsistentInput,
                  "polynomial has a non-positive root " + to_decimal(r, 12));
    for (std::size_t c = 0; c < count; ++c) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace polyalab
