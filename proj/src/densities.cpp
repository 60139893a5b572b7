#include "polyalab/densities.hpp"

#include <algorithm>
#include <cmath>

namespace polyalab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Float pi() {
  Float v;
  mpfr_const_pi(v.backend().data(), MPFR_RNDN);
  return v;
}

bool is_integer(const Float& v) { return v == floor(v); }

}  // namespace

// ---- kernel construction and metadata --------------------------------------

KernelSpec hw_kernel(ParamVector p) { return {family::HW{std::move(p)}}; }
KernelSpec omega_kernel(const Float& q, const Float& r) {
  if (!(q > 0) || !(r > 0)) throw Error(ErrorKind::Domain, "OmegaQR needs q, r > 0");
  return {family::OmegaQR{q, r}};
}
KernelSpec gamma_kernel(const Float& shape) {
  if (!(shape > 0)) throw Error(ErrorKind::Domain, "Gamma needs shape > 0");
  return {family::Gamma{shape}};
}
KernelSpec lambda_d_kernel(const Float& d) { return {family::LambdaD{d}}; }
KernelSpec heaviside_kernel() { return {family::Heaviside{}}; }
KernelSpec wallis_kernel() { return {family::Wallis{}}; }
KernelSpec mbeta_kernel(const Float& beta) {
  if (!(beta > 0)) throw Error(ErrorKind::Domain, "MBeta needs beta > 0");
  return {family::MBeta{beta}};
}
KernelSpec gauss_kernel() { return {family::Gauss{}}; }
KernelSpec power_of(const KernelSpec& inner, const Float& exponent) {
  if (!(exponent > 0)) throw Error(ErrorKind::Domain, "PowerOf needs a positive exponent");
  return {family::PowerOf{std::make_shared<const KernelSpec>(inner), exponent}};
}
KernelSpec poly_of(const KernelSpec& inner, std::vector<Float> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::Domain, "PolyOf needs coefficients");
  return {family::PolyOf{std::make_shared<const KernelSpec>(inner), std::move(coeffs)}};
}

std::string KernelSpec::name() const {
  return std::visit(overloaded{
                        [](const family::HW&) { return std::string("HW"); },
                        [](const family::OmegaQR&) { return std::string("OmegaQR"); },
                        [](const family::Gamma&) { return std::string("Gamma"); },
                        [](const family::LambdaD&) { return std::string("LambdaD"); },
                        [](const family::Heaviside&) { return std::string("Heaviside"); },
                        [](const family::Wallis&) { return std::string("Wallis"); },
                        [](const family::MBeta&) { return std::string("MBeta"); },
                        [](const family::Gauss&) { return std::string("Gauss"); },
                        [](const family::PowerOf&) { return std::string("PowerOf"); },
                        [](const family::PolyOf&) { return std::string("PolyOf"); },
                    },
                    family);
}

Support KernelSpec::support() const {
  return std::visit(
      overloaded{
          [](const family::Wallis&) { return Support{-pi() / 2, pi() / 2}; },
          [](const family::MBeta&) { return Support{}; },
          [](const family::Gauss&) { return Support{}; },
          [](const family::PowerOf& f) { return f.inner->support(); },
          [](const family::PolyOf& f) {
            if (f.coeffs[0] != 0) return Support{};
            return f.inner->support();
          },
          [](const auto&) { return Support{Float(0), std::nullopt}; },
      },
      family);
}

std::vector<Float> KernelSpec::discontinuities() const {
  return std::visit(overloaded{
                        [](const family::HW& f) {
                          return f.params.size() == 1 ? std::vector<Float>{Float(0)}
                                                      : std::vector<Float>{};
                        },
                        [](const family::Gamma& f) {
                          return f.shape <= 1 ? std::vector<Float>{Float(0)}
                                              : std::vector<Float>{};
                        },
                        [](const family::LambdaD&) { return std::vector<Float>{Float(0)}; },
                        [](const family::Heaviside&) { return std::vector<Float>{Float(0)}; },
                        [](const family::PowerOf& f) { return f.inner->discontinuities(); },
                        [](const family::PolyOf& f) { return f.inner->discontinuities(); },
                        [](const auto&) { return std::vector<Float>{}; },
                    },
                    family);
}

std::optional<int> KernelSpec::smoothness() const {
  return std::visit(
      overloaded{
          [](const family::HW& f) -> std::optional<int> {
            return static_cast<int>(f.params.size()) - 2;
          },
          [](const family::OmegaQR&) -> std::optional<int> { return 0; },
          [](const family::Gamma& f) -> std::optional<int> {
            if (f.shape < 1) return -1;
            Float s = f.shape - 1;
            if (is_integer(s)) return s.convert_to<int>() - 1;
            return floor(s).convert_to<int>();
          },
          [](const family::Wallis&) -> std::optional<int> { return 0; },
          [](const family::MBeta&) -> std::optional<int> { return 2; },
          [](const family::Gauss&) -> std::optional<int> { return std::nullopt; },
          [](const family::PowerOf& f) -> std::optional<int> {
            auto k = f.inner->smoothness();
            if (is_integer(f.exponent)) return k;
            if (!k) return std::nullopt;
            return std::min(*k, 0);
          },
          [](const family::PolyOf& f) { return f.inner->smoothness(); },
          [](const auto&) -> std::optional<int> { return -1; },
      },
      family);
}

Float KernelSpec::decay_horizon() const {
  return std::visit(overloaded{
                        [](const family::HW& f) {
                          Float s(0);
                          for (const Float& a : f.params.alpha()) s += a;
                          return Float(4 * s);
                        },
                        [](const family::OmegaQR& f) { return Float(4 * (f.q + f.r)); },
                        [](const family::Gamma& f) { return Float(4 * (f.shape + 2)); },
                        [](const family::LambdaD&) { return Float(8); },
                        [](const family::Heaviside&) { return Float(4); },
                        [](const family::Wallis&) { return Float(pi() / 2); },
                        [](const family::MBeta& f) { return Float(8 / f.beta); },
                        [](const family::Gauss&) { return Float(6); },
                        [](const family::PowerOf& f) {
                          Float h = f.inner->decay_horizon();
                          return f.exponent < 1 ? Float(h / f.exponent) : h;
                        },
                        [](const family::PolyOf& f) { return f.inner->decay_horizon(); },
                    },
                    family);
}

bool KernelSpec::one_sided() const {
  auto s = support();
  return s.lo && *s.lo == 0 && !s.hi;
}

// ---- Hirschman-Widder densities --------------------------------------------

namespace {

Float min_gap(const std::vector<Float>& a) {
  Float g = -1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Float d = abs(a[i] - a[j]);
      if (g < 0 || d < g) g = d;
    }
  return g;
}

Float max_of(const std::vector<Float>& a) {
  Float m = a.front();
  for (const Float& v : a) m = std::max(m, v);
  return m;
}

Float default_series_tol(const ParamVector& p) {
  return unit_roundoff() * std::max(Float(1), p.rate_product());
}

}  // namespace

EvalResult hw_eval_additive(const ParamVector& p, const Float& x) {
  if (!p.distinct())
    throw Error(ErrorKind::RequiresDistinct,
                "additive form needs distinct parameters; use the series evaluator");
  if (x < 0) return {Float(0), Float(0)};
  const auto& a = p.rates();
  const std::size_t m = a.size();
  if (m > 1 && min_gap(a) < Float("1e-4") * max_of(a))
    return hw_eval_series(p, x, default_series_tol(p));

  // exp(-a x) inherits a relative error of about |a x| u from its argument
  Float sum(0), weighted(0);
  for (std::size_t j = 0; j < m; ++j) {
    Float t = a[j] * exp(-a[j] * x);
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) t *= a[k] / (a[k] - a[j]);
    sum += t;
    weighted += abs(t) * (a[j] * x + static_cast<double>(4 * m + 8));
  }
  return {sum, weighted * unit_roundoff()};
}

EvalResult hw_eval_series(const ParamVector& p, const Float& x, const Float& tol) {
  if (!(tol > 0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
  if (x < 0) throw Error(ErrorKind::Domain, "series evaluator needs x >= 0");
  const std::size_t m = p.size();
  const Float prod = p.rate_product();
  if (x == 0) return {m == 1 ? prod : Float(0), Float(0)};

  const unsigned work_bits = precision_bits();
  const Float big_a = max_of(p.rates());
  const Float ax = big_a * x;
  Float value, err;
  {
    // The alternating sum cancels down from e^{Ax}; carry that many extra bits.
    unsigned extra = static_cast<unsigned>(std::ceil(ax.convert_to<double>() * 1.4426950408889634)) + 32;
    PrecisionGuard guard(work_bits + extra);
    std::vector<Float> a(p.rates().begin(), p.rates().end());
    const Float xi(x);
    const Float ax_i = Float(big_a) * xi;

    // t_j = x^{j+m-1} / (j+m-1)!
    Float t(1);
    for (std::size_t k = 1; k < m; ++k) t = t * xi / static_cast<double>(k);
    const Float lead = t;  // x^{m-1}/(m-1)!
    std::vector<Float> prev(m + 1, Float(1)), cur(m + 1);
    prev[0] = 1;  // h_0 of every prefix is 1

    Float sum = t;  // j = 0 term: h_0 = 1
    Float abs_sum = t;
    Float majorant = lead;  // lead * (Ax)^j / j!
    Float tail(0);
    unsigned j = 0;
    for (;;) {
      ++j;
      cur[0] = 0;
      for (std::size_t k = 1; k <= m; ++k) cur[k] = cur[k - 1] + a[k - 1] * prev[k];
      std::swap(prev, cur);
      t = t * xi / static_cast<double>(j + m - 1);
      Float term = prev[m] * t;
      if (j % 2) sum -= term; else sum += term;
      abs_sum += term;
      majorant = majorant * ax_i / static_cast<double>(j);
      if (j + 2 > ax_i) {
        Float next = majorant * ax_i / static_cast<double>(j + 1);
        tail = prod * next / (1 - ax_i / static_cast<double>(j + 2));
        if (tail < tol / 2) break;
      }
      if (j > 200000) throw Error(ErrorKind::Domain, "series did not converge");
    }
    Float rounding = prod * abs_sum * unit_roundoff() * static_cast<double>(5 * j + 2 * m + 10);
    value = prod * sum;
    err = tail + rounding;
  }
  Float v = at_working_precision(value);
  Float e = at_working_precision(err) + abs(v) * unit_roundoff();
  return {v, e};
}

EvalResult hw_eval_determinantal(const ParamVector& p, const Float& x) {
  if (!p.distinct())
    throw Error(ErrorKind::RequiresDistinct, "determinantal form needs distinct parameters");
  if (x < 0) return {Float(0), Float(0)};
  const auto& a = p.rates();
  const std::size_t m = a.size();
  const Float u = unit_roundoff();
  Matrix<Float> mat(m, m), err(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    mat(0, j) = exp(-a[j] * x);
    err(0, j) = (4 + a[j] * x) * u * mat(0, j);
    Float pw(1);
    for (std::size_t i = 1; i < m; ++i) {
      mat(i, j) = pw;
      err(i, j) = u * static_cast<double>(i) * abs(pw);
      pw *= a[j];
    }
  }
  FloatDet d = det_float(mat, err);
  Float scale = p.rate_product() / vandermonde(a);
  Float value = scale * d.value;
  Float bound = abs(scale) * d.error_bound +
                abs(value) * u * static_cast<double>(m * m + 4);
  return {value, bound};
}

Float hw_moment(const ParamVector& p, unsigned k) {
  Float f(1);
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f * h_eval(p.alpha(), k);
}

ComplexValue hw_laplace(const ParamVector& p, const ComplexValue& s) {
  ComplexValue prod{Float(1), Float(0)};
  for (const Float& al : p.alpha()) {
    Float re = 1 + al * s.re;
    Float im = al * s.im;
    if (!(re > 0))
      throw Error(ErrorKind::Domain, "Re s must exceed -1/alpha_j for every j");
    // prod /= (re + i im)
    Float d = re * re + im * im;
    Float nr = (prod.re * re + prod.im * im) / d;
    Float ni = (prod.im * re - prod.re * im) / d;
    prod = {nr, ni};
  }
  return prod;
}

// ---- generic evaluation ------------------------------------------------------

namespace {

EvalResult eval_hw(const ParamVector& p, const Float& x) {
  if (x < 0) return {Float(0), Float(0)};
  if (p.distinct()) return hw_eval_additive(p, x);
  return hw_eval_series(p, x, default_series_tol(p));
}

EvalResult eval_omega(const family::OmegaQR& f, const Float& x) {
  if (x < 0) return {Float(0), Float(0)};
  const Float u = unit_roundoff();
  if (f.q == f.r) {
    Float v = x * exp(-x / f.q) / (f.q * f.q);
    return {v, (x / f.q + 8) * u * v};
  }
  if (abs(f.q - f.r) < Float("1e-4") * std::max(f.q, f.r))
    return eval_hw(ParamVector({f.q, f.r}), x);
  Float e1 = exp(-x / f.q), e2 = exp(-x / f.r);
  Float v = (e1 - e2) / (f.q - f.r);
  Float cond = x / std::min(f.q, f.r) + 8;
  return {v, cond * u * (e1 + e2) / abs(f.q - f.r)};
}

EvalResult eval_gamma(const Float& shape, const Float& x) {
  if (x < 0) return {Float(0), Float(0)};
  if (x == 0) {
    if (shape < 1) return {Float(0), Float(0), true};
    if (shape == 1) return {Float(1), Float(0)};
    return {Float(0), Float(0)};
  }
  Float lg = log(x);
  Float v = exp((shape - 1) * lg - x) / tgamma(shape);
  Float cond = abs((shape - 1) * lg) + x + 16;
  return {v, v * cond * unit_roundoff()};
}

EvalResult eval_power(const family::PowerOf& f, const Float& x) {
  EvalResult in = eval(*f.inner, x);
  if (in.unbounded) return in;
  if (in.value == 0 && in.abs_error_bound == 0) return {Float(0), Float(0)};
  if (in.value < 0 && !is_integer(f.exponent))
    throw Error(ErrorKind::Domain, "non-integer power of a negative value at x = " + to_decimal(x, 12));
  if (in.value == 0) return {Float(0), pow(in.abs_error_bound, f.exponent)};
  Float v = pow(in.value, f.exponent);
  Float rel = f.exponent * in.abs_error_bound / abs(in.value);
  Float err;
  if (rel < Float("0.5"))
    err = abs(v) * (2 * rel + 8 * unit_roundoff());
  else
    err = pow(abs(in.value) + in.abs_error_bound, f.exponent);
  return {v, err};
}

EvalResult eval_poly(const family::PolyOf& f, const Float& x) {
  EvalResult in = eval(*f.inner, x);
  if (in.unbounded) return in;
  const auto& c = f.coeffs;
  Float v(0), dv(0), mag(0);
  Float av = abs(in.value);
  for (std::size_t k = c.size(); k-- > 0;) {
    dv = dv * in.value + v;
    v = v * in.value + c[k];
    mag = mag * av + abs(c[k]);
  }
  // derivative bound over the uncertainty interval
  Float dmag(0);
  Float hi = av + in.abs_error_bound;
  for (std::size_t k = c.size(); k-- > 1;) dmag = dmag * hi + abs(c[k]) * static_cast<double>(k);
  Float err = dmag * in.abs_error_bound +
              mag * unit_roundoff() * static_cast<double>(2 * c.size() + 2);
  return {v, err};
}

}  // namespace

EvalResult eval(const KernelSpec& spec, const Float& x) {
  const Float u = unit_roundoff();
  return std::visit(
      overloaded{
          [&](const family::HW& f) { return eval_hw(f.params, x); },
          [&](const family::OmegaQR& f) { return eval_omega(f, x); },
          [&](const family::Gamma& f) { return eval_gamma(f.shape, x); },
          [&](const family::LambdaD& f) -> EvalResult {
            if (x > 0) {
              Float v = exp(-x);
              return {v, (x + 4) * u * v};
            }
            if (x == 0) return {f.d, Float(0)};
            return {Float(0), Float(0)};
          },
          [&](const family::Heaviside&) -> EvalResult {
            return {Float(x >= 0 ? 1 : 0), Float(0)};
          },
          [&](const family::Wallis&) -> EvalResult {
            if (abs(x) > pi() / 2) return {Float(0), Float(0)};
            Float v = cos(x);
            // the rounded endpoint pi/2 leaves a residue of order u
            return {v, 4 * u};
          },
          [&](const family::MBeta& f) -> EvalResult {
            Float ax = abs(x);
            Float t1 = (f.beta + 1) * exp(-f.beta * ax);
            Float t2 = f.beta * exp(-(f.beta + 1) * ax);
            return {t1 - t2, ((f.beta + 1) * ax + 8) * u * (t1 + t2)};
          },
          [&](const family::Gauss&) -> EvalResult {
            Float v = exp(-x * x / 2) / sqrt(2 * pi());
            return {v, (x * x / 2 + 8) * u * v};
          },
          [&](const family::PowerOf& f) { return eval_power(f, x); },
          [&](const family::PolyOf& f) { return eval_poly(f, x); },
      },
      spec.family);
}

}  // namespace polyalab
