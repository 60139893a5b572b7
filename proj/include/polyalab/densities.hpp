#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "polyalab/numerics.hpp"
#include "polyalab/symfunc.hpp"

namespace polyalab {

struct EvalResult {
  Float value;
  Float abs_error_bound;
  // set for Gamma(shape < 1) at 0, where the density has a pole
  bool unbounded = false;
};

struct KernelSpec;
using KernelPtr = std::shared_ptr<const KernelSpec>;

namespace family {
struct HW { ParamVector params; };
struct OmegaQR { Float q, r; };
struct Gamma { Float shape; };
struct LambdaD { Float d; };
struct Heaviside {};
struct Wallis {};
struct MBeta { Float beta; };
struct Gauss {};
struct PowerOf { KernelPtr inner; Float exponent; };
// coeffs ascending: c0 + c1 t + c2 t^2 + ...
struct PolyOf { KernelPtr inner; std::vector<Float> coeffs; };
}  // namespace family

using KernelFamily =
    std::variant<family::HW, family::OmegaQR, family::Gamma, family::LambdaD,
                 family::Heaviside, family::Wallis, family::MBeta, family::Gauss,
                 family::PowerOf, family::PolyOf>;

// Closed interval hull of the support; nullopt ends are infinite.
struct Support {
  std::optional<Float> lo, hi;
};

struct KernelSpec {
  KernelFamily family;

  std::string name() const;
  Support support() const;
  std::vector<Float> discontinuities() const;
  // k for C^k, -1 when discontinuous, nullopt for C^infinity
  std::optional<int> smoothness() const;
  // how far past the origin the kernel stays numerically relevant
  Float decay_horizon() const;
  bool one_sided() const;
};

KernelSpec hw_kernel(ParamVector p);
KernelSpec omega_kernel(const Float& q, const Float& r);
KernelSpec gamma_kernel(const Float& shape);
KernelSpec lambda_d_kernel(const Float& d);
KernelSpec heaviside_kernel();
KernelSpec wallis_kernel();
KernelSpec mbeta_kernel(const Float& beta);
KernelSpec gauss_kernel();
KernelSpec power_of(const KernelSpec& inner, const Float& exponent);
KernelSpec poly_of(const KernelSpec& inner, std::vector<Float> coeffs);

EvalResult hw_eval_additive(const ParamVector& p, const Float& x);
EvalResult hw_eval_series(const ParamVector& p, const Float& x, const Float& tol);
EvalResult hw_eval_determinantal(const ParamVector& p, const Float& x);
Float hw_moment(const ParamVector& p, unsigned k);

struct ComplexValue {
  Float re, im;
};
ComplexValue hw_laplace(const ParamVector& p, const ComplexValue& s);

EvalResult eval(const KernelSpec& spec, const Float& x);

// (prod_{j<m} j!) / (V(a) V(b)) det(exp(b_i a_j))
Float hciz_det(const std::vector<Float>& a, const std::vector<Float>& b);
// (m-1)! sum_{j=0}^{N} h_j(a) x^j / (j+m-1)!, with a tail bound
EvalResult hciz_series(const std::vector<Float>& a, const Float& x, unsigned n_terms);

nlohmann::json to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const nlohmann::json& j);
KernelSpec kernel_from_string(const std::string& text);

}  // namespace polyalab
