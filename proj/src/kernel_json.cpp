#include <cmath>

#include "polyalab/densities.hpp"

namespace polyalab {

using nlohmann::json;

namespace {

json scalar_json(const Float& v) {
  double d = v.convert_to<double>();
  if (std::isfinite(d) && Float(d) == v) return d;
  return to_decimal(v);
}

Float scalar_from(const json& j, const char* what) {
  if (j.is_number()) return Float(j.get<double>());
  if (j.is_string()) return parse_float(j.get<std::string>());
  throw Error(ErrorKind::Parse, std::string("field '") + what + "' must be a number");
}

const json& field(const json& params, const char* key) {
  if (!params.is_object() || !params.contains(key))
    throw Error(ErrorKind::Parse, std::string("missing parameter '") + key + "'");
  return params.at(key);
}

std::vector<Float> vector_from(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, std::string("'") + what + "' must be an array");
  std::vector<Float> out;
  for (const auto& v : j) out.push_back(scalar_from(v, what));
  return out;
}

}  // namespace

json to_json(const KernelSpec& spec) {
  json out;
  out["family"] = spec.name();
  json params = json::object();
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::HW>) {
          json a = json::array();
          for (const Float& v : f.params.alpha()) a.push_back(scalar_json(v));
          params["alpha"] = a;
        } else if constexpr (std::is_same_v<F, family::OmegaQR>) {
          params["q"] = scalar_json(f.q);
          params["r"] = scalar_json(f.r);
        } else if constexpr (std::is_same_v<F, family::Gamma>) {
          params["shape"] = scalar_json(f.shape);
        } else if constexpr (std::is_same_v<F, family::LambdaD>) {
          params["d"] = scalar_json(f.d);
        } else if constexpr (std::is_same_v<F, family::MBeta>) {
          params["beta"] = scalar_json(f.beta);
        } else if constexpr (std::is_same_v<F, family::PowerOf>) {
          params["inner"] = to_json(*f.inner);
          params["exponent"] = scalar_json(f.exponent);
        } else if constexpr (std::is_same_v<F, family::PolyOf>) {
          params["inner"] = to_json(*f.inner);
          json c = json::array();
          for (const Float& v : f.coeffs) c.push_back(scalar_json(v));
          params["coeffs"] = c;
        }
      },
      spec.family);
  if (!params.empty()) out["params"] = params;
  return out;
}

KernelSpec kernel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw Error(ErrorKind::Parse, "kernel spec needs a string 'family'");
  const std::string name = j["family"].get<std::string>();
  const json params = j.contains("params") ? j["params"] : json::object();
  if (name == "HW") return hw_kernel(ParamVector(vector_from(field(params, "alpha"), "alpha")));
  if (name == "OmegaQR")
    return omega_kernel(scalar_from(field(params, "q"), "q"), scalar_from(field(params, "r"), "r"));
  if (name == "Gamma") return gamma_kernel(scalar_from(field(params, "shape"), "shape"));
  if (name == "LambdaD") return lambda_d_kernel(scalar_from(field(params, "d"), "d"));
  if (name == "Heaviside") return heaviside_kernel();
  if (name == "Wallis") return wallis_kernel();
  if (name == "MBeta") return mbeta_kernel(scalar_from(field(params, "beta"), "beta"));
  if (name == "Gauss") return gauss_kernel();
  if (name == "PowerOf")
    return power_of(kernel_from_json(field(params, "inner")),
                    scalar_from(field(params, "exponent"), "exponent"));
  if (name == "PolyOf")
    return poly_of(kernel_from_json(field(params, "inner")),
                   vector_from(field(params, "coeffs"), "coeffs"));
  throw Error(ErrorKind::Parse, "unknown kernel family '" + name + "'");
}

KernelSpec kernel_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed kernel JSON: ") + e.what());
  }
  try {
    return kernel_from_json(j);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Domain) throw Error(ErrorKind::Parse, e.what());
    throw;
  }
}

}  // namespace polyalab
