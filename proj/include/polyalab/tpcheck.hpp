#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "polyalab/densities.hpp"
#include "polyalab/numerics.hpp"

namespace polyalab {

// Order marker meaning "all orders up to the smaller matrix dimension".
constexpr unsigned kFullOrder = 0;
constexpr std::uint64_t kDefaultMinorBudget = 10'000'000;

struct GridSample {
  std::vector<Float> xs, ys;
  Matrix<Float> matrix;  // matrix(i, j) = K(xs[i] - ys[j])
  Matrix<Float> errors;  // absolute error bound of each entry
  std::optional<KernelSpec> spec;
};

GridSample sample(const KernelSpec& spec, const std::vector<Float>& xs,
                  const std::vector<Float>& ys);
// A raw matrix with exact entries; grids are the row/column indices.
GridSample sample_matrix(const Matrix<Float>& m);

struct MinorCertificate {
  std::vector<std::size_t> rows, cols;  // 0-based, strictly increasing
  Float det_value;
  Float error_bound;
  SignClass sign = SignClass::Zero;
  bool principal = false;
};

enum class Verdict { TN, TP, NotTN, NotTP };
const char* to_string(Verdict v);

struct TnReport {
  unsigned order = 0;  // effective order tested
  Verdict verdict = Verdict::TN;
  // violating minor, or the minimal-value minor when the property holds
  std::optional<MinorCertificate> witness;
  std::uint64_t minors_evaluated = 0;
};

MinorCertificate evaluate_minor(const GridSample& g, const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& cols);

TnReport check_tn(const GridSample& g, unsigned p, std::uint64_t budget = kDefaultMinorBudget);
TnReport check_tp(const GridSample& g, unsigned p, bool use_fekete,
                  std::uint64_t budget = kDefaultMinorBudget);
// Most negative principal minor of order <= p, if any is Negative.
std::optional<MinorCertificate> principal_minor_scan(const GridSample& g, unsigned p);

using MinorVisitor =
    std::function<bool(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)>;
// Visits minors of an rows x cols matrix up to the given order, by
// increasing size and then lexicographically in (rows, cols). Stops when the
// visitor returns false.
void enumerate_minors(std::size_t rows, std::size_t cols, unsigned order, const MinorVisitor& visit);

// Number of minors check_tn would enumerate at order p.
std::uint64_t minor_count(std::size_t rows, std::size_t cols, unsigned p);

nlohmann::json to_json(const MinorCertificate& c);
nlohmann::json to_json(const TnReport& r);

}  // namespace polyalab
