#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyalab/densities.hpp"
#include "polyalab/symfunc.hpp"
#include "polyalab/tpcheck.hpp"

namespace polyalab {

// ---- grids and searches ------------------------------------------------------

// Default arithmetic-progression steps, tried in this order.
const std::vector<double>& default_steps();

// n points 0, h, 2h, ...
std::vector<Float> ap_grid(std::size_t n, const Float& h, const Float& start = Float(0));

struct ShiftSearch {
  // Shift window; defaults to [-(max x - min y), max x - min y].
  std::optional<Float> lo, hi;
  unsigned coarse = 200;
  unsigned refine_depth = 40;
};

// ---- power sweeps ------------------------------------------------------------

enum class SweepClass { TPWitness, TN, NegativeMinor, NegativePrincipalMinor, Inconclusive };
const char* to_string(SweepClass c);
// TN and TPWitness are the "no negative minor" side of a threshold.
bool tn_side(SweepClass c);

struct PowerSweepConfig {
  KernelSpec base;
  std::vector<Float> exponents;
  unsigned p = 3;
  // Explicit grids; when empty, AP grids of length p over default_steps().
  std::vector<Float> xs, ys;
  std::optional<ShiftSearch> shift_search;
  std::uint64_t budget = kDefaultMinorBudget;  // minors per row
};

struct SweepRow {
  Float exponent;  // the power, or d for the lambda_d boundary
  SweepClass classification = SweepClass::TN;
  std::optional<MinorCertificate> witness;
  // Karlin and gamma rows sample at (xs, ys + shift); Wallis rows at
  // (scale * xs, scale * ys).
  std::optional<Float> shift_or_scale;
  std::vector<Float> xs, ys;
  std::string note;
};

struct PowerSweepReport {
  std::string kind;
  unsigned p = 0;
  std::optional<KernelSpec> base;
  std::vector<SweepRow> rows;
};

PowerSweepConfig karlin_config(const Float& q, const Float& r, unsigned p,
                               std::vector<Float> exponents);
PowerSweepConfig wallis_config(unsigned p, std::vector<Float> exponents);

PowerSweepReport karlin_sweep(const PowerSweepConfig& cfg);
PowerSweepReport wallis_sweep(const PowerSweepConfig& cfg);
PowerSweepReport gamma_sweep(const std::vector<Float>& exponents, unsigned p,
                             const std::vector<Float>& xs = {},
                             const std::vector<Float>& ys = {});
PowerSweepReport lambda_d_boundary(const std::vector<Float>& ds, unsigned p,
                                   const std::vector<Float>& xs = {},
                                   const std::vector<Float>& ys = {});

// ---- witness searches over shifted grids ---------------------------------------

enum class SearchStatus { Witness, TN, Inconclusive };
const char* to_string(SearchStatus s);

struct SearchOptions {
  std::vector<double> steps = default_steps();
  unsigned coarse = 200;
  std::uint64_t budget = 20'000'000;  // minors over the whole search
};

struct SearchResult {
  SearchStatus status = SearchStatus::Inconclusive;
  TnReport report;  // on the witness grid, or the last grid searched
  std::vector<Float> xs, ys;  // sampled grids
  std::optional<TnReport> base_report;  // the untransformed kernel on the same grid
  std::uint64_t grids_searched = 0;
  std::uint64_t minors_evaluated = 0;
  bool budget_exhausted = false;
};

SearchResult mbeta_power_test(const Float& beta, unsigned k, unsigned p,
                              const SearchOptions& opt = {});
SearchResult hw_poly_rigidity(const ParamVector& params, const std::vector<Float>& coeffs,
                              unsigned order, const SearchOptions& opt = {});

// ---- closure of arithmetic-progression rates under powers ---------------------------

struct APPowerResult {
  ParamVector params;  // parameters of Lambda^k after normalization
  Float normalization;  // integral of Lambda^k
  Float residual;       // max pointwise |C Lambda'(x) - Lambda(x)^k| on a test grid
  TnReport verification;
};

APPowerResult arithmetic_progression_power(const ParamVector& p, unsigned k);

// ---- parameter recovery ----------------------------------------------------------

struct RecoveryResult {
  ParamVector recovered;  // sorted ascending
  Float residual;
};

RecoveryResult recover_from_moments(const std::vector<Float>& mu, unsigned m);
// c[j] = Lambda^{(m-1+j)}(0+) for j = 0..m
RecoveryResult recover_from_maclaurin(const std::vector<Float>& c, unsigned m);
// Lambda^{(m-1+j)}(0+) for j = 0..m, from the series.
std::vector<Float> maclaurin_derivatives(const ParamVector& p);

// ---- preserver falsification -------------------------------------------------------

struct Preserver {
  enum class Kind { Power, Constant, IndicatorPositive, Affine };
  Kind kind = Kind::Power;
  Float c = 1, alpha = 1, c0 = 0, c1 = 1;

  static Preserver power(const Float& c, const Float& alpha);
  static Preserver constant(const Float& c);
  static Preserver indicator_positive(const Float& c);
  static Preserver affine(const Float& c0, const Float& c1);

  std::string describe() const;
  // F applied to an entry with value v and absolute error e
  void apply(const Float& v, const Float& e, Float& out, Float& out_err) const;
};

enum class BatteryClass { PFGrid, TNGrid, OneSidedTNGrid };
const char* to_string(BatteryClass c);
BatteryClass battery_class_from_string(const std::string& s);
std::vector<KernelSpec> battery(BatteryClass c);

struct Counterexample {
  KernelSpec base;
  std::vector<Float> xs, ys;
  TnReport report;       // F applied entrywise to the base sample
  TnReport base_report;  // the base sample itself (TN)
};

struct FalsifyOutcome {
  std::optional<Counterexample> counterexample;
  std::uint64_t minors_evaluated = 0;
  bool budget_exhausted = false;
};

FalsifyOutcome falsify_preserver(const Preserver& f, BatteryClass cls, unsigned order = 4,
                                 std::uint64_t budget = 20'000'000);

// ---- serialization ------------------------------------------------------------------

nlohmann::json to_json(const SweepRow& r);
nlohmann::json to_json(const PowerSweepReport& r);
std::string to_csv(const PowerSweepReport& r);
nlohmann::json to_json(const RecoveryResult& r);
nlohmann::json to_json(const SearchResult& r);
nlohmann::json to_json(const FalsifyOutcome& r, const Preserver& f, BatteryClass cls);
nlohmann::json to_json(const APPowerResult& r);

}  // namespace polyalab
