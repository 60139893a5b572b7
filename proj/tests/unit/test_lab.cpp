#include <doctest.h>

#include <algorithm>
#include <random>

#include "polyalab/lab.hpp"

using namespace polyalab;

namespace {

std::vector<Float> floats(std::initializer_list<double> v) { return {v.begin(), v.end()}; }

std::vector<SweepClass> classes(const PowerSweepReport& r) {
  std::vector<SweepClass> out;
  for (const SweepRow& row : r.rows) out.push_back(row.classification);
  return out;
}

void check_alpha(const RecoveryResult& r, std::initializer_list<double> expected, double tol) {
  REQUIRE(r.recovered.size() == expected.size());
  std::size_t i = 0;
  for (double e : expected) CHECK(abs(r.recovered.alpha()[i++] - Float(e)) < Float(tol));
}

}  // namespace

TEST_CASE("grids and labels") {
  CHECK(default_steps() == std::vector<double>{1, 0.5, 0.25, 0.1});
  const auto g = ap_grid(3, Float("0.5"), Float(-1));
  CHECK(g == floats({-1, -0.5, 0}));
  CHECK(std::string(to_string(SweepClass::TPWitness)) == "TP_witness");
  CHECK(std::string(to_string(SweepClass::NegativePrincipalMinor)) == "NegativePrincipalMinor");
  CHECK(tn_side(SweepClass::TN));
  CHECK(tn_side(SweepClass::TPWitness));
  CHECK_FALSE(tn_side(SweepClass::NegativeMinor));
  CHECK_FALSE(tn_side(SweepClass::Inconclusive));
}

TEST_CASE("Karlin sweep examples") {
  auto r = karlin_sweep(karlin_config(Float(1), Float(1), 3, floats({0.5, 2})));
  CHECK(classes(r) == std::vector<SweepClass>{SweepClass::NegativePrincipalMinor, SweepClass::TPWitness});
  REQUIRE(r.rows[0].witness);
  CHECK(r.rows[0].witness->sign == SignClass::Negative);
  CHECK(r.rows[0].witness->principal);
  REQUIRE(r.rows[1].witness);
  CHECK(r.rows[1].witness->sign == SignClass::Positive);

  auto r4 = karlin_sweep(karlin_config(Float(1), Float(2), 4, floats({2.5})));
  CHECK(classes(r4) == std::vector<SweepClass>{SweepClass::TPWitness});

  CHECK_THROWS_AS(karlin_config(Float(0), Float(1), 3, floats({1})), Error);
}

TEST_CASE("Wallis sweep examples") {
  auto r3 = wallis_sweep(wallis_config(3, floats({1, 1.2})));
  CHECK(classes(r3) == std::vector<SweepClass>{SweepClass::TN, SweepClass::TPWitness});
  auto r4 = wallis_sweep(wallis_config(4, floats({1.5, 2, 2.5})));
  CHECK(r4.rows[0].classification == SweepClass::NegativePrincipalMinor);
  CHECK(tn_side(r4.rows[1].classification));
  CHECK(r4.rows[2].classification == SweepClass::TPWitness);
}

TEST_CASE("gamma sweep examples") {
  auto r = gamma_sweep(floats({1.5, 2, 2.5}), 3);
  CHECK(r.rows[0].classification == SweepClass::NegativeMinor);
  CHECK(tn_side(r.rows[1].classification));
  CHECK(tn_side(r.rows[2].classification));
}

TEST_CASE("lambda_d boundary examples") {
  auto r = lambda_d_boundary(floats({0.5}), 4);
  CHECK(r.rows[0].classification == SweepClass::TN);
  auto w = lambda_d_boundary(floats({2}), 2, floats({1, 2}), floats({0, 1}));
  REQUIRE(w.rows[0].classification == SweepClass::NegativeMinor);
  CHECK(abs(w.rows[0].witness->det_value + exp(Float(-2))) < Float("1e-25"));
  auto n = lambda_d_boundary(floats({-0.1}), 3);
  CHECK(n.rows[0].classification == SweepClass::NegativeMinor);
  REQUIRE(n.rows[0].witness);
  CHECK(n.rows[0].witness->rows.size() == 1);
}

TEST_CASE("recovery examples") {
  check_alpha(recover_from_moments(floats({3, 14}), 2), {1, 2}, 1e-25);
  check_alpha(recover_from_moments(floats({2, 6}), 2), {1, 1}, 1e-15);
  CHECK_THROWS_AS(recover_from_moments(floats({1, 5}), 2), Error);
  try {
    recover_from_moments(floats({1, 5}), 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentInput);
  }
  check_alpha(recover_from_maclaurin(floats({1, -2, 3}), 2), {1, 1}, 1e-15);
  check_alpha(recover_from_maclaurin(floats({2, -6, 14}), 2), {0.5, 1}, 1e-25);
  CHECK_THROWS_AS(recover_from_maclaurin(floats({0, 1, 1}), 2), Error);
  CHECK_THROWS_AS(recover_from_maclaurin(floats({1, 1}), 2), Error);
}

TEST_CASE("recovery round trips") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.2, 5);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 1 + t % 5;
    std::vector<double> a(m);
    for (double& v : a) v = u(rng);
    if (t % 3 == 0 && m > 1) a[1] = a[0];
    std::sort(a.begin(), a.end());
    const ParamVector p = ParamVector::from_doubles(a);
    std::vector<Float> mu;
    for (unsigned k = 1; k <= m; ++k) mu.push_back(hw_moment(p, k));
    const RecoveryResult rm = recover_from_moments(mu, m);
    const RecoveryResult rc = recover_from_maclaurin(maclaurin_derivatives(p), m);
    for (std::size_t i = 0; i < m; ++i) {
      REQUIRE(abs(rm.recovered.alpha()[i] - Float(a[i])) < Float("1e-8"));
      REQUIRE(abs(rc.recovered.alpha()[i] - Float(a[i])) < Float("1e-8"));
    }
    // the order of the input parameters does not matter
    std::vector<double> rev(a.rbegin(), a.rend());
    const auto back = maclaurin_derivatives(ParamVector::from_doubles(rev));
    const auto fwd = maclaurin_derivatives(p);
    for (std::size_t j = 0; j < fwd.size(); ++j)
      REQUIRE(abs(back[j] - fwd[j]) <= Float("1e-25") * (1 + abs(fwd[j])));
  }
}

TEST_CASE("Maclaurin derivatives of x e^{-x}") {
  const auto c = maclaurin_derivatives(ParamVector::from_doubles({1, 1}));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1);
  CHECK(c[1] == -2);
  CHECK(c[2] == 3);
}

TEST_CASE("powers of AP-rate densities") {
  APPowerResult sq = arithmetic_progression_power(ParamVector::from_doubles({1, 1}), 2);
  REQUIRE(sq.params.size() == 3);
  for (const Float& a : sq.params.alpha()) CHECK(abs(a - Float("0.5")) < Float("1e-25"));
  CHECK(abs(sq.normalization - Float("0.25")) < Float("1e-25"));
  CHECK(sq.verification.verdict == Verdict::TN);

  APPowerResult id = arithmetic_progression_power(ParamVector::from_doubles({1, 0.5}), 1);
  CHECK(id.params.size() == 2);
  CHECK(id.verification.verdict == Verdict::TN);

  APPowerResult three = arithmetic_progression_power(ParamVector::from_rates(floats({1, 2, 3})), 2);
  CHECK(three.verification.verdict == Verdict::TN);
  CHECK(three.residual < Float("1e-20"));

  CHECK_THROWS_AS(arithmetic_progression_power(ParamVector::from_rates(floats({1, 2, 4})), 2), Error);
}

TEST_CASE("witness searches") {
  SearchResult base = mbeta_power_test(Float(1), 1, 4);
  CHECK(base.status == SearchStatus::TN);
  SearchResult sq = mbeta_power_test(Float(1), 2, 5);
  REQUIRE(sq.status == SearchStatus::Witness);
  REQUIRE(sq.report.witness);
  CHECK(sq.report.witness->sign == SignClass::Negative);
  REQUIRE(sq.base_report);
  CHECK(sq.base_report->verdict == Verdict::TN);

  const ParamVector p = ParamVector::from_doubles({1, 2, 5});
  CHECK(hw_poly_rigidity(p, floats({0, 3}), 4).status == SearchStatus::TN);
  CHECK(hw_poly_rigidity(p, floats({0, 0, 1}), 4).status == SearchStatus::Witness);
  CHECK(hw_poly_rigidity(p, floats({0.1, 1}), 4).status == SearchStatus::Witness);
  CHECK_THROWS_AS(hw_poly_rigidity(ParamVector::from_doubles({1, 2}), floats({0, 1}), 2), Error);
}

TEST_CASE("preservers") {
  CHECK(Preserver::power(Float(1), Float(2)).describe().rfind("power(", 0) == 0);
  Float out, err;
  Preserver::power(Float(2), Float(2)).apply(Float(3), Float(0), out, err);
  CHECK(out == 18);
  Preserver::affine(Float("0.1"), Float(1)).apply(Float(0), Float(0), out, err);
  CHECK(abs(out - Float("0.1")) < Float("1e-30"));
  Preserver::indicator_positive(Float(2)).apply(Float(0), Float(0), out, err);
  CHECK(out == 0);
  Preserver::indicator_positive(Float(2)).apply(Float("0.3"), Float(0), out, err);
  CHECK(out == 2);
  CHECK(battery_class_from_string("tn-grid") == BatteryClass::TNGrid);
  CHECK_THROWS_AS(battery_class_from_string("nope"), Error);
  CHECK_FALSE(battery(BatteryClass::PFGrid).empty());

  CHECK_FALSE(falsify_preserver(Preserver::power(Float(2), Float(1)), BatteryClass::TNGrid, 3)
                  .counterexample);
  FalsifyOutcome sq = falsify_preserver(Preserver::power(Float(1), Float(2)), BatteryClass::TNGrid, 4);
  REQUIRE(sq.counterexample);
  CHECK(sq.counterexample->report.verdict == Verdict::NotTN);
  CHECK(sq.counterexample->base_report.verdict == Verdict::TN);
}

TEST_CASE("sweep serialization") {
  auto r = lambda_d_boundary(floats({0.5, 2}), 2, floats({1, 2}), floats({0, 1}));
  const std::string csv = to_csv(r);
  CHECK(csv.rfind("exponent,classification,shift_or_scale,witness_rows,witness_cols,det_value\n", 0) == 0);
  const nlohmann::json j = to_json(r);
  CHECK(j["schema"] == 1);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1]["classification"] == "NegativeMinor");
}
