// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../unit/oracles.hpp"
#include "polyalab/lab.hpp"

using namespace polyalab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double to_d(const Float& v) { return v.convert_to<double>(); }

std::vector<Float> floats(std::initializer_list<double> v) { return {v.begin(), v.end()}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> distinct_values(std::mt19937_64& rng, std::size_t m, double lo, double hi,
                                    double gap) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> a;
  while (a.size() < m) {
    const double c = u(rng);
    bool ok = true;
    for (double x : a) ok = ok && std::fabs(x - c) > gap;
    if (ok) a.push_back(c);
  }
  return a;
}

bool is_int(const Float& v) { return v == floor(v); }

Outcome cross_representation() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> ux(0, 20);
  std::uniform_int_distribution<int> um(1, 5);
  double worst_series = 0, worst_det = 0;
  for (int t = 0; t < 200; ++t) {
    const ParamVector p = ParamVector::from_doubles(distinct_values(rng, um(rng), 0.1, 10, 1e-3));
    for (int i = 0; i < 20; ++i) {
      const Float x(ux(rng));
      const Float a = hw_eval_additive(p, x).value;
      worst_series = std::max(worst_series, to_d(abs(a - hw_eval_series(p, x, Float("1e-20")).value)));
      worst_det = std::max(worst_det, to_d(abs(a - hw_eval_determinantal(p, x).value)));
    }
  }
  return {worst_series <= 1e-10 && worst_det <= 1e-9,
          "max |additive-series| " + fmt(worst_series) + ", max |additive-determinantal| " +
              fmt(worst_det)};
}

Outcome moment_identity() {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> u(0.1, 5);
  std::uniform_int_distribution<int> um(1, 4);
  boost::math::quadrature::exp_sinh<double> quad;
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> alpha(um(rng));
    for (double& a : alpha) a = u(rng);
    const ParamVector p = ParamVector::from_doubles(alpha);
    const KernelSpec k = hw_kernel(p);
    for (unsigned j = 0; j <= 4; ++j) {
      auto f = [&](double x) {
        const double v = to_d(eval(k, Float(x)).value);
        return v == 0 ? 0.0 : std::pow(x, j) * v;
      };
      const double q = quad.integrate(f, 1e-12);
      const double exact = to_d(hw_moment(p, j));
      worst = std::max(worst, std::fabs(q - exact) / exact);
    }
  }
  return {worst <= 1e-6, "max relative error " + fmt(worst)};
}

Outcome karlin_table() {
  bool ok = true;
  int rows = 0, inconclusive = 0, mismatches = 0;
  double p5_seconds = 0;
  std::string first_bad;
  for (unsigned p = 2; p <= 5; ++p)
    for (auto qr : {std::pair<double, double>{1, 1}, {1, 2}}) {
      std::vector<Float> exps;
      for (unsigned k = 1; k <= 4 * (p - 1); ++k) exps.push_back(Float(0.25 * k));
      const auto t0 = std::chrono::steady_clock::now();
      PowerSweepReport rep = karlin_sweep(karlin_config(Float(qr.first), Float(qr.second), p, exps));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (p == 5) p5_seconds = std::max(p5_seconds, secs);
      for (const SweepRow& row : rep.rows) {
        ++rows;
        const bool tn_predicted = is_int(row.exponent) || row.exponent > p - 2;
        const bool good = tn_predicted ? tn_side(row.classification)
                                       : row.classification == SweepClass::NegativePrincipalMinor;
        inconclusive += row.classification == SweepClass::Inconclusive;
        if (!good) {
          ++mismatches;
          if (first_bad.empty())
            first_bad = " first mismatch p=" + std::to_string(p) + " r=" + fmt(qr.second) +
                        " exponent " + fmt(to_d(row.exponent)) + " got " +
                        to_string(row.classification);
        }
      }
    }
  ok = mismatches == 0 && inconclusive == 0 && p5_seconds <= 300;
  return {ok, std::to_string(rows) + " rows, " + std::to_string(mismatches) + " mismatches, " +
                  std::to_string(inconclusive) + " inconclusive, p=5 sweep " + fmt(p5_seconds) +
                  " s" + first_bad};
}

Outcome gamma_threshold() {
  int rows = 0, mismatches = 0;
  std::string first_bad;
  for (unsigned p = 2; p <= 4; ++p) {
    PowerSweepReport rep = gamma_sweep(floats({0.5, 1, 1.5, 2, 2.5, 3, 3.5}), p);
    for (const SweepRow& row : rep.rows) {
      ++rows;
      const bool tn_predicted = (is_int(row.exponent) && row.exponent > 0) || row.exponent > p - 1;
      const bool negative = row.classification == SweepClass::NegativeMinor ||
                            row.classification == SweepClass::NegativePrincipalMinor;
      const bool good = tn_predicted ? tn_side(row.classification) : negative;
      if (!good) {
        ++mismatches;
        if (first_bad.empty())
          first_bad = " first mismatch p=" + std::to_string(p) + " exponent " +
                      fmt(to_d(row.exponent)) + " got " + to_string(row.classification);
      }
    }
  }
  return {mismatches == 0, std::to_string(rows) + " rows, " + std::to_string(mismatches) +
                               " mismatches" + first_bad};
}

Outcome wallis_threshold() {
  int checked = 0, mismatches = 0;
  std::string first_bad;
  for (unsigned p = 3; p <= 4; ++p) {
    PowerSweepReport rep = wallis_sweep(wallis_config(p, floats({0.5, 1, 1.5, 2, 2.5})));
    for (const SweepRow& row : rep.rows) {
      bool good = true;
      if (row.exponent >= p - 2) {
        good = tn_side(row.classification);
      } else if (!is_int(row.exponent)) {
        good = row.classification == SweepClass::NegativeMinor ||
               row.classification == SweepClass::NegativePrincipalMinor;
      } else {
        continue;  // integers below p - 2 carry no claim here
      }
      ++checked;
      if (!good) {
        ++mismatches;
        if (first_bad.empty())
          first_bad = " first mismatch p=" + std::to_string(p) + " exponent " +
                      fmt(to_d(row.exponent)) + " got " + to_string(row.classification);
      }
    }
  }
  return {mismatches == 0, std::to_string(checked) + " rows checked, " +
                               std::to_string(mismatches) + " mismatches" + first_bad};
}

Outcome lambda_d() {
  PowerSweepReport tn = lambda_d_boundary(floats({0, 0.25, 0.5, 1}), 5);
  bool ok = true;
  for (const SweepRow& row : tn.rows) ok = ok && row.classification == SweepClass::TN;
  const auto t0 = std::chrono::steady_clock::now();
  PowerSweepReport neg = lambda_d_boundary(floats({1.1, 2}), 5);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0;
  for (const SweepRow& row : neg.rows) {
    if (row.classification != SweepClass::NegativeMinor || !row.witness ||
        row.witness->rows.size() != 2) {
      ok = false;
      continue;
    }
    const auto& w = *row.witness;
    // the witness is the 2x2 minor on x1 = y2; its value is e^{-(x2 - y1)} (1 - d)
    const Float x1 = row.xs[w.rows[0]], x2 = row.xs[w.rows[1]];
    const Float y1 = row.ys[w.cols[0]], y2 = row.ys[w.cols[1]];
    const Float expected = exp(-(x2 - y1)) * (1 - row.exponent);
    if (x1 != y2) ok = false;
    worst = std::max(worst, to_d(abs(w.det_value - expected)));
  }
  ok = ok && worst < 1e-20 && secs <= 1;
  return {ok, "TN rows at order 5 for d in {0,0.25,0.5,1}; witnesses for d in {1.1,2} in " +
                  fmt(secs) + " s, max |det - e^{-(x2-y1)}(1-d)| " + fmt(worst)};
}

Outcome mbeta_failure() {
  bool ok = true;
  std::string detail;
  for (double beta : {1.0, 3.0}) {
    SearchResult sq = mbeta_power_test(Float(beta), 2, 5);
    SearchResult base = mbeta_power_test(Float(beta), 1, 5);
    const bool witness = sq.status == SearchStatus::Witness && sq.report.witness &&
                         sq.report.witness->sign == SignClass::Negative &&
                         sq.report.witness->rows.size() <= 5;
    const bool base_tn = sq.base_report && sq.base_report->verdict == Verdict::TN &&
                         base.status == SearchStatus::TN;
    ok = ok && witness && base_tn;
    detail += "beta=" + fmt(beta) + ": square " + to_string(sq.status);
    if (sq.report.witness) detail += " (order " + std::to_string(sq.report.witness->rows.size()) + ")";
    detail += ", base " + std::string(base.status == SearchStatus::TN ? "TN" : "not TN") + "; ";
  }
  return {ok, detail};
}

Outcome recovery_round_trip() {
  std::mt19937_64 rng(1008);
  std::uniform_real_distribution<double> u(0.2, 5);
  std::uniform_int_distribution<int> um(1, 5);
  double worst = 0;
  int repeated = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> a(um(rng));
    for (double& v : a) v = u(rng);
    if (a.size() > 1 && t % 4 == 0) {
      a[1] = a[0];
      ++repeated;
    }
    if (a.size() > 3 && t % 8 == 0) a[3] = a[2] = a[0];
    std::sort(a.begin(), a.end());
    const ParamVector p = ParamVector::from_doubles(a);
    const unsigned m = a.size();
    std::vector<Float> mu;
    for (unsigned k = 1; k <= m; ++k) mu.push_back(hw_moment(p, k));
    const RecoveryResult rm = recover_from_moments(mu, m);
    const RecoveryResult rc = recover_from_maclaurin(maclaurin_derivatives(p), m);
    for (unsigned i = 0; i < m; ++i) {
      worst = std::max(worst, to_d(abs(rm.recovered.alpha()[i] - Float(a[i]))));
      worst = std::max(worst, to_d(abs(rc.recovered.alpha()[i] - Float(a[i]))));
    }
  }
  // m = 2 moment data is consistent iff 3/4 h1^2 <= h2 < h1^2, with h_k = mu_k / k!
  std::uniform_real_distribution<double> frac(0.05, 0.7), over(1.05, 3);
  int rejected = 0, attempts = 0;
  for (int t = 0; t < 100; ++t) {
    const double h1 = u(rng);
    const double h2 = (t % 2 ? frac(rng) : over(rng)) * h1 * h1;
    ++attempts;
    try {
      recover_from_moments({Float(h1), Float(2 * h2)}, 2);
    } catch (const Error& e) {
      rejected += e.kind() == ErrorKind::InconsistentInput;
    }
  }
  try {
    recover_from_moments(floats({1, 5}), 2);
  } catch (const Error& e) {
    rejected += e.kind() == ErrorKind::InconsistentInput;
  }
  ++attempts;
  return {worst <= 1e-8 && rejected == attempts,
          "500 vectors (" + std::to_string(repeated) + " with repeats), max error " + fmt(worst) +
              ", rejected " + std::to_string(rejected) + "/" + std::to_string(attempts) +
              " inconsistent inputs"};
}

Outcome hciz_consistency() {
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> ux(-1.5, 1.5);
  double worst_det = 0, worst_rel = 0;
  const Float eps("1e-15");
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + t % 4;
    const auto ad = distinct_values(rng, m, -2, 3, 0.05);
    std::vector<Float> a(ad.begin(), ad.end());
    const Float x(ux(rng));
    // b = (x, 0, eps, 2 eps, ...) is within O(eps) of the rank-one point x E11
    std::vector<Float> b{x};
    for (std::size_t j = 1; j < m; ++j) b.push_back(eps * static_cast<double>(j - 1));
    if (m > 1 && abs(x) < Float("1e-3")) b[0] = Float("0.5");
    const Float det = hciz_det(a, b);
    const EvalResult s = hciz_series(a, b[0], 200);
    worst_det = std::max(worst_det, to_d(abs(det - s.value)));
  }
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 1 + t % 4;
    const auto ad = distinct_values(rng, m, 0.2, 4, 0.05);
    std::vector<Float> a(ad.begin(), ad.end());
    Float prod(1), fact(1);
    for (double v : ad) prod *= Float(v);
    for (std::size_t j = 2; j < m; ++j) fact *= static_cast<double>(j);
    const KernelSpec lam = hw_kernel(ParamVector::from_rates(a));
    for (double xv : {0.5, 1.0, 2.0}) {
      const Float x(xv);
      const Float lhs = hciz_series(a, -x, 200).value;
      const Float rhs = fact * pow(x, 1 - static_cast<int>(m)) / prod * eval(lam, x).value;
      worst_rel = std::max(worst_rel, to_d(abs(lhs - rhs)));
    }
  }
  return {worst_det <= 1e-8 && worst_rel <= 1e-8,
          "max |det - series| " + fmt(worst_det) + " (near rank-one b), max Lambda relation gap " +
              fmt(worst_rel)};
}

Outcome preserver_battery() {
  bool ok = true;
  std::string detail;
  auto run = [&](const Preserver& f, unsigned order, bool expect_counterexample) {
    FalsifyOutcome o = falsify_preserver(f, BatteryClass::TNGrid, order);
    const bool found = o.counterexample.has_value();
    bool good = found == expect_counterexample && !o.budget_exhausted;
    if (found) good = good && o.counterexample->base_report.verdict == Verdict::TN;
    ok = ok && good;
    detail += f.describe() + "@" + std::to_string(order) + (found ? " counterexample" : " none") +
              (good ? "" : " (unexpected)") + "; ";
  };
  for (double c : {0.5, 1.0, 3.0}) run(Preserver::power(Float(c), Float(1)), 4, false);
  run(Preserver::power(Float(1), Float(2)), 4, true);
  run(Preserver::affine(Float("0.1"), Float(1)), 4, true);
  run(Preserver::power(Float(1), Float("0.5")), 4, true);
  run(Preserver::power(Float(1), Float(2)), 3, false);
  return {ok, detail};
}

// Fekete corpus: square and rectangular matrices up to 6x6 drawn from TP
// constructions and from generic positive and sign-mixed matrices.
std::vector<GridSample> fekete_corpus() {
  std::mt19937_64 rng(1011);
  std::uniform_real_distribution<double> u(0, 1), step(0.3, 1.2);
  std::vector<GridSample> out;
  auto increasing = [&](std::size_t n, double start) {
    std::vector<Float> v{Float(start)};
    while (v.size() < n) v.push_back(v.back() + step(rng));
    return v;
  };
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t m = 1; m <= 6; ++m)
      for (int rep = 0; rep < 8; ++rep) {
        const double s = u(rng) * 2 - 1;
        switch (rep) {
          case 0:
            out.push_back(sample(gauss_kernel(), increasing(n, s), increasing(m, 0)));
            break;
          case 1:
            out.push_back(sample(hw_kernel(ParamVector::from_doubles({1, 0.5})), increasing(n, s),
                                 increasing(m, 0)));
            break;
          case 2: {
            // Cauchy matrix 1 / (x_i + y_j) is TP for increasing positive nodes
            auto xs = increasing(n, 0.5), ys = increasing(m, 0.5);
            Matrix<Float> c(n, m);
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < m; ++j) c(i, j) = 1 / (xs[i] + ys[j]);
            out.push_back(sample_matrix(c));
            break;
          }
          case 3: {
            auto xs = increasing(n, 0), ys = increasing(m, 0);
            Matrix<Float> c(n, m);
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < m; ++j) c(i, j) = exp(xs[i] * ys[j] / 2);
            out.push_back(sample_matrix(c));
            break;
          }
          case 4:
          case 5: {
            Matrix<Float> c(n, m);
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < m; ++j) c(i, j) = Float(u(rng) + 0.01);
            out.push_back(sample_matrix(c));
            break;
          }
          case 6: {
            Matrix<Float> c(n, m);
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < m; ++j) c(i, j) = Float(u(rng) * 2 - 0.3);
            out.push_back(sample_matrix(c));
            break;
          }
          default:
            out.push_back(sample(wallis_kernel(), increasing(n, s), increasing(m, 0)));
            break;
        }
      }
  return out;
}

Outcome determinant_oracles() {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> entry(-9, 9), size(1, 5);
  int det_mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = size(rng);
    Matrix<Exact> m(n, n);
    std::vector<std::vector<Exact>> rows(n, std::vector<Exact>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rows[i][j] = entry(rng);
    det_mismatch += det_exact(m) != oracle::cofactor_det(rows);
  }
  int fekete_mismatch = 0, tp = 0, total = 0;
  for (const GridSample& g : fekete_corpus()) {
    const Verdict full = check_tp(g, kFullOrder, false).verdict;
    const Verdict fek = check_tp(g, kFullOrder, true).verdict;
    fekete_mismatch += full != fek;
    tp += full == Verdict::TP;
    ++total;
  }
  return {det_mismatch == 0 && fekete_mismatch == 0,
          "1000 integer matrices, " + std::to_string(det_mismatch) + " det mismatches; " +
              std::to_string(total) + " corpus matrices (" + std::to_string(tp) + " TP), " +
              std::to_string(fekete_mismatch) + " Fekete mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 cross-representation agreement", cross_representation},
      {"2 moment identity by quadrature", moment_identity},
      {"3 Karlin threshold table", karlin_table},
      {"4 gamma threshold", gamma_threshold},
      {"5 Wallis threshold", wallis_threshold},
      {"6 lambda_d boundary", lambda_d},
      {"7 M_beta power failure", mbeta_failure},
      {"8 recovery round trip", recovery_round_trip},
      {"9 HCIZ consistency", hciz_consistency},
      {"10 preserver battery", preserver_battery},
      {"11 determinant oracles", determinant_oracles},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
