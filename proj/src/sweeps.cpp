// Power-threshold sweeps: Karlin shifts, Wallis scales, gamma densities and
// the lambda_d boundary.
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "polyalab/lab.hpp"

namespace polyalab {

namespace {

bool is_integer(const Float& v) { return v == floor(v); }

// What the threshold theorems predict for a row.
enum class Expect { TN, TP, NegativePrincipal, Negative };

Expect karlin_expectation(const Float& alpha, unsigned p) {
  const Float edge(static_cast<double>(p) - 2);
  if (alpha > edge) return Expect::TP;
  if (is_integer(alpha)) return Expect::TN;
  return Expect::NegativePrincipal;
}

bool satisfied(Expect e, SweepClass c) {
  switch (e) {
    case Expect::TN: return c == SweepClass::TN;
    case Expect::TP: return c == SweepClass::TPWitness;
    case Expect::NegativePrincipal: return c == SweepClass::NegativePrincipalMinor;
    case Expect::Negative:
      return c == SweepClass::NegativeMinor || c == SweepClass::NegativePrincipalMinor;
  }
  return false;
}

using Sampler = std::function<GridSample(const Float&)>;

struct ParamOutcome {
  SweepClass cls = SweepClass::TN;
  std::optional<MinorCertificate> witness;
  std::optional<Float> param;
  std::uint64_t minors = 0;
  bool budget_hit = false;
};

struct PointScan {
  bool ok = false;
  std::optional<MinorCertificate> worst_principal;
  Float min_principal = std::numeric_limits<double>::infinity();
  std::optional<MinorCertificate> first_negative;
  std::optional<MinorCertificate> smallest;
  bool all_positive = true;
  std::uint64_t minors = 0;
};

PointScan scan_point(const Sampler& sampler, const Float& t, unsigned order, bool principal_only) {
  PointScan s;
  GridSample g;
  try {
    g = sampler(t);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Sampling || e.kind() == ErrorKind::Domain) return s;
    throw;
  }
  s.ok = true;
  enumerate_minors(g.matrix.rows(), g.matrix.cols(), order, [&](const auto& rows, const auto& cols) {
    if (principal_only && rows != cols) return true;
    ++s.minors;
    MinorCertificate c = evaluate_minor(g, rows, cols);
    if (c.sign != SignClass::Positive) s.all_positive = false;
    if (c.principal && c.det_value < s.min_principal) s.min_principal = c.det_value;
    if (c.sign == SignClass::Negative) {
      if (c.principal && (!s.worst_principal || c.det_value < s.worst_principal->det_value))
        s.worst_principal = c;
      if (!s.first_negative) s.first_negative = c;
    }
    if (!s.smallest || c.det_value < s.smallest->det_value) s.smallest = c;
    return true;
  });
  return s;
}

// Coarse scan over `params`, then golden-section refinement of the smallest
// principal minor around the best coarse point.
ParamOutcome param_search(const Sampler& sampler, const std::vector<Float>& params, unsigned order,
                          unsigned depth, bool want_tp, bool principal_class,
                          std::uint64_t budget) {
  ParamOutcome out;
  std::optional<MinorCertificate> best_principal, first_negative, tp_cert;
  std::optional<Float> best_principal_t, first_negative_t, tp_t;
  Float tp_margin = 0;
  std::vector<Float> objective(params.size(), Float(std::numeric_limits<double>::infinity()));

  auto absorb = [&](const PointScan& s, const Float& t) {
    if (s.worst_principal &&
        (!best_principal || s.worst_principal->det_value < best_principal->det_value)) {
      best_principal = s.worst_principal;
      best_principal_t = t;
    }
    if (s.first_negative && !first_negative) {
      first_negative = s.first_negative;
      first_negative_t = t;
    }
  };

  for (std::size_t i = 0; i < params.size(); ++i) {
    PointScan s = scan_point(sampler, params[i], order, false);
    out.minors += s.minors;
    if (!s.ok) continue;
    objective[i] = s.min_principal;
    absorb(s, params[i]);
    // the TP shift whose weakest minor has the widest certified margin
    if (want_tp && s.all_positive && s.smallest) {
      const Float margin = s.smallest->det_value / (s.smallest->error_bound + 1e-300);
      if (!tp_cert || margin > tp_margin) {
        tp_cert = s.smallest;
        tp_t = params[i];
        tp_margin = margin;
      }
    }
    if (out.minors > budget) {
      out.budget_hit = true;
      break;
    }
  }

  if (!out.budget_hit && depth > 0 && params.size() >= 3) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < params.size(); ++i)
      if (objective[i] < objective[best]) best = i;
    if (isfinite(objective[best])) {
      Float lo = params[best == 0 ? 0 : best - 1];
      Float hi = params[std::min(best + 1, params.size() - 1)];
      const Float ratio = (sqrt(Float(5)) - 1) / 2;
      Float c = hi - ratio * (hi - lo), d = lo + ratio * (hi - lo);
      auto f = [&](const Float& t) {
        PointScan s = scan_point(sampler, t, order, true);
        out.minors += s.minors;
        if (s.ok) absorb(s, t);
        return s.ok ? s.min_principal : Float(std::numeric_limits<double>::infinity());
      };
      Float fc = f(c), fd = f(d);
      for (unsigned it = 0; it < depth; ++it) {
        if (fc < fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - ratio * (hi - lo);
          fc = f(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + ratio * (hi - lo);
          fd = f(d);
        }
      }
    }
  }

  if (principal_class && best_principal) {
    out.cls = SweepClass::NegativePrincipalMinor;
    out.witness = best_principal;
    out.param = best_principal_t;
  } else if (first_negative) {
    out.cls = SweepClass::NegativeMinor;
    out.witness = first_negative;
    out.param = first_negative_t;
  } else if (best_principal) {
    out.cls = SweepClass::NegativeMinor;
    out.witness = best_principal;
    out.param = best_principal_t;
  } else if (tp_cert) {
    out.cls = SweepClass::TPWitness;
    out.witness = tp_cert;
    out.param = tp_t;
  }
  return out;
}

std::vector<Float> linear_params(const Float& lo, const Float& hi, unsigned n) {
  std::vector<Float> v;
  for (unsigned i = 0; i < n; ++i)
    v.push_back(lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
  return v;
}

std::vector<Float> shifted(const std::vector<Float>& ys, const Float& a) {
  std::vector<Float> out;
  out.reserve(ys.size());
  for (const Float& y : ys) out.push_back(y + a);
  return out;
}

std::vector<Float> scaled(const std::vector<Float>& v, const Float& m) {
  std::vector<Float> out;
  out.reserve(v.size());
  for (const Float& x : v) out.push_back(x * m);
  return out;
}

struct GridChoice {
  std::vector<Float> xs, ys;
};

std::vector<GridChoice> grid_choices(const std::vector<Float>& xs, const std::vector<Float>& ys,
                                     unsigned p) {
  if (!xs.empty() || !ys.empty()) {
    if (xs.size() != ys.size())
      throw Error(ErrorKind::Grid, "sweeps need grids of equal length");
    return {{xs, ys}};
  }
  std::vector<GridChoice> out;
  for (double h : default_steps()) out.push_back({ap_grid(p, Float(h)), ap_grid(p, Float(h))});
  return out;
}

// Runs one row over the candidate grids until the expectation is met.
SweepRow run_row(const Float& exponent, Expect expect, const std::vector<GridChoice>& grids,
                 const std::function<ParamOutcome(const GridChoice&)>& search,
                 std::uint64_t budget) {
  SweepRow row;
  row.exponent = exponent;
  std::uint64_t used = 0;
  std::optional<SweepRow> contradiction;
  bool searched = false;
  for (const GridChoice& gc : grids) {
    ParamOutcome o = search(gc);
    used += o.minors;
    searched = true;
    SweepRow r;
    r.exponent = exponent;
    r.classification = o.cls;
    r.witness = o.witness;
    r.shift_or_scale = o.param;
    r.xs = gc.xs;
    r.ys = gc.ys;
    if (o.budget_hit || used > budget) {
      r.classification = SweepClass::Inconclusive;
      r.note = "budget exceeded";
      return r;
    }
    if (satisfied(expect, o.cls)) return r;
    if (o.cls != SweepClass::TN && !contradiction) contradiction = r;
    if (expect == Expect::TN) return r;
  }
  if (contradiction) return *contradiction;
  row.classification = SweepClass::Inconclusive;
  row.note = searched ? "predicted witness not found on any searched grid" : "no grid searched";
  if (!grids.empty()) {
    row.xs = grids.front().xs;
    row.ys = grids.front().ys;
  }
  return row;
}

void check_sweep_config(const PowerSweepConfig& cfg) {
  if (cfg.p < 1) throw Error(ErrorKind::Precondition, "order p must be positive");
  for (const Float& e : cfg.exponents)
    if (!(e > 0)) throw Error(ErrorKind::Precondition, "exponents must be positive");
  if (!cfg.xs.empty() && (cfg.xs.size() != cfg.p || cfg.ys.size() != cfg.p))
    throw Error(ErrorKind::Precondition, "grids must have exactly p points");
}

}  // namespace

const std::vector<double>& default_steps() {
  static const std::vector<double> steps{1.0, 0.5, 0.25, 0.1};
  return steps;
}

std::vector<Float> ap_grid(std::size_t n, const Float& h, const Float& start) {
  std::vector<Float> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(start + h * static_cast<double>(i));
  return v;
}

const char* to_string(SweepClass c) {
  switch (c) {
    case SweepClass::TPWitness: return "TP_witness";
    case SweepClass::TN: return "TN";
    case SweepClass::NegativeMinor: return "NegativeMinor";
    case SweepClass::NegativePrincipalMinor: return "NegativePrincipalMinor";
    case SweepClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

bool tn_side(SweepClass c) { return c == SweepClass::TN || c == SweepClass::TPWitness; }

PowerSweepConfig karlin_config(const Float& q, const Float& r, unsigned p,
                               std::vector<Float> exponents) {
  PowerSweepConfig cfg{omega_kernel(q, r), std::move(exponents), p, {}, {}, ShiftSearch{},
                       kDefaultMinorBudget};
  return cfg;
}

PowerSweepConfig wallis_config(unsigned p, std::vector<Float> exponents) {
  PowerSweepConfig cfg{wallis_kernel(), std::move(exponents), p, {}, {}, ShiftSearch{},
                       kDefaultMinorBudget};
  return cfg;
}

PowerSweepReport karlin_sweep(const PowerSweepConfig& cfg) {
  check_sweep_config(cfg);
  if (!std::holds_alternative<family::OmegaQR>(cfg.base.family))
    throw Error(ErrorKind::Precondition, "karlin_sweep needs an OmegaQR base kernel");
  if (!cfg.shift_search) throw Error(ErrorKind::Precondition, "karlin_sweep needs a shift search");
  const ShiftSearch& ss = *cfg.shift_search;
  PowerSweepReport rep{"karlin", cfg.p, cfg.base, {}};
  const auto grids = grid_choices(cfg.xs, cfg.ys, cfg.p);
  for (const Float& alpha : cfg.exponents) {
    const KernelSpec k = power_of(cfg.base, alpha);
    auto search = [&](const GridChoice& gc) {
      const Float span = gc.xs.back() - gc.ys.front();
      // one-sided kernels need room below -span, where every difference is in the support
      const Float lo = ss.lo ? *ss.lo : Float(-span - k.decay_horizon()), hi = ss.hi ? *ss.hi : span;
      Sampler s = [&](const Float& a) { return sample(k, gc.xs, shifted(gc.ys, a)); };
      return param_search(s, linear_params(lo, hi, ss.coarse), cfg.p, ss.refine_depth, true,
                          true, cfg.budget);
    };
    rep.rows.push_back(run_row(alpha, karlin_expectation(alpha, cfg.p), grids, search, cfg.budget));
  }
  return rep;
}

PowerSweepReport wallis_sweep(const PowerSweepConfig& cfg) {
  check_sweep_config(cfg);
  if (!std::holds_alternative<family::Wallis>(cfg.base.family))
    throw Error(ErrorKind::Precondition, "wallis_sweep needs the Wallis base kernel");
  const ShiftSearch ss = cfg.shift_search.value_or(ShiftSearch{});
  PowerSweepReport rep{"wallis", cfg.p, cfg.base, {}};
  const auto grids = grid_choices(cfg.xs, cfg.ys, cfg.p);
  Float half_pi;
  mpfr_const_pi(half_pi.backend().data(), MPFR_RNDN);
  half_pi /= 2;
  for (const Float& alpha : cfg.exponents) {
    const KernelSpec k = power_of(cfg.base, alpha);
    auto search = [&](const GridChoice& gc) {
      Float widest = std::max(abs(gc.xs.back() - gc.ys.front()), abs(gc.ys.back() - gc.xs.front()));
      // every sampled difference stays strictly inside the support
      const Float m_cap = Float("0.999") * half_pi / widest;
      const unsigned n = std::max(3u, std::min(ss.coarse, 24u));
      std::vector<Float> logs;
      const Float step = log(Float("0.8"));
      for (unsigned i = 0; i < n; ++i) logs.push_back(log(m_cap) + step * static_cast<double>(i));
      Sampler s = [&](const Float& t) {
        const Float m = exp(t);
        return sample(k, scaled(gc.xs, m), scaled(gc.ys, m));
      };
      ParamOutcome o = param_search(s, logs, cfg.p, ss.refine_depth, true, true, cfg.budget);
      if (o.param) o.param = exp(*o.param);
      return o;
    };
    rep.rows.push_back(run_row(alpha, karlin_expectation(alpha, cfg.p), grids, search, cfg.budget));
  }
  return rep;
}

PowerSweepReport gamma_sweep(const std::vector<Float>& exponents, unsigned p,
                             const std::vector<Float>& xs, const std::vector<Float>& ys) {
  if (p < 1) throw Error(ErrorKind::Precondition, "order p must be positive");
  PowerSweepReport rep{"gamma", p, std::nullopt, {}};
  const auto grids = grid_choices(xs, ys, p);
  const ShiftSearch ss;
  for (const Float& alpha : exponents) {
    if (!(alpha > 0)) throw Error(ErrorKind::Precondition, "exponents must be positive");
    const KernelSpec k = gamma_kernel(alpha);
    const bool tn = (is_integer(alpha)) || alpha > Float(static_cast<double>(p) - 1);
    auto search = [&](const GridChoice& gc) {
      const Float span = gc.xs.back() - gc.ys.front();
      // zero differences are skipped by the sampler for shapes below 1
      Sampler s = [&](const Float& a) { return sample(k, gc.xs, shifted(gc.ys, a)); };
      return param_search(s, linear_params(-span - k.decay_horizon(), span, ss.coarse), p, 0, false, false,
                          kDefaultMinorBudget);
    };
    rep.rows.push_back(run_row(alpha, tn ? Expect::TN : Expect::Negative, grids, search,
                               kDefaultMinorBudget));
  }
  return rep;
}

PowerSweepReport lambda_d_boundary(const std::vector<Float>& ds, unsigned p,
                                   const std::vector<Float>& xs, const std::vector<Float>& ys) {
  if (p < 1) throw Error(ErrorKind::Precondition, "order p must be positive");
  PowerSweepReport rep{"lambda-d", p, std::nullopt, {}};
  std::vector<GridChoice> grids;
  if (!xs.empty() || !ys.empty()) {
    grids.push_back({xs, ys});
  } else {
    for (double h : default_steps()) {
      // equal grids put the jump on the diagonal; the offset copy straddles it
      grids.push_back({ap_grid(p, Float(h)), ap_grid(p, Float(h))});
      grids.push_back({ap_grid(p, Float(h)), ap_grid(p, Float(h), Float(-h / 2))});
    }
  }
  for (const Float& d : ds) {
    const KernelSpec k = lambda_d_kernel(d);
    const bool expect_tn = d >= 0 && d <= 1;
    SweepRow row;
    row.exponent = d;
    std::vector<GridChoice> tried = grids;
    if (d > 1 && xs.empty()) {
      // y_2 = x_1 gives det = e^{-(x_2 - y_1)} (1 - d)
      tried.insert(tried.begin(), GridChoice{{Float(1), Float(2)}, {Float(0), Float(1)}});
    }
    bool found = false;
    for (const GridChoice& gc : tried) {
      TnReport r = check_tn(sample(k, gc.xs, gc.ys), p);
      if (r.verdict == Verdict::NotTN) {
        row.classification = SweepClass::NegativeMinor;
        row.witness = r.witness;
        row.xs = gc.xs;
        row.ys = gc.ys;
        found = true;
        break;
      }
    }
    if (!found) {
      row.classification = expect_tn ? SweepClass::TN : SweepClass::Inconclusive;
      if (!expect_tn) row.note = "predicted witness not found on any searched grid";
      row.xs = tried.front().xs;
      row.ys = tried.front().ys;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace polyalab
