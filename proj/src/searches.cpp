// Witness searches on shifted grids and the preserver battery.
#include <algorithm>
#include <cmath>
#include <sstream>

#include "polyalab/lab.hpp"

namespace polyalab {

namespace {

struct Window {
  Float lo, hi;
};

Window shift_window(const KernelSpec& k, const std::vector<Float>& xs) {
  const Float span = xs.back() - xs.front();
  const Float reach = span + k.decay_horizon();
  // samples at (xs, xs + a) see differences x - y - a
  if (k.one_sided()) return {-reach, span};
  return {-reach, reach};
}

std::vector<Float> shifts(const Window& w, unsigned n) {
  std::vector<Float> v;
  for (unsigned i = 0; i < n; ++i)
    v.push_back(w.lo + (w.hi - w.lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
  return v;
}

std::vector<Float> plus(const std::vector<Float>& v, const Float& a) {
  std::vector<Float> out;
  for (const Float& x : v) out.push_back(x + a);
  return out;
}

bool homothety(const std::vector<Float>& c) {
  if (c.size() < 2 || c[0] != 0 || !(c[1] > 0)) return false;
  for (std::size_t i = 2; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

// Scans (AP(n, h), AP(n, h) + a) over steps and shifts for a negative minor.
SearchResult shifted_search(const KernelSpec& k, unsigned n, unsigned order,
                            const std::optional<KernelSpec>& base, const SearchOptions& opt) {
  if (opt.steps.empty()) throw Error(ErrorKind::Precondition, "a search needs at least one step");
  SearchResult res;
  for (double h : opt.steps) {
    const std::vector<Float> xs = ap_grid(n, Float(h));
    for (const Float& a : shifts(shift_window(k, xs), opt.coarse)) {
      const std::vector<Float> ys = plus(xs, a);
      GridSample g;
      try {
        g = sample(k, xs, ys);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Sampling || e.kind() == ErrorKind::Domain) continue;
        throw;
      }
      if (res.minors_evaluated + minor_count(n, n, order) > opt.budget) {
        res.budget_exhausted = true;
        res.status = SearchStatus::Inconclusive;
        return res;
      }
      TnReport r = check_tn(g, order, opt.budget);
      ++res.grids_searched;
      res.minors_evaluated += r.minors_evaluated;
      const bool first = res.xs.empty();
      if (first || r.verdict == Verdict::NotTN) {
        res.report = r;
        res.xs = xs;
        res.ys = ys;
      }
      if (r.verdict == Verdict::NotTN) {
        if (base) {
          TnReport b = check_tn(sample(*base, xs, ys), order, opt.budget);
          res.minors_evaluated += b.minors_evaluated;
          res.base_report = b;
        }
        res.status = SearchStatus::Witness;
        return res;
      }
    }
  }
  res.status = SearchStatus::TN;
  return res;
}

}  // namespace

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Witness: return "Witness";
    case SearchStatus::TN: return "TN";
    case SearchStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

SearchResult mbeta_power_test(const Float& beta, unsigned k, unsigned p, const SearchOptions& opt) {
  if (k < 1) throw Error(ErrorKind::Precondition, "the power k must be a positive integer");
  if (p < 1) throw Error(ErrorKind::Precondition, "order p must be positive");
  const KernelSpec base = mbeta_kernel(beta);
  const KernelSpec kern = k == 1 ? base : power_of(base, Float(k));
  SearchResult res = shifted_search(kern, p, p, base, opt);
  if (res.status == SearchStatus::TN && k >= 2 && !res.budget_exhausted)
    res.status = SearchStatus::Inconclusive;
  if (!res.base_report && !res.xs.empty())
    res.base_report = check_tn(sample(base, res.xs, res.ys), p, opt.budget);
  return res;
}

SearchResult hw_poly_rigidity(const ParamVector& params, const std::vector<Float>& coeffs,
                              unsigned order, const SearchOptions& opt) {
  if (params.size() < 3)
    throw Error(ErrorKind::Precondition, "rigidity needs at least three parameters");
  if (coeffs.empty()) throw Error(ErrorKind::Precondition, "empty polynomial");
  if (order < 1) throw Error(ErrorKind::Precondition, "order must be positive");
  const KernelSpec base = hw_kernel(params);
  SearchResult res = shifted_search(poly_of(base, coeffs), order, order, base, opt);
  if (res.status == SearchStatus::TN && !homothety(coeffs)) res.status = SearchStatus::Inconclusive;
  return res;
}

// ---- preservers ----

Preserver Preserver::power(const Float& c, const Float& alpha) {
  if (!(c > 0) || !(alpha > 0)) throw Error(ErrorKind::Precondition, "power needs c > 0 and alpha > 0");
  Preserver f;
  f.kind = Kind::Power;
  f.c = c;
  f.alpha = alpha;
  return f;
}

Preserver Preserver::constant(const Float& c) {
  if (c < 0) throw Error(ErrorKind::Precondition, "constant needs c >= 0");
  Preserver f;
  f.kind = Kind::Constant;
  f.c = c;
  return f;
}

Preserver Preserver::indicator_positive(const Float& c) {
  if (c < 0) throw Error(ErrorKind::Precondition, "indicator needs c >= 0");
  Preserver f;
  f.kind = Kind::IndicatorPositive;
  f.c = c;
  return f;
}

Preserver Preserver::affine(const Float& c0, const Float& c1) {
  Preserver f;
  f.kind = Kind::Affine;
  f.c0 = c0;
  f.c1 = c1;
  return f;
}

std::string Preserver::describe() const {
  switch (kind) {
    case Kind::Power: return "power(" + to_decimal(c, 12) + "," + to_decimal(alpha, 12) + ")";
    case Kind::Constant: return "constant(" + to_decimal(c, 12) + ")";
    case Kind::IndicatorPositive: return "indicator-positive(" + to_decimal(c, 12) + ")";
    case Kind::Affine: return "affine(" + to_decimal(c0, 12) + "," + to_decimal(c1, 12) + ")";
  }
  return "";
}

void Preserver::apply(const Float& v, const Float& e, Float& out, Float& out_err) const {
  const Float u = unit_roundoff();
  switch (kind) {
    case Kind::Power: {
      const Float lo = std::max(v - e, Float(0)), hi = std::max(v + e, Float(0));
      const Float mid = std::max(v, Float(0));
      out = c * pow(mid, alpha);
      Float spread = std::max(c * pow(hi, alpha) - out, out - c * pow(lo, alpha));
      out_err = spread + 8 * u * abs(out);
      return;
    }
    case Kind::Constant:
      out = c;
      out_err = 0;
      return;
    case Kind::IndicatorPositive:
      if (v - e > 0) {
        out = c;
        out_err = 0;
      } else if (v + e <= 0) {
        out = 0;
        out_err = 0;
      } else {
        out = c / 2;
        out_err = c / 2;
      }
      return;
    case Kind::Affine:
      out = c0 + c1 * v;
      out_err = abs(c1) * e + 4 * u * (abs(c0) + abs(c1 * v));
      return;
  }
}

const char* to_string(BatteryClass c) {
  switch (c) {
    case BatteryClass::PFGrid: return "pf-grid";
    case BatteryClass::TNGrid: return "tn-grid";
    case BatteryClass::OneSidedTNGrid: return "one-sided-tn-grid";
  }
  return "tn-grid";
}

BatteryClass battery_class_from_string(const std::string& s) {
  if (s == "pf-grid" || s == "PF-grid") return BatteryClass::PFGrid;
  if (s == "tn-grid" || s == "TN-grid") return BatteryClass::TNGrid;
  if (s == "one-sided-tn-grid" || s == "one-sided-TN-grid") return BatteryClass::OneSidedTNGrid;
  throw Error(ErrorKind::Parse, "unknown battery class '" + s + "'");
}

std::vector<KernelSpec> battery(BatteryClass cls) {
  std::vector<KernelSpec> pf{hw_kernel(ParamVector::from_doubles({1, 1})),
                             hw_kernel(ParamVector::from_doubles({1, 2, 5})),
                             mbeta_kernel(Float(1)),
                             mbeta_kernel(Float(3)),
                             omega_kernel(Float(1), Float(2)),
                             lambda_d_kernel(Float("0.5")),
                             gamma_kernel(Float(2)),
                             gamma_kernel(Float("3.5")),
                             gauss_kernel()};
  switch (cls) {
    case BatteryClass::PFGrid: return pf;
    case BatteryClass::TNGrid:
      pf.push_back(heaviside_kernel());
      pf.push_back(lambda_d_kernel(Float(0)));
      pf.push_back(lambda_d_kernel(Float(1)));
      return pf;
    case BatteryClass::OneSidedTNGrid: {
      std::vector<KernelSpec> out;
      for (KernelSpec& k : pf)
        if (k.one_sided()) out.push_back(std::move(k));
      out.push_back(heaviside_kernel());
      out.push_back(lambda_d_kernel(Float(1)));
      return out;
    }
  }
  return pf;
}

FalsifyOutcome falsify_preserver(const Preserver& f, BatteryClass cls, unsigned order,
                                 std::uint64_t budget) {
  if (order < 1) throw Error(ErrorKind::Precondition, "order must be positive");
  FalsifyOutcome out;
  const unsigned n = order;
  const unsigned coarse = 60;
  const std::uint64_t per_grid = minor_count(n, n, order);
  for (const KernelSpec& k : battery(cls)) {
    for (double h : default_steps()) {
      const std::vector<Float> xs = ap_grid(n, Float(h));
      for (const Float& a : shifts(shift_window(k, xs), coarse)) {
        const std::vector<Float> ys = plus(xs, a);
        GridSample base;
        try {
          base = sample(k, xs, ys);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::Sampling || e.kind() == ErrorKind::Domain) continue;
          throw;
        }
        if (out.minors_evaluated + 2 * per_grid > budget) {
          out.budget_exhausted = true;
          return out;
        }
        GridSample image = base;
        image.spec.reset();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            f.apply(base.matrix(i, j), base.errors(i, j), image.matrix(i, j), image.errors(i, j));
        TnReport r = check_tn(image, order, budget);
        out.minors_evaluated += r.minors_evaluated;
        if (r.verdict != Verdict::NotTN) continue;
        TnReport b = check_tn(base, order, budget);
        out.minors_evaluated += b.minors_evaluated;
        // a base sample that is not certified TN says nothing about F
        if (b.verdict != Verdict::TN) continue;
        out.counterexample = Counterexample{k, xs, ys, r, b};
        return out;
      }
    }
  }
  return out;
}

}  // namespace polyalab
