#include "polyalab/tpcheck.hpp"

#include <algorithm>
#include <limits>

namespace polyalab {

using nlohmann::json;

namespace {

void check_increasing(const std::vector<Float>& v, const char* name) {
  if (v.empty()) throw Error(ErrorKind::Grid, std::string(name) + " must be non-empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1]))
      throw Error(ErrorKind::Grid, std::string(name) + " must be strictly increasing");
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

unsigned effective_order(const GridSample& g, unsigned p) {
  unsigned dim = static_cast<unsigned>(std::min(g.matrix.rows(), g.matrix.cols()));
  if (p == kFullOrder) return dim;
  return std::min(p, dim);
}

template <class Visit>
void for_each_minor(const GridSample& g, unsigned order, Visit&& visit) {
  enumerate_minors(g.matrix.rows(), g.matrix.cols(), order, visit);
}

template <class Visit>
void for_each_contiguous_minor(const GridSample& g, Visit&& visit) {
  const std::size_t n = g.matrix.rows(), m = g.matrix.cols();
  const std::size_t order = std::min(n, m);
  for (std::size_t r = 1; r <= order; ++r)
    for (std::size_t i = 0; i + r <= n; ++i)
      for (std::size_t j = 0; j + r <= m; ++j) {
        std::vector<std::size_t> rows(r), cols(r);
        for (std::size_t k = 0; k < r; ++k) {
          rows[k] = i + k;
          cols[k] = j + k;
        }
        if (!visit(rows, cols)) return;
      }
}

void enforce_budget(const GridSample& g, unsigned order, std::uint64_t budget) {
  std::uint64_t need = minor_count(g.matrix.rows(), g.matrix.cols(), order);
  if (need > budget)
    throw Error(ErrorKind::BudgetExceeded,
                "minor enumeration needs " + std::to_string(need) +
                    " determinants, above the budget of " + std::to_string(budget));
}

void keep_min(std::optional<MinorCertificate>& best, MinorCertificate&& c) {
  if (!best || c.det_value < best->det_value) best = std::move(c);
}

}  // namespace

void enumerate_minors(std::size_t n, std::size_t m, unsigned order, const MinorVisitor& visit) {
  if (order == kFullOrder) order = static_cast<unsigned>(std::min(n, m));
  for (unsigned r = 1; r <= order && r <= n && r <= m; ++r) {
    std::vector<std::size_t> rows = first_combination(r);
    do {
      std::vector<std::size_t> cols = first_combination(r);
      do {
        if (!visit(rows, cols)) return;
      } while (next_combination(cols, m));
    } while (next_combination(rows, n));
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::TN: return "TN";
    case Verdict::TP: return "TP";
    case Verdict::NotTN: return "NotTN";
    case Verdict::NotTP: return "NotTP";
  }
  return "TN";
}

std::uint64_t minor_count(std::size_t rows, std::size_t cols, unsigned p) {
  auto binom = [](std::size_t n, std::size_t k) {
    long double b = 1;
    for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  std::size_t order = std::min(rows, cols);
  if (p != kFullOrder) order = std::min<std::size_t>(order, p);
  long double total = 0;
  for (std::size_t r = 1; r <= order; ++r) total += binom(rows, r) * binom(cols, r);
  if (total > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
    return std::numeric_limits<std::uint64_t>::max() / 2;
  return static_cast<std::uint64_t>(total + 0.5L);
}

GridSample sample(const KernelSpec& spec, const std::vector<Float>& xs,
                  const std::vector<Float>& ys) {
  check_increasing(xs, "xs");
  check_increasing(ys, "ys");
  GridSample g;
  g.xs = xs;
  g.ys = ys;
  g.spec = spec;
  g.matrix = Matrix<Float>(xs.size(), ys.size());
  g.errors = Matrix<Float>(xs.size(), ys.size());
  const unsigned diff_bits = precision_bits() + 128;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      Float d;
      {
        // carried wide enough that the difference is exact for ordinary grids
        PrecisionGuard guard(diff_bits);
        d = xs[i] - ys[j];
      }
      EvalResult e = eval(spec, d);
      if (e.unbounded || !isfinite(e.value))
        throw Error(ErrorKind::Sampling, spec.name() + " is unbounded at difference x - y = " +
                                             to_decimal(d, 12) + " (row " + std::to_string(i) +
                                             ", column " + std::to_string(j) + ")");
      g.matrix(i, j) = e.value;
      g.errors(i, j) = e.abs_error_bound;
    }
  return g;
}

GridSample sample_matrix(const Matrix<Float>& m) {
  GridSample g;
  for (std::size_t i = 0; i < m.rows(); ++i) g.xs.emplace_back(static_cast<double>(i));
  for (std::size_t j = 0; j < m.cols(); ++j) g.ys.emplace_back(static_cast<double>(j));
  g.matrix = m;
  g.errors = Matrix<Float>(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g.errors(i, j) = 0;
  return g;
}

MinorCertificate evaluate_minor(const GridSample& g, const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& cols) {
  if (rows.size() != cols.size() || rows.empty())
    throw Error(ErrorKind::Dimension, "a minor needs equally many rows and columns");
  FloatDet d = det_float(g.matrix.submatrix(rows, cols), g.errors.submatrix(rows, cols));
  MinorCertificate c;
  c.rows = rows;
  c.cols = cols;
  c.det_value = d.value;
  c.error_bound = d.error_bound;
  c.sign = sign_with_tolerance(d.value, d.error_bound);
  c.principal = rows == cols;
  return c;
}

TnReport check_tn(const GridSample& g, unsigned p, std::uint64_t budget) {
  const unsigned order = effective_order(g, p);
  enforce_budget(g, order, budget);
  TnReport rep;
  rep.order = order;
  std::optional<MinorCertificate> smallest;
  for_each_minor(g, order, [&](const auto& rows, const auto& cols) {
    ++rep.minors_evaluated;
    MinorCertificate c = evaluate_minor(g, rows, cols);
    if (c.sign == SignClass::Negative) {
      rep.verdict = Verdict::NotTN;
      rep.witness = std::move(c);
      return false;
    }
    keep_min(smallest, std::move(c));
    return true;
  });
  if (rep.verdict == Verdict::TN) rep.witness = std::move(smallest);
  return rep;
}

TnReport check_tp(const GridSample& g, unsigned p, bool use_fekete, std::uint64_t budget) {
  const unsigned dim = static_cast<unsigned>(std::min(g.matrix.rows(), g.matrix.cols()));
  const unsigned order = effective_order(g, p);
  if (use_fekete && order != dim)
    throw Error(ErrorKind::Mode, "the contiguous-minor shortcut is only valid for full total positivity");
  if (!use_fekete) enforce_budget(g, order, budget);
  TnReport rep;
  rep.order = order;
  rep.verdict = Verdict::TP;
  std::optional<MinorCertificate> smallest;
  auto visit = [&](const auto& rows, const auto& cols) {
    ++rep.minors_evaluated;
    MinorCertificate c = evaluate_minor(g, rows, cols);
    if (c.sign != SignClass::Positive) {
      rep.verdict = Verdict::NotTP;
      rep.witness = std::move(c);
      return false;
    }
    keep_min(smallest, std::move(c));
    return true;
  };
  if (use_fekete)
    for_each_contiguous_minor(g, visit);
  else
    for_each_minor(g, order, visit);
  if (rep.verdict == Verdict::TP) rep.witness = std::move(smallest);
  return rep;
}

std::optional<MinorCertificate> principal_minor_scan(const GridSample& g, unsigned p) {
  if (g.matrix.rows() != g.matrix.cols())
    throw Error(ErrorKind::Grid, "principal minors need grids of equal length");
  const unsigned order = effective_order(g, p);
  std::optional<MinorCertificate> worst;
  const std::size_t n = g.matrix.rows();
  for (unsigned r = 1; r <= order; ++r) {
    std::vector<std::size_t> idx = first_combination(r);
    do {
      MinorCertificate c = evaluate_minor(g, idx, idx);
      if (c.sign == SignClass::Negative) keep_min(worst, std::move(c));
    } while (next_combination(idx, n));
  }
  return worst;
}

json to_json(const MinorCertificate& c) {
  return json{{"rows", c.rows},
              {"cols", c.cols},
              {"det", to_decimal(c.det_value)},
              {"error_bound", to_decimal(c.error_bound, 6)},
              {"sign", to_string(c.sign)},
              {"principal", c.principal}};
}

json to_json(const TnReport& r) {
  json out{{"schema", 1},
           {"order", r.order},
           {"verdict", to_string(r.verdict)},
           {"minors_evaluated", r.minors_evaluated}};
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return out;
}

}  // namespace polyalab
