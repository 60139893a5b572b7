#include <sstream>

#include "polyalab/lab.hpp"

namespace polyalab {

using nlohmann::json;

namespace {

json decimals(const std::vector<Float>& v) {
  json a = json::array();
  for (const Float& x : v) a.push_back(to_decimal(x));
  return a;
}

json opt_decimal(const std::optional<Float>& v) { return v ? json(to_decimal(*v)) : json(nullptr); }

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

json to_json(const SweepRow& r) {
  json out{{"exponent", to_decimal(r.exponent)},
           {"classification", to_string(r.classification)},
           {"shift_or_scale", opt_decimal(r.shift_or_scale)},
           {"xs", decimals(r.xs)},
           {"ys", decimals(r.ys)}};
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json to_json(const PowerSweepReport& r) {
  json out{{"schema", 1}, {"kind", r.kind}, {"p", r.p}};
  out["base"] = r.base ? to_json(*r.base) : json(nullptr);
  json rows = json::array();
  for (const SweepRow& row : r.rows) rows.push_back(to_json(row));
  out["rows"] = rows;
  return out;
}

std::string to_csv(const PowerSweepReport& r) {
  std::ostringstream os;
  os << "exponent,classification,shift_or_scale,witness_rows,witness_cols,det_value\n";
  for (const SweepRow& row : r.rows) {
    os << to_decimal(row.exponent) << ',' << to_string(row.classification) << ','
       << (row.shift_or_scale ? to_decimal(*row.shift_or_scale) : "") << ',';
    if (row.witness)
      os << join(row.witness->rows) << ',' << join(row.witness->cols) << ','
         << to_decimal(row.witness->det_value);
    else
      os << ",,";
    os << '\n';
  }
  return os.str();
}

json to_json(const RecoveryResult& r) {
  return json{{"schema", 1},
              {"alpha", decimals(r.recovered.alpha())},
              {"residual", to_decimal(r.residual, 6)}};
}

json to_json(const SearchResult& r) {
  json out{{"schema", 1},
           {"status", to_string(r.status)},
           {"report", to_json(r.report)},
           {"xs", decimals(r.xs)},
           {"ys", decimals(r.ys)},
           {"grids_searched", r.grids_searched},
           {"minors_evaluated", r.minors_evaluated},
           {"budget_exhausted", r.budget_exhausted}};
  out["base_report"] = r.base_report ? to_json(*r.base_report) : json(nullptr);
  return out;
}

json to_json(const FalsifyOutcome& r, const Preserver& f, BatteryClass cls) {
  json out{{"schema", 1},
           {"preserver", f.describe()},
           {"class", to_string(cls)},
           {"minors_evaluated", r.minors_evaluated},
           {"budget_exhausted", r.budget_exhausted}};
  if (r.counterexample) {
    const Counterexample& c = *r.counterexample;
    out["counterexample"] = json{{"kernel", to_json(c.base)},
                                 {"xs", decimals(c.xs)},
                                 {"ys", decimals(c.ys)},
                                 {"report", to_json(c.report)},
                                 {"base_report", to_json(c.base_report)}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

json to_json(const APPowerResult& r) {
  return json{{"schema", 1},
              {"alpha", decimals(r.params.alpha())},
              {"normalization", to_decimal(r.normalization)},
              {"residual", to_decimal(r.residual, 6)},
              {"verification", to_json(r.verification)}};
}

}  // namespace polyalab
