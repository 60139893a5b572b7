// polyalab command-line front end.
#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "polyalab/lab.hpp"

using namespace polyalab;
using nlohmann::json;

namespace {

struct RunConfig {
  int precision = 0;  // 0: environment or library default
  std::string tol = "1e-10";
  std::uint64_t budget = kDefaultMinorBudget;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

std::vector<Float> parse_list(const std::string& text) {
  std::vector<Float> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw Error(ErrorKind::Parse, "empty entry in list '" + text + "'");
    v.push_back(parse_float(item));
  }
  if (v.empty()) throw Error(ErrorKind::Parse, "empty list");
  return v;
}

class Output {
 public:
  explicit Output(const RunConfig& cfg) : cfg_(cfg) {}

  // Writes the formatted result to --out or stdout. `summary` goes to stdout
  // when the result itself went to a file.
  void emit(const json& j, const std::string& csv, const std::string& table,
            const std::string& summary = "") {
    std::string body;
    if (cfg_.format == "json")
      body = j.dump(2) + "\n";
    else if (cfg_.format == "csv")
      body = csv;
    else
      body = table;
    if (cfg_.out.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::Precondition, "cannot write " + cfg_.out);
    f << body;
    std::cout << (summary.empty() ? table : summary);
  }

 private:
  const RunConfig& cfg_;
};

std::string join_idx(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string report_table(const TnReport& r) {
  std::ostringstream os;
  os << "verdict " << to_string(r.verdict) << "\norder " << r.order << "\nminors " << r.minors_evaluated
     << "\n";
  if (r.witness)
    os << "witness rows " << join_idx(r.witness->rows) << " cols " << join_idx(r.witness->cols)
       << " det " << to_decimal(r.witness->det_value) << " +- "
       << to_decimal(r.witness->error_bound, 6) << "\n";
  return os.str();
}

std::string report_csv(const TnReport& r) {
  std::ostringstream os;
  os << "verdict,order,minors_evaluated,witness_rows,witness_cols,det_value,error_bound\n"
     << to_string(r.verdict) << ',' << r.order << ',' << r.minors_evaluated << ',';
  if (r.witness)
    os << join_idx(r.witness->rows) << ',' << join_idx(r.witness->cols) << ','
       << to_decimal(r.witness->det_value) << ',' << to_decimal(r.witness->error_bound, 6);
  else
    os << ",,,";
  os << "\n";
  return os.str();
}

std::string sweep_table(const PowerSweepReport& r) {
  std::ostringstream os;
  os << r.kind << " p=" << r.p << "\n";
  for (const SweepRow& row : r.rows) {
    os << "  " << to_decimal(row.exponent, 6) << "  " << to_string(row.classification);
    if (row.shift_or_scale) os << "  at " << to_decimal(*row.shift_or_scale, 8);
    if (row.witness) os << "  det " << to_decimal(row.witness->det_value, 6);
    if (!row.note.empty()) os << "  (" << row.note << ")";
    os << "\n";
  }
  return os.str();
}

Preserver parse_preserver(const std::string& text) {
  static const std::regex re(R"(\s*([a-z-]+)\s*\(([^)]*)\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw Error(ErrorKind::Parse, "expected a preserver like power(1,2), got '" + text + "'");
  const std::string kind = m[1];
  const std::vector<Float> args = parse_list(m[2]);
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw Error(ErrorKind::Parse, kind + " takes " + std::to_string(n) + " arguments");
  };
  if (kind == "power") {
    need(2);
    return Preserver::power(args[0], args[1]);
  }
  if (kind == "constant") {
    need(1);
    return Preserver::constant(args[0]);
  }
  if (kind == "indicator-positive") {
    need(1);
    return Preserver::indicator_positive(args[0]);
  }
  if (kind == "affine") {
    need(2);
    return Preserver::affine(args[0], args[1]);
  }
  throw Error(ErrorKind::Parse, "unknown preserver '" + kind + "'");
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InconsistentInput:
    case ErrorKind::DegenerateInput:
    case ErrorKind::RequiresDistinct:
    case ErrorKind::Sampling:
    case ErrorKind::BudgetExceeded:
      return 1;
    default:
      return 2;
  }
}

void apply_precision(const RunConfig& cfg) {
  if (cfg.precision > 0) {
    set_precision_bits(static_cast<unsigned>(cfg.precision));
    return;
  }
  if (const char* env = std::getenv("POLYALAB_PRECISION")) {
    try {
      set_precision_bits(static_cast<unsigned>(std::stoul(env)));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, std::string("POLYALAB_PRECISION is not an integer: ") + env);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total positivity and Polya frequency lab"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--precision", cfg.precision, "working precision in bits (>= 64)")->check(CLI::Range(64, 1 << 20));
  app.add_option("--tol", cfg.tol, "tolerance for recovery residuals");
  app.add_option("--budget", cfg.budget, "minor-evaluation cap")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed (accepted; no subcommand is randomized)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", cfg.out, "write the result to FILE");
  app.fallthrough();

  int status = 0;
  Output out(cfg);
  // Subcommands record their action; it runs after parsing so that the
  // precision flag is in effect before any number is read.
  std::function<void()> action;
  auto on = [&action](CLI::App* c, std::function<void()> f) {
    c->callback([&action, f] { action = f; });
  };

  // eval
  std::string spec_text, x_text, xs_text, ys_text;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a kernel at points");
  eval_cmd->add_option("spec", spec_text, "kernel JSON")->required();
  eval_cmd->add_option("--x", x_text, "comma-separated points")->required();
  on(eval_cmd, [&] {
    const KernelSpec k = kernel_from_string(spec_text);
    json vals = json::array();
    std::ostringstream csv, table;
    csv << "x,value,error_bound\n";
    for (const Float& x : parse_list(x_text)) {
      EvalResult r = eval(k, x);
      const std::string v = r.unbounded ? "inf" : to_decimal(r.value);
      vals.push_back({{"x", to_decimal(x)}, {"value", v}, {"error_bound", to_decimal(r.abs_error_bound, 6)}});
      csv << to_decimal(x) << ',' << v << ',' << to_decimal(r.abs_error_bound, 6) << "\n";
      table << to_decimal(x, 12) << "  " << v << "  " << to_decimal(r.abs_error_bound, 6) << "\n";
    }
    out.emit(json{{"schema", 1}, {"kernel", to_json(k)}, {"values", vals}}, csv.str(), table.str());
  });

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "sample K(x_i - y_j) on grids");
  sample_cmd->add_option("spec", spec_text, "kernel JSON")->required();
  sample_cmd->add_option("--xs", xs_text)->required();
  sample_cmd->add_option("--ys", ys_text)->required();
  on(sample_cmd, [&] {
    GridSample g = sample(kernel_from_string(spec_text), parse_list(xs_text), parse_list(ys_text));
    json mat = json::array(), err = json::array();
    std::ostringstream csv, table;
    for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
      json row = json::array(), erow = json::array();
      for (std::size_t j = 0; j < g.matrix.cols(); ++j) {
        row.push_back(to_decimal(g.matrix(i, j)));
        erow.push_back(to_decimal(g.errors(i, j), 6));
        csv << (j ? "," : "") << to_decimal(g.matrix(i, j));
        table << (j ? "  " : "") << to_decimal(g.matrix(i, j), 12);
      }
      csv << "\n";
      table << "\n";
      mat.push_back(row);
      err.push_back(erow);
    }
    out.emit(json{{"schema", 1}, {"matrix", mat}, {"errors", err}}, csv.str(), table.str());
  });

  // tncheck
  unsigned order = kFullOrder;
  bool want_tp = false, fekete = false;
  auto* tn_cmd = app.add_subcommand("tncheck", "check total nonnegativity or positivity");
  tn_cmd->add_option("spec", spec_text, "kernel JSON")->required();
  tn_cmd->add_option("--xs", xs_text)->required();
  tn_cmd->add_option("--ys", ys_text)->required();
  tn_cmd->add_option("--p", order, "order (0 = full)");
  tn_cmd->add_flag("--tp", want_tp, "check total positivity");
  tn_cmd->add_flag("--fekete", fekete, "contiguous minors only (full TP)");
  on(tn_cmd, [&] {
    GridSample g = sample(kernel_from_string(spec_text), parse_list(xs_text), parse_list(ys_text));
    TnReport r = want_tp || fekete ? check_tp(g, order, fekete, cfg.budget) : check_tn(g, order, cfg.budget);
    out.emit(to_json(r), report_csv(r), report_table(r));
    if (r.verdict == Verdict::NotTN || r.verdict == Verdict::NotTP) status = 1;
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "power-threshold sweeps");
  sweep_cmd->require_subcommand(1);
  unsigned sp = 3;
  std::string exps_text, q_text = "1", r_text = "1", ds_text;
  unsigned coarse = 200, depth = 40;
  auto add_grids = [&](CLI::App* c) {
    c->add_option("--p", sp, "order")->check(CLI::PositiveNumber);
    c->add_option("--xs", xs_text, "explicit row grid");
    c->add_option("--ys", ys_text, "explicit column grid");
  };
  auto grids = [&] {
    std::pair<std::vector<Float>, std::vector<Float>> g;
    if (!xs_text.empty()) g.first = parse_list(xs_text);
    if (!ys_text.empty()) g.second = parse_list(ys_text);
    if (g.first.size() != g.second.size())
      throw Error(ErrorKind::Parse, "--xs and --ys must be given together with equal lengths");
    return g;
  };
  auto emit_sweep = [&](const PowerSweepReport& r) {
    out.emit(to_json(r), to_csv(r), sweep_table(r), sweep_table(r));
  };
  auto* karlin_cmd = sweep_cmd->add_subcommand("karlin", "shifted powers of Omega(q, r)");
  add_grids(karlin_cmd);
  karlin_cmd->add_option("--exponents", exps_text)->required();
  karlin_cmd->add_option("--q", q_text);
  karlin_cmd->add_option("--r", r_text);
  karlin_cmd->add_option("--coarse", coarse)->check(CLI::PositiveNumber);
  karlin_cmd->add_option("--depth", depth);
  on(karlin_cmd, [&] {
    PowerSweepConfig c = karlin_config(parse_float(q_text), parse_float(r_text), sp, parse_list(exps_text));
    std::tie(c.xs, c.ys) = grids();
    c.shift_search->coarse = coarse;
    c.shift_search->refine_depth = depth;
    c.budget = cfg.budget;
    emit_sweep(karlin_sweep(c));
  });
  auto* wallis_cmd = sweep_cmd->add_subcommand("wallis", "scaled powers of the Wallis kernel");
  add_grids(wallis_cmd);
  wallis_cmd->add_option("--exponents", exps_text)->required();
  wallis_cmd->add_option("--depth", depth);
  on(wallis_cmd, [&] {
    PowerSweepConfig c = wallis_config(sp, parse_list(exps_text));
    std::tie(c.xs, c.ys) = grids();
    c.shift_search->refine_depth = depth;
    c.budget = cfg.budget;
    emit_sweep(wallis_sweep(c));
  });
  auto* gamma_cmd = sweep_cmd->add_subcommand("gamma", "gamma densities");
  add_grids(gamma_cmd);
  gamma_cmd->add_option("--exponents", exps_text)->required();
  on(gamma_cmd, [&] {
    auto [xs, ys] = grids();
    emit_sweep(gamma_sweep(parse_list(exps_text), sp, xs, ys));
  });
  auto* lambda_cmd = sweep_cmd->add_subcommand("lambda-d", "the lambda_d family");
  add_grids(lambda_cmd);
  lambda_cmd->add_option("--ds", ds_text)->required();
  on(lambda_cmd, [&] {
    auto [xs, ys] = grids();
    emit_sweep(lambda_d_boundary(parse_list(ds_text), sp, xs, ys));
  });

  // recover
  auto* rec_cmd = app.add_subcommand("recover", "recover parameters");
  rec_cmd->require_subcommand(1);
  std::string data_text;
  unsigned m = 0;
  auto emit_recovery = [&](const RecoveryResult& r, const std::vector<Float>& data) {
    std::ostringstream csv, table;
    csv << "alpha\n";
    for (const Float& a : r.recovered.alpha()) {
      csv << to_decimal(a) << "\n";
      table << to_decimal(a, 20) << "\n";
    }
    table << "residual " << to_decimal(r.residual, 6) << "\n";
    out.emit(to_json(r), csv.str(), table.str());
    Float scale = 1;
    for (const Float& d : data) scale = std::max(scale, Float(abs(d)));
    if (r.residual > parse_float(cfg.tol) * scale) {
      std::cerr << "residual " << to_decimal(r.residual, 6) << " exceeds tolerance\n";
      status = 1;
    }
  };
  for (const char* mode : {"moments", "maclaurin"}) {
    auto* c = rec_cmd->add_subcommand(mode, std::string("from ") + mode);
    c->add_option("--data", data_text)->required();
    c->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    const std::string name = mode;
    on(c, [&, name] {
      const std::vector<Float> data = parse_list(data_text);
      emit_recovery(name == "moments" ? recover_from_moments(data, m) : recover_from_maclaurin(data, m), data);
    });
  }

  // hciz
  std::string a_text, b_text, hx_text;
  unsigned terms = 200;
  auto* hciz_cmd = app.add_subcommand("hciz", "HCIZ integral: determinant form or series");
  hciz_cmd->add_option("--a", a_text)->required();
  auto* b_opt = hciz_cmd->add_option("--b", b_text, "second spectrum (determinant form)");
  auto* x_opt = hciz_cmd->add_option("--x", hx_text, "rank-one argument (series form)");
  b_opt->excludes(x_opt);
  hciz_cmd->add_option("--terms", terms);
  on(hciz_cmd, [&] {
    if (b_text.empty() && hx_text.empty()) throw Error(ErrorKind::Parse, "hciz needs --b or --x");
    const std::vector<Float> a = parse_list(a_text);
    json j{{"schema", 1}};
    std::string v, e = "0";
    if (!b_text.empty()) {
      v = to_decimal(hciz_det(a, parse_list(b_text)));
      j["form"] = "determinant";
    } else {
      EvalResult r = hciz_series(a, parse_float(hx_text), terms);
      v = to_decimal(r.value);
      e = to_decimal(r.abs_error_bound, 6);
      j["form"] = "series";
      j["error_bound"] = e;
    }
    j["value"] = v;
    out.emit(j, "value,error_bound\n" + v + "," + e + "\n", v + "\n");
  });

  // falsify
  std::string preserver_text, class_text = "tn-grid";
  unsigned forder = 4;
  auto* fal_cmd = app.add_subcommand("falsify", "search the kernel battery for a counterexample");
  fal_cmd->add_option("preserver", preserver_text, "power(c,a) | constant(c) | indicator-positive(c) | affine(c0,c1)")->required();
  fal_cmd->add_option("--class", class_text)->check(CLI::IsMember({"pf-grid", "tn-grid", "one-sided-tn-grid"}));
  fal_cmd->add_option("--order", forder)->check(CLI::PositiveNumber);
  on(fal_cmd, [&] {
    const Preserver f = parse_preserver(preserver_text);
    const BatteryClass cls = battery_class_from_string(class_text);
    FalsifyOutcome r = falsify_preserver(f, cls, forder, cfg.budget);
    std::ostringstream table, csv;
    csv << "preserver,class,counterexample_kernel,witness_rows,witness_cols,det_value\n"
        << f.describe() << ',' << to_string(cls) << ',';
    if (r.counterexample) {
      const auto& w = *r.counterexample->report.witness;
      table << "counterexample " << r.counterexample->base.name() << "\n" << report_table(r.counterexample->report);
      csv << r.counterexample->base.name() << ',' << join_idx(w.rows) << ',' << join_idx(w.cols) << ','
          << to_decimal(w.det_value) << "\n";
      status = 1;
    } else {
      table << (r.budget_exhausted ? "budget exhausted, no counterexample\n" : "no counterexample\n");
      csv << ",,,\n";
    }
    out.emit(to_json(r, f, cls), csv.str(), table.str());
  });

  // search
  auto* search_cmd = app.add_subcommand("search", "witness searches");
  search_cmd->require_subcommand(1);
  std::string beta_text = "1", alpha_text, coeffs_text;
  unsigned k = 2, sorder = 5;
  auto emit_search = [&](const SearchResult& r) {
    out.emit(to_json(r), report_csv(r.report), std::string("status ") + to_string(r.status) + "\n" + report_table(r.report));
    if (r.status == SearchStatus::Witness) status = 1;
  };
  auto* mb_cmd = search_cmd->add_subcommand("mbeta", "negative minors of powers of M_beta");
  mb_cmd->add_option("--beta", beta_text);
  mb_cmd->add_option("--k", k)->check(CLI::PositiveNumber);
  mb_cmd->add_option("--p", sorder)->check(CLI::PositiveNumber);
  on(mb_cmd, [&] {
    SearchOptions opt;
    opt.budget = std::max<std::uint64_t>(cfg.budget, 1);
    emit_search(mbeta_power_test(parse_float(beta_text), k, sorder, opt));
  });
  auto* rig_cmd = search_cmd->add_subcommand("rigidity", "polynomials of a density");
  rig_cmd->add_option("--alpha", alpha_text)->required();
  rig_cmd->add_option("--coeffs", coeffs_text, "ascending coefficients")->required();
  rig_cmd->add_option("--order", sorder)->check(CLI::PositiveNumber);
  on(rig_cmd, [&] {
    SearchOptions opt;
    opt.budget = cfg.budget;
    emit_search(hw_poly_rigidity(ParamVector(parse_list(alpha_text)), parse_list(coeffs_text), sorder, opt));
  });

  // ap-power
  auto* ap_cmd = app.add_subcommand("ap-power", "parameters of a power of a density with AP rates");
  ap_cmd->add_option("--alpha", alpha_text)->required();
  ap_cmd->add_option("--k", k)->check(CLI::PositiveNumber);
  on(ap_cmd, [&] {
    APPowerResult r = arithmetic_progression_power(ParamVector(parse_list(alpha_text)), k);
    std::ostringstream csv, table;
    csv << "alpha\n";
    for (const Float& a : r.params.alpha()) {
      csv << to_decimal(a) << "\n";
      table << to_decimal(a, 20) << "\n";
    }
    table << "normalization " << to_decimal(r.normalization, 20) << "\nresidual "
          << to_decimal(r.residual, 6) << "\nverification " << to_string(r.verification.verdict) << "\n";
    out.emit(to_json(r), csv.str(), table.str());
  });

  try {
    app.parse(argc, argv);
    apply_precision(cfg);
    if (action) action();
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return status;
}
