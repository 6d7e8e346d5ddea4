// Copyright 2026 The dncbeta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dncbeta/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dncbeta/div.hpp"
#include "dncbeta/errors.hpp"
#include "dncbeta/oracle.hpp"
#include "dncbeta/series.hpp"
#include "dncbeta/special_functions.hpp"
#include "dncbeta/tables.hpp"

namespace dncbeta::cli {

namespace {

using divcdf::BetaEval;
using divcdf::CdfReport;
using divcdf::ErrorControls;
using divcdf::Method;
using series::DistParams;

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// number formatting

// 17 significant digits: round-trippable double precision, used for all
// JSON numerics.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest decimal that round-trips, used for CSV cells.
std::string shortest(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fmt_sci(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------
// minimal JSON output document (parsing is not needed here)

struct JsonValue {
  enum class Kind { object, array, leaf };
  Kind kind = Kind::leaf;
  std::string leaf;
  std::vector<std::pair<std::string, JsonValue>> fields;
  std::vector<JsonValue> items;

  static JsonValue object() {
    JsonValue v;
    v.kind = Kind::object;
    return v;
  }
  static JsonValue array() {
    JsonValue v;
    v.kind = Kind::array;
    return v;
  }
  static JsonValue number(double d) {
    JsonValue v;
    v.leaf = fmt17(d);
    return v;
  }
  static JsonValue number(std::size_t n) {
    JsonValue v;
    v.leaf = std::to_string(n);
    return v;
  }
  static JsonValue number(int n) {
    JsonValue v;
    v.leaf = std::to_string(n);
    return v;
  }
  static JsonValue boolean(bool b) {
    JsonValue v;
    v.leaf = b ? "true" : "false";
    return v;
  }
  static JsonValue string(const std::string& s) {
    JsonValue v;
    std::string escaped = "\"";
    for (char c : s) {
      switch (c) {
        case '"': escaped += "\\\""; break;
        case '\\': escaped += "\\\\"; break;
        case '\n': escaped += "\\n"; break;
        case '\t': escaped += "\\t"; break;
        case '\r': escaped += "\\r"; break;
        default: escaped += c;
      }
    }
    escaped += '"';
    v.leaf = escaped;
    return v;
  }

  JsonValue& add(const std::string& key, JsonValue value) {
    fields.emplace_back(key, std::move(value));
    return *this;
  }
  JsonValue& push(JsonValue value) {
    items.push_back(std::move(value));
    return *this;
  }

  void render(std::ostream& out) const {
    switch (kind) {
      case Kind::leaf:
        out << leaf;
        break;
      case Kind::object: {
        out << '{';
        bool first = true;
        for (const auto& [key, value] : fields) {
          if (!first) out << ',';
          first = false;
          out << '"' << key << "\":";
          value.render(out);
        }
        out << '}';
        break;
      }
      case Kind::array: {
        out << '[';
        bool first = true;
        for (const auto& value : items) {
          if (!first) out << ',';
          first = false;
          value.render(out);
        }
        out << ']';
        break;
      }
    }
  }
};

// ---------------------------------------------------------------------------
// shared option plumbing

struct ParamOpts {
  bool shape_form = false;
  double n1 = 0, n2 = 0, lambda1 = 0, lambda2 = 0;
  double a = 0, b = 0, delta1 = 0, delta2 = 0;
};

void add_param_options(CLI::App* cmd, ParamOpts& opts) {
  cmd->add_option("--n1", opts.n1, "numerator degrees of freedom");
  cmd->add_option("--n2", opts.n2, "denominator degrees of freedom");
  cmd->add_option("--lambda1", opts.lambda1, "numerator non-centrality");
  cmd->add_option("--lambda2", opts.lambda2, "denominator non-centrality");
  cmd->add_flag("--shape-form", opts.shape_form,
                "read parameters as shapes (--a --b --delta1 --delta2)");
  cmd->add_option("--a", opts.a, "first shape (requires --shape-form)");
  cmd->add_option("--b", opts.b, "second shape (requires --shape-form)");
  cmd->add_option("--delta1", opts.delta1,
                  "half non-centrality (requires --shape-form)");
  cmd->add_option("--delta2", opts.delta2,
                  "half non-centrality (requires --shape-form)");
}

DistParams resolve_params(const CLI::App* cmd, const ParamOpts& opts,
                          double x) {
  if (opts.shape_form) {
    if (cmd->count("--n1") || cmd->count("--n2") || cmd->count("--lambda1") ||
        cmd->count("--lambda2")) {
      throw std::domain_error(
          "--shape-form conflicts with --n1/--n2/--lambda1/--lambda2");
    }
    if (!cmd->count("--a") || !cmd->count("--b")) {
      throw std::domain_error("--shape-form requires --a and --b");
    }
    return DistParams{opts.a, opts.b, opts.delta1, opts.delta2, x};
  }
  if (cmd->count("--a") || cmd->count("--b") || cmd->count("--delta1") ||
      cmd->count("--delta2")) {
    throw std::domain_error("--a/--b/--delta1/--delta2 require --shape-form");
  }
  if (!cmd->count("--n1") || !cmd->count("--n2")) {
    throw std::domain_error("--n1 and --n2 are required");
  }
  return DistParams::from_degrees(opts.n1, opts.n2, opts.lambda1, opts.lambda2,
                                  x);
}

double env_default(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value > 0.0)) {
    throw std::domain_error(std::string(name) + " is not a positive number");
  }
  return value;
}

Method parse_single_method(const std::string& name) {
  return name == "div2" ? Method::div2 : Method::div1;
}

// ---------------------------------------------------------------------------
// CDF report serialization

struct CdfInvocation {
  std::string command;
  ParamOpts opts;
  DistParams params{};
  std::optional<double> f;
  ErrorControls controls;
  std::vector<CdfReport> reports;
  std::vector<std::optional<oracle::ErrorReport>> comparisons;
};

JsonValue params_json(const CdfInvocation& inv) {
  JsonValue p = JsonValue::object();
  if (!inv.opts.shape_form) {
    p.add("n1", JsonValue::number(inv.opts.n1));
    p.add("n2", JsonValue::number(inv.opts.n2));
    p.add("lambda1", JsonValue::number(inv.opts.lambda1));
    p.add("lambda2", JsonValue::number(inv.opts.lambda2));
  }
  p.add("a", JsonValue::number(inv.params.a));
  p.add("b", JsonValue::number(inv.params.b));
  p.add("delta1", JsonValue::number(inv.params.delta1));
  p.add("delta2", JsonValue::number(inv.params.delta2));
  if (inv.f) p.add("f", JsonValue::number(*inv.f));
  p.add("x", JsonValue::number(inv.params.x));
  return p;
}

JsonValue report_json(const CdfReport& report,
                      const std::optional<oracle::ErrorReport>& cmp) {
  JsonValue r = JsonValue::object();
  r.add("method", JsonValue::string(divcdf::to_string(report.method)));
  r.add("p_hat", JsonValue::number(report.p_hat));
  r.add("upper_bound", JsonValue::number(report.upper_bound));
  r.add("control_line", JsonValue::number(report.control_line));
  r.add("boundary", JsonValue::number(report.boundary));
  r.add("item_count", JsonValue::number(report.item_count));
  JsonValue lines = JsonValue::array();
  for (const auto& line : report.lines) {
    JsonValue l = JsonValue::object();
    l.add("index", JsonValue::number(line.index));
    l.add("trunc_count", JsonValue::number(line.trunc_count));
    l.add("partial_sum", JsonValue::number(line.partial_sum));
    l.add("residual_bound", JsonValue::number(line.residual_bound));
    lines.push(std::move(l));
  }
  r.add("lines", std::move(lines));
  if (cmp) {
    JsonValue o = JsonValue::object();
    o.add("p_oracle", JsonValue::number(cmp->p_oracle));
    o.add("p_method", JsonValue::number(cmp->p_method));
    o.add("error", JsonValue::number(cmp->error));
    o.add("upper_bound", JsonValue::number(cmp->upper_bound));
    o.add("control_line", JsonValue::number(cmp->control_line));
    o.add("bound_respected", JsonValue::boolean(cmp->bound_respected));
    r.add("oracle", std::move(o));
  }
  return r;
}

void print_cdf_json(const CdfInvocation& inv, std::ostream& out) {
  JsonValue doc = JsonValue::object();
  doc.add("schema_version", JsonValue::string("1"));
  doc.add("command", JsonValue::string(inv.command));
  doc.add("params", params_json(inv));
  JsonValue controls = JsonValue::object();
  controls.add("eps_line", JsonValue::number(inv.controls.eps_line));
  controls.add("eps_tail", JsonValue::number(inv.controls.eps_tail));
  doc.add("controls", std::move(controls));
  JsonValue results = JsonValue::array();
  for (std::size_t i = 0; i < inv.reports.size(); ++i) {
    results.push(report_json(inv.reports[i], inv.comparisons[i]));
  }
  doc.add("results", std::move(results));
  doc.render(out);
  out << '\n';
}

void print_cdf_csv(const CdfInvocation& inv, std::ostream& out) {
  const bool with_oracle =
      !inv.comparisons.empty() && inv.comparisons.front().has_value();
  out << "method,p_hat,upper_bound,control_line,boundary,item_count";
  if (with_oracle) out << ",p_oracle,error,bound_respected";
  out << '\n';
  for (std::size_t i = 0; i < inv.reports.size(); ++i) {
    const auto& r = inv.reports[i];
    out << divcdf::to_string(r.method) << ',' << shortest(r.p_hat) << ','
        << shortest(r.upper_bound) << ',' << shortest(r.control_line) << ','
        << r.boundary << ',' << r.item_count;
    if (with_oracle && inv.comparisons[i]) {
      const auto& c = *inv.comparisons[i];
      out << ',' << shortest(c.p_oracle) << ',' << shortest(c.error) << ','
          << (c.bound_respected ? "true" : "false");
    }
    out << '\n';
  }
}

void print_cdf_plain(const CdfInvocation& inv, std::ostream& out) {
  out << "params        a=" << fmt17(inv.params.a)
      << " b=" << fmt17(inv.params.b)
      << " delta1=" << fmt17(inv.params.delta1)
      << " delta2=" << fmt17(inv.params.delta2) << '\n';
  out << "controls      eps_line=" << fmt17(inv.controls.eps_line)
      << " eps_tail=" << fmt17(inv.controls.eps_tail) << '\n';
  for (std::size_t i = 0; i < inv.reports.size(); ++i) {
    const auto& r = inv.reports[i];
    if (i > 0) out << '\n';
    out << "method        " << divcdf::to_string(r.method) << '\n';
    if (inv.f) out << "f             " << fmt17(*inv.f) << '\n';
    out << "x             " << fmt17(inv.params.x) << '\n';
    out << "p_hat         " << fmt17(r.p_hat) << '\n';
    out << "upper_bound   " << fmt17(r.upper_bound) << '\n';
    out << "control_line  " << fmt17(r.control_line) << '\n';
    out << "boundary      " << r.boundary << '\n';
    out << "item_count    " << r.item_count << '\n';
    if (inv.comparisons[i]) {
      const auto& c = *inv.comparisons[i];
      out << "p_oracle      " << fmt17(c.p_oracle) << '\n';
      out << "error         " << fmt17(c.error) << '\n';
      out << "bound_respected " << (c.bound_respected ? "true" : "false")
          << '\n';
    }
  }
}

void print_cdf(const CdfInvocation& inv, const std::string& format,
               std::ostream& out) {
  if (format == "json") {
    print_cdf_json(inv, out);
  } else if (format == "csv") {
    print_cdf_csv(inv, out);
  } else {
    print_cdf_plain(inv, out);
  }
}

// ---------------------------------------------------------------------------
// subcommand states

struct CdfArgs {
  ParamOpts params;
  double x = 0;
  double f = 0;
  std::string method = "div1";
  double eps_line = 1e-7;
  double eps_tail = 1e-5;
  std::string format = "plain";
  bool compare_oracle = false;
  bool accel = false;
};

void add_cdf_common(CLI::App* cmd, CdfArgs& args) {
  add_param_options(cmd, args.params);
  cmd->add_option("--method", args.method, "div1, div2 or both")
      ->check(CLI::IsMember({"div1", "div2", "both"}));
  cmd->add_option("--eps-line", args.eps_line,
                  "per-line truncation budget (default 1e-7)");
  cmd->add_option("--eps-tail", args.eps_tail,
                  "dropped-lines budget (default 1e-5)");
  cmd->add_option("--format", args.format, "json, csv or plain")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  cmd->add_flag("--compare-oracle", args.compare_oracle,
                "also run the direct-summation reference");
  cmd->add_flag("--accel", args.accel,
                "evaluate incomplete betas by recurrence along lines");
}

int run_cdf(const CLI::App* cmd, CdfArgs& args, bool f_form,
            std::ostream& out) {
  CdfInvocation inv;
  inv.command = f_form ? "cdf-f" : "cdf-beta";
  inv.opts = args.params;
  inv.controls = ErrorControls{args.eps_line, args.eps_tail};
  const BetaEval eval =
      args.accel ? BetaEval::recurrence : BetaEval::direct;

  double x = args.x;
  if (f_form) {
    if (!std::isfinite(args.f)) {
      throw std::domain_error("--f must be finite");
    }
    inv.f = args.f;
  }
  inv.params = resolve_params(cmd, args.params, x);
  if (f_form) {
    inv.params.x =
        divcdf::f_to_x(2.0 * inv.params.a, 2.0 * inv.params.b, args.f);
  }

  std::vector<Method> methods;
  if (args.method == "both") {
    methods = {Method::div1, Method::div2};
  } else {
    methods = {parse_single_method(args.method)};
  }
  for (Method m : methods) {
    inv.reports.push_back(divcdf::beta_cdf(inv.params, m, inv.controls, eval));
    if (args.compare_oracle) {
      inv.comparisons.push_back(oracle::compare(inv.params, inv.controls, m));
    } else {
      inv.comparisons.push_back(std::nullopt);
    }
  }
  print_cdf(inv, args.format, out);
  return 0;
}

// ---------------------------------------------------------------------------
// matrix dump

struct DumpArgs {
  ParamOpts params;
  double x = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string out_path;
  std::string format = "plain";
  bool accel = false;
};

int run_matrix_dump(const CLI::App* cmd, DumpArgs& args, std::ostream& out) {
  const DistParams params = resolve_params(cmd, args.params, args.x);
  series::SlabOptions options;
  options.use_recurrence = args.accel;
  const series::MatrixSlab slab =
      series::matrix_slab(params, args.rows, args.cols, options);

  std::ofstream file(args.out_path);
  if (!file) {
    throw io_error("cannot open " + args.out_path + " for writing");
  }
  file << "j\\l";
  for (std::size_t l = 0; l < slab.cols; ++l) file << ',' << l;
  file << '\n';
  for (std::size_t j = 0; j < slab.rows; ++j) {
    file << j;
    for (std::size_t l = 0; l < slab.cols; ++l) {
      file << ',' << shortest(slab.at(j, l));
    }
    file << '\n';
  }
  file.flush();
  if (!file) {
    throw io_error("failed while writing " + args.out_path);
  }

  double total = 0.0;
  double max_item = 0.0;
  std::size_t max_j = 0, max_l = 0;
  for (std::size_t j = 0; j < slab.rows; ++j) {
    for (std::size_t l = 0; l < slab.cols; ++l) {
      const double v = slab.at(j, l);
      total += v;
      if (v > max_item) {
        max_item = v;
        max_j = j;
        max_l = l;
      }
    }
  }

  if (args.format == "json") {
    JsonValue doc = JsonValue::object();
    doc.add("schema_version", JsonValue::string("1"));
    doc.add("command", JsonValue::string("matrix-dump"));
    JsonValue p = JsonValue::object();
    p.add("a", JsonValue::number(params.a));
    p.add("b", JsonValue::number(params.b));
    p.add("delta1", JsonValue::number(params.delta1));
    p.add("delta2", JsonValue::number(params.delta2));
    p.add("x", JsonValue::number(params.x));
    p.add("rows", JsonValue::number(slab.rows));
    p.add("cols", JsonValue::number(slab.cols));
    doc.add("params", std::move(p));
    doc.add("out", JsonValue::string(args.out_path));
    JsonValue s = JsonValue::object();
    s.add("total", JsonValue::number(total));
    s.add("max_item", JsonValue::number(max_item));
    s.add("max_row", JsonValue::number(max_j));
    s.add("max_col", JsonValue::number(max_l));
    doc.add("slab", std::move(s));
    doc.render(out);
    out << '\n';
  } else {
    out << "rows      " << slab.rows << '\n';
    out << "cols      " << slab.cols << '\n';
    out << "out       " << args.out_path << '\n';
    out << "total     " << fmt17(total) << '\n';
    out << "max_item  " << fmt17(max_item) << " at j=" << max_j
        << " l=" << max_l << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// tables

struct TablesArgs {
  int table = 0;
  int bench_reps = 80;
  std::string format = "plain";
  double lambda1 = 0;
  double lambda2 = 0;
};

struct LambdaOverride {
  bool active = false;
  double lambda1 = 0;
  double lambda2 = 0;
};

JsonValue inputs_json(double n1, double n2, double l1, double l2, double x) {
  JsonValue v = JsonValue::object();
  v.add("n1", JsonValue::number(n1));
  v.add("n2", JsonValue::number(n2));
  v.add("lambda1", JsonValue::number(l1));
  v.add("lambda2", JsonValue::number(l2));
  v.add("x", JsonValue::number(x));
  return v;
}

void print_metric(std::ostream& out, const char* name,
                  const std::string& computed, const std::string& reference) {
  out << "  " << std::left << std::setw(10) << name << std::setw(16)
      << computed << "ref " << reference << '\n';
}

int run_table1(const TablesArgs& args, const LambdaOverride& ovr,
               std::ostream& out) {
  JsonValue rows = JsonValue::array();
  int case_id = 0;
  for (const auto& ref : tables::kTable1) {
    ++case_id;
    tables::BetaCaseRef inputs = ref;
    if (ovr.active) {
      inputs.lambda1 = ovr.lambda1;
      inputs.lambda2 = ovr.lambda2;
    }
    const auto c = tables::compute_beta_case(inputs);
    if (args.format == "json") {
      JsonValue row = JsonValue::object();
      row.add("inputs", inputs_json(inputs.n1, inputs.n2, inputs.lambda1,
                                    inputs.lambda2, inputs.x));
      JsonValue comp = JsonValue::object();
      comp.add("p0", JsonValue::number(c.p0));
      comp.add("p1", JsonValue::number(c.p1));
      comp.add("error1", JsonValue::number(c.err1));
      comp.add("ub1", JsonValue::number(c.ub1));
      comp.add("cl1", JsonValue::number(c.cl1));
      comp.add("p2", JsonValue::number(c.p2));
      comp.add("error2", JsonValue::number(c.err2));
      comp.add("ub2", JsonValue::number(c.ub2));
      comp.add("cl2", JsonValue::number(c.cl2));
      comp.add("items1", JsonValue::number(c.items1));
      comp.add("items2", JsonValue::number(c.items2));
      row.add("computed", std::move(comp));
      JsonValue refv = JsonValue::object();
      refv.add("p0", JsonValue::number(ref.p0));
      refv.add("p1", JsonValue::number(ref.p1));
      refv.add("error1", JsonValue::number(ref.err1));
      refv.add("ub1", JsonValue::number(ref.ub1));
      refv.add("cl1", JsonValue::number(ref.cl1));
      refv.add("p2", JsonValue::number(ref.p2));
      refv.add("error2", JsonValue::number(ref.err2));
      refv.add("ub2", JsonValue::number(ref.ub2));
      refv.add("cl2", JsonValue::number(ref.cl2));
      row.add("reference", std::move(refv));
      rows.push(std::move(row));
    } else {
      out << "case " << case_id << ": n1=" << inputs.n1 << " n2=" << inputs.n2
          << " lambda1=" << inputs.lambda1 << " lambda2=" << inputs.lambda2
          << " x=" << inputs.x << '\n';
      print_metric(out, "P0", fmt_fixed(c.p0, 7), fmt_fixed(ref.p0, 7));
      print_metric(out, "P1", fmt_fixed(c.p1, 7), fmt_fixed(ref.p1, 7));
      print_metric(out, "Error1", fmt_sci(c.err1), fmt_sci(ref.err1));
      print_metric(out, "UB1", fmt_sci(c.ub1), fmt_sci(ref.ub1));
      print_metric(out, "CL1", fmt_sci(c.cl1), fmt_sci(ref.cl1));
      print_metric(out, "P2", fmt_fixed(c.p2, 7), fmt_fixed(ref.p2, 7));
      print_metric(out, "Error2", fmt_sci(c.err2), fmt_sci(ref.err2));
      print_metric(out, "UB2", fmt_sci(c.ub2), fmt_sci(ref.ub2));
      print_metric(out, "CL2", fmt_sci(c.cl2), fmt_sci(ref.cl2));
    }
  }
  if (args.format == "json") {
    JsonValue doc = JsonValue::object();
    doc.add("schema_version", JsonValue::string("1"));
    doc.add("command", JsonValue::string("tables"));
    doc.add("table", JsonValue::number(1));
    doc.add("rows", std::move(rows));
    doc.render(out);
    out << '\n';
  }
  return 0;
}

int run_table2(const TablesArgs& args, const LambdaOverride& ovr,
               std::ostream& out) {
  JsonValue rows = JsonValue::array();
  int case_id = 0;
  for (const auto& ref : tables::kTable2) {
    ++case_id;
    tables::FCaseRef inputs = ref;
    if (ovr.active) {
      inputs.lambda1 = ovr.lambda1;
      inputs.lambda2 = ovr.lambda2;
    }
    const auto c = tables::compute_f_case(inputs);
    if (args.format == "json") {
      JsonValue row = JsonValue::object();
      JsonValue in = JsonValue::object();
      in.add("n1", JsonValue::number(inputs.n1));
      in.add("n2", JsonValue::number(inputs.n2));
      in.add("lambda1", JsonValue::number(inputs.lambda1));
      in.add("lambda2", JsonValue::number(inputs.lambda2));
      in.add("f", JsonValue::number(inputs.f));
      row.add("inputs", std::move(in));
      JsonValue comp = JsonValue::object();
      comp.add("p0", JsonValue::number(c.p0));
      comp.add("div1", JsonValue::number(c.div1));
      comp.add("error1", JsonValue::number(c.err1));
      row.add("computed", std::move(comp));
      JsonValue refv = JsonValue::object();
      refv.add("p0", JsonValue::number(ref.p0));
      refv.add("div1", JsonValue::number(ref.div1));
      refv.add("error1", JsonValue::number(ref.err1));
      refv.add("tiku", JsonValue::number(ref.tiku));
      refv.add("error2", JsonValue::number(ref.err2));
      row.add("reference", std::move(refv));
      rows.push(std::move(row));
    } else {
      out << "case " << case_id << ": n1=" << inputs.n1 << " n2=" << inputs.n2
          << " lambda1=" << inputs.lambda1 << " lambda2=" << inputs.lambda2
          << " f=" << inputs.f << '\n';
      print_metric(out, "P0", fmt_fixed(c.p0, 6), fmt_fixed(ref.p0, 6));
      print_metric(out, "DIV1", fmt_fixed(c.div1, 6), fmt_fixed(ref.div1, 6));
      print_metric(out, "Error1", fmt_sci(c.err1), fmt_sci(ref.err1));
      print_metric(out, "Tiku", "(reference only)", fmt_fixed(ref.tiku, 4));
      print_metric(out, "Error2", "(reference only)", fmt_sci(ref.err2));
    }
  }
  if (args.format == "json") {
    JsonValue doc = JsonValue::object();
    doc.add("schema_version", JsonValue::string("1"));
    doc.add("command", JsonValue::string("tables"));
    doc.add("table", JsonValue::number(2));
    doc.add("rows", std::move(rows));
    doc.render(out);
    out << '\n';
  }
  return 0;
}

int run_line_table(const TablesArgs& args, int table_id, std::ostream& out) {
  const Method method = table_id == 3 ? Method::div1 : Method::div2;
  const auto computed = tables::compute_line_table(method);
  const std::size_t ref_count =
      table_id == 3 ? tables::kTable3.size() : tables::kTable4.size();
  auto ref_at = [&](std::size_t i) -> const tables::LineRef& {
    return table_id == 3 ? tables::kTable3[i] : tables::kTable4[i];
  };

  if (args.format == "json") {
    JsonValue rows = JsonValue::array();
    for (std::size_t i = 0; i < computed.size(); ++i) {
      const auto& c = computed[i];
      JsonValue row = JsonValue::object();
      row.add("index", JsonValue::number(c.index));
      JsonValue comp = JsonValue::object();
      comp.add("count", JsonValue::number(c.count));
      comp.add("line_exact", JsonValue::number(c.line_exact));
      comp.add("line_trunc", JsonValue::number(c.line_trunc));
      comp.add("error", JsonValue::number(c.err));
      comp.add("bound", JsonValue::number(c.bound));
      row.add("computed", std::move(comp));
      if (i < ref_count) {
        const auto& r = ref_at(i);
        JsonValue refv = JsonValue::object();
        refv.add("count", JsonValue::number(r.count));
        refv.add("line_exact", JsonValue::number(r.line_exact));
        refv.add("line_trunc", JsonValue::number(r.line_trunc));
        refv.add("error", JsonValue::number(r.err));
        refv.add("bound", JsonValue::number(r.bound));
        row.add("reference", std::move(refv));
      }
      rows.push(std::move(row));
    }
    JsonValue doc = JsonValue::object();
    doc.add("schema_version", JsonValue::string("1"));
    doc.add("command", JsonValue::string("tables"));
    doc.add("table", JsonValue::number(table_id));
    doc.add("rows", std::move(rows));
    doc.render(out);
    out << '\n';
    return 0;
  }

  out << (table_id == 3 ? "row" : "column")
      << " diagnostics at n1=5 n2=7 lambda1=6.25 lambda2=0.25 x=0.3\n";
  out << "(reference counts are the published loop variable; the published\n"
         " bounds correspond to count+1 kept items, which is what `kept`\n"
         " reports)\n";
  out << "  idx  kept  ref  line_sum      ref         bound       ref\n";
  for (std::size_t i = 0; i < computed.size(); ++i) {
    const auto& c = computed[i];
    char buf[160];
    if (i < ref_count) {
      const auto& r = ref_at(i);
      std::snprintf(buf, sizeof buf,
                    "  %3zu  %4zu  %3d  %-12.6g  %-10.6g  %-10.3e  %-9.2e\n",
                    c.index, c.count, r.count, c.line_trunc, r.line_trunc,
                    c.bound, r.bound);
    } else {
      std::snprintf(buf, sizeof buf, "  %3zu  %4zu    -  %-12.6g\n", c.index,
                    c.count, c.line_trunc);
    }
    out << buf;
  }
  return 0;
}

int run_table5(const TablesArgs& args, std::ostream& out) {
  JsonValue rows = JsonValue::array();
  for (const auto& ref : tables::kTable5) {
    const auto c = tables::compute_controls_case(ref);
    if (args.format == "json") {
      JsonValue row = JsonValue::object();
      JsonValue in = JsonValue::object();
      in.add("eps_tail", JsonValue::number(ref.eps_tail));
      in.add("eps_line", JsonValue::number(ref.eps_line));
      row.add("inputs", std::move(in));
      JsonValue comp = JsonValue::object();
      comp.add("p", JsonValue::number(c.p));
      comp.add("error1", JsonValue::number(c.err));
      comp.add("ub1", JsonValue::number(c.ub));
      comp.add("cl1", JsonValue::number(c.cl));
      row.add("computed", std::move(comp));
      JsonValue refv = JsonValue::object();
      refv.add("p", JsonValue::number(ref.p));
      refv.add("error1", JsonValue::number(ref.err));
      refv.add("ub1", JsonValue::number(ref.ub));
      refv.add("cl1", JsonValue::number(ref.cl));
      row.add("reference", std::move(refv));
      rows.push(std::move(row));
    } else {
      out << "eps_tail=" << fmt_sci(ref.eps_tail, 1)
          << " eps_line=" << fmt_sci(ref.eps_line, 1) << '\n';
      print_metric(out, "P", fmt_fixed(c.p, 6), fmt_fixed(ref.p, 6));
      print_metric(out, "Error1", fmt_sci(c.err), fmt_sci(ref.err));
      print_metric(out, "UB1", fmt_sci(c.ub), fmt_sci(ref.ub));
      print_metric(out, "CL1", fmt_sci(c.cl), fmt_sci(ref.cl));
    }
  }
  if (args.format == "json") {
    JsonValue doc = JsonValue::object();
    doc.add("schema_version", JsonValue::string("1"));
    doc.add("command", JsonValue::string("tables"));
    doc.add("table", JsonValue::number(5));
    doc.add("rows", std::move(rows));
    doc.render(out);
    out << '\n';
  }
  return 0;
}

int run_table6(const TablesArgs& args, const LambdaOverride& ovr,
               std::ostream& out) {
  JsonValue rows = JsonValue::array();
  int case_id = 0;
  if (args.format != "json") {
    out << "wall-clock means over " << args.bench_reps
        << " reps; timings are machine-dependent and non-deterministic\n";
  }
  for (const auto& ref : tables::kTable6) {
    ++case_id;
    tables::SpeedRef inputs = ref;
    if (ovr.active) {
      inputs.lambda1 = ovr.lambda1;
      inputs.lambda2 = ovr.lambda2;
    }
    const auto c = tables::compute_speed_case(inputs, args.bench_reps);
    if (args.format == "json") {
      JsonValue row = JsonValue::object();
      row.add("inputs", inputs_json(inputs.n1, inputs.n2, inputs.lambda1,
                                    inputs.lambda2, inputs.x));
      JsonValue comp = JsonValue::object();
      comp.add("items1", JsonValue::number(c.items1));
      comp.add("items2", JsonValue::number(c.items2));
      comp.add("items_exact", JsonValue::number(c.items_exact));
      comp.add("sec1", JsonValue::number(c.sec1));
      comp.add("sec2", JsonValue::number(c.sec2));
      comp.add("sec_exact", JsonValue::number(c.sec_exact));
      row.add("computed", std::move(comp));
      JsonValue refv = JsonValue::object();
      refv.add("items1", JsonValue::number(ref.items1));
      refv.add("items2", JsonValue::number(ref.items2));
      refv.add("sec1", JsonValue::number(ref.sec1));
      refv.add("sec2", JsonValue::number(ref.sec2));
      refv.add("sec_exact", JsonValue::number(ref.sec_exact));
      row.add("reference", std::move(refv));
      rows.push(std::move(row));
    } else {
      out << "case " << case_id << ": n1=" << inputs.n1 << " n2=" << inputs.n2
          << " lambda1=" << inputs.lambda1 << " lambda2=" << inputs.lambda2
          << " x=" << inputs.x << '\n';
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "  items div1 %zu (ref %d)  div2 %zu (ref %d)  "
                    "exact-grid %zu\n",
                    c.items1, ref.items1, c.items2, ref.items2, c.items_exact);
      out << buf;
      std::snprintf(buf, sizeof buf,
                    "  sec   div1 %.2e (ref %.2e)  div2 %.2e (ref %.2e)  "
                    "exact %.2e (ref %.2e)\n",
                    c.sec1, ref.sec1, c.sec2, ref.sec2, c.sec_exact,
                    ref.sec_exact);
      out << buf;
    }
  }
  if (args.format == "json") {
    JsonValue doc = JsonValue::object();
    doc.add("schema_version", JsonValue::string("1"));
    doc.add("command", JsonValue::string("tables"));
    doc.add("table", JsonValue::number(6));
    doc.add("bench_reps", JsonValue::number(args.bench_reps));
    doc.add("deterministic", JsonValue::boolean(false));
    doc.add("rows", std::move(rows));
    doc.render(out);
    out << '\n';
  }
  return 0;
}

int run_tables(const CLI::App* cmd, TablesArgs& args, std::ostream& out) {
  LambdaOverride ovr;
  if (cmd->count("--lambda1") || cmd->count("--lambda2")) {
    if (args.table >= 3 && args.table <= 5) {
      throw std::domain_error(
          "--lambda1/--lambda2 overrides are not supported for tables 3-5");
    }
    ovr.active = true;
    ovr.lambda1 = cmd->count("--lambda1") ? args.lambda1 : 0.0;
    ovr.lambda2 = cmd->count("--lambda2") ? args.lambda2 : 0.0;
  }
  switch (args.table) {
    case 1:
      return run_table1(args, ovr, out);
    case 2:
      return run_table2(args, ovr, out);
    case 3:
    case 4:
      return run_line_table(args, args.table, out);
    case 5:
      return run_table5(args, out);
    case 6:
      return run_table6(args, ovr, out);
    default:
      throw std::domain_error("--table must be between 1 and 6");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"doubly non-central beta / F CDF evaluator"};
  app.require_subcommand(1);

  CdfArgs beta_args;
  CdfArgs f_args;
  DumpArgs dump_args;
  TablesArgs tables_args;

  try {
    beta_args.eps_line = env_default("DNCBETA_EPS_LINE", 1e-7);
    beta_args.eps_tail = env_default("DNCBETA_EPS_TAIL", 1e-5);
    f_args.eps_line = beta_args.eps_line;
    f_args.eps_tail = beta_args.eps_tail;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App* cdf_beta = app.add_subcommand(
      "cdf-beta", "CDF of the doubly non-central beta distribution");
  add_cdf_common(cdf_beta, beta_args);
  cdf_beta->add_option("--x", beta_args.x, "evaluation point")->required();

  CLI::App* cdf_f = app.add_subcommand(
      "cdf-f", "CDF of the doubly non-central F distribution");
  add_cdf_common(cdf_f, f_args);
  cdf_f->add_option("--f", f_args.f, "evaluation point")->required();

  CLI::App* dump = app.add_subcommand(
      "matrix-dump", "write a rectangular block of series items as CSV");
  add_param_options(dump, dump_args.params);
  dump->add_option("--x", dump_args.x, "evaluation point")->required();
  dump->add_option("--rows", dump_args.rows, "row count")->required();
  dump->add_option("--cols", dump_args.cols, "column count")->required();
  dump->add_option("--out", dump_args.out_path, "output CSV path")->required();
  dump->add_option("--format", dump_args.format, "metadata format")
      ->check(CLI::IsMember({"json", "plain"}));
  dump->add_flag("--accel", dump_args.accel,
                 "evaluate incomplete betas by recurrence along rows");

  CLI::App* tbl = app.add_subcommand(
      "tables", "recompute the bundled reference tables");
  tbl->add_option("--table", tables_args.table, "table id, 1-6")->required();
  tbl->add_option("--bench-reps", tables_args.bench_reps,
                  "timing repetitions for table 6 (default 80)");
  tbl->add_option("--format", tables_args.format, "json or plain")
      ->check(CLI::IsMember({"json", "plain"}));
  tbl->add_option("--lambda1", tables_args.lambda1,
                  "override every case's lambda1");
  tbl->add_option("--lambda2", tables_args.lambda2,
                  "override every case's lambda2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (cdf_beta->parsed()) return run_cdf(cdf_beta, beta_args, false, out);
    if (cdf_f->parsed()) return run_cdf(cdf_f, f_args, true, out);
    if (dump->parsed()) return run_matrix_dump(dump, dump_args, out);
    if (tbl->parsed()) return run_tables(tbl, tables_args, out);
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace dncbeta::cli
