#pragma once

// Command-line front end. run() returns the process exit code:
// 0 success / exact, 1 not exact (or fit infeasible), 2 invalid input.

#include "ssq/io.hpp"
#include "ssq/spaces.hpp"
#include "ssq/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ssq::cli {

enum Exit : int { kOk = 0, kNotExact = 1, kInvalid = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string triangle;
  std::string format = "text";
  bool exact = false;
  bool floating = false;

  // Per-subcommand default backend.
  bool use_exact(bool default_exact) const {
    if (exact && floating) throw UsageError("--exact and --float are mutually exclusive");
    return exact || (default_exact && !floating);
  }
};

inline std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

template <class S>
std::vector<S> parse_list(const std::string& text, std::size_t n, const std::string& what) {
  auto parts = split_commas(text);
  if (parts.size() != n) throw UsageError(what + " needs " + std::to_string(n) + " comma-separated numbers");
  std::vector<S> out;
  for (const auto& p : parts) out.push_back(parse_scalar<S>(p));
  return out;
}

template <class S>
Triangle<S> parse_triangle(const std::string& text) {
  if (text.empty()) return Triangle<S>::reference();
  auto v = parse_list<S>(text, 6, "--triangle");
  return Triangle<S>({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
}

template <class S>
QuadratureRule<S> resolve_rule(const std::string& which) {
  if (which == "builtin:hs-cubic") return hammer_stroud<S>(HammerStroud::cubic);
  if (which == "builtin:hs-quadratic") return hammer_stroud<S>(HammerStroud::quadratic);
  if (which.rfind("builtin:", 0) == 0) {
    throw UsageError("unknown built-in rule '" + which + "' (known: builtin:hs-cubic, builtin:hs-quadratic)");
  }
  if (which.rfind("fitted:", 0) == 0) {
    std::string body = which.substr(7);
    char variant = 'a';
    if (auto colon = body.find(':'); colon != std::string::npos) {
      std::string v = body.substr(colon + 1);
      if (v.size() != 1) throw UsageError("fitted rule variant must be a or b");
      variant = v[0];
      body = body.substr(0, colon);
    }
    int degree = 0;
    try {
      std::size_t used = 0;
      degree = std::stoi(body, &used);
      if (used != body.size()) throw std::invalid_argument(body);
    } catch (const std::exception&) {
      throw UsageError("bad fitted rule name '" + which + "' (expected fitted:<degree>[:a|b])");
    }
    auto fit = fitted_rule<S>(degree, variant);
    if (!fit.feasible()) throw UsageError(fit.diagnostic);
    return *fit.rule;
  }
  return read_rule_file<S>(which);
}

// Fixed-width table writer for text output.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      width.resize(std::max(width.size(), r.size()));
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      line.erase(line.find_last_not_of(' ') + 1);
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline void print_csv(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
    out << '\n';
  }
}

template <class S>
void print_report(const ExactnessReport<S>& rep, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report_to_json(rep).dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    std::vector<std::vector<std::string>> rows{{"label", "rule_value", "true_value", "deviation"}};
    for (const auto& r : rep.records) {
      rows.push_back({r.label, to_string(r.rule_value), to_string(r.true_value), to_string(r.deviation)});
    }
    print_csv(out, rows);
    return;
  }
  out << "rule: " << rep.rule << '\n'
      << "target: " << rep.target << '\n'
      << "area: " << to_string(rep.area) << '\n';
  Table t({"label", "rule value", "true value", "deviation"});
  for (const auto& r : rep.records) {
    t.add({r.label, to_string(r.rule_value), to_string(r.true_value), to_string(r.deviation)});
  }
  t.print(out);
  out << "max |deviation|: " << to_string(rep.max_abs_deviation) << '\n';
  if (rep.used_side_convention) out << "note: some nodes were evaluated with the side convention\n";
  out << "verdict: " << verdict_name(rep.verdict) << " (" << rep.exact_count() << "/" << rep.records.size()
      << " exact)\n";
}

inline int verdict_exit(Verdict v) { return v == Verdict::exact ? kOk : kNotExact; }

// ---------------------------------------------------------------------------
// Subcommand bodies, templated on the scalar backend.

struct DimArgs {
  std::string split;
  int rho = -1, degree = -1, r = -1;
};

inline int cmd_dim(const DimArgs& a, const Common& c, std::ostream& out) {
  SpaceDescriptor d;
  const SplitKind kind = parse_split_kind(a.split);
  if (a.r >= 1) {
    if (a.rho >= 0 || a.degree >= 0) throw UsageError("give either --r or --rho/--d");
    d = kind == SplitKind::ct ? SpaceDescriptor::ct_family(a.r) : SpaceDescriptor::ps_family(a.r);
  } else if (a.r != -1) {
    throw UsageError("--r must be at least 1");
  } else {
    if (a.rho < 0 || a.degree < 0) throw UsageError("dim needs --rho and --d (or --r)");
    d = {kind, a.rho, a.degree, std::nullopt};
  }
  const long n = dimension(d);
  if (c.format == "json") {
    Json j{{"split", std::string(split_tag(kind))}, {"rho", d.rho}, {"degree", d.degree}, {"dimension", n}};
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    print_csv(out, {{"split", "rho", "degree", "dimension"},
                    {std::string(split_tag(kind)), std::to_string(d.rho), std::to_string(d.degree), std::to_string(n)}});
  } else {
    out << n << '\n';
  }
  return kOk;
}

struct BasisArgs {
  std::string split;
  int r = 1;
  bool jumps = false;
  bool serial = false;
};

template <class S>
int cmd_basis(const BasisArgs& a, const Common& c, std::ostream& out) {
  if (a.r < 1) throw UsageError("--r must be at least 1");
  auto basis = make_basis(parse_split_kind(a.split), a.r, parse_triangle<S>(c.triangle));
  std::optional<SmoothnessReport> sm;
  if (a.jumps) sm = smoothness_report(basis, !a.serial);
  if (c.format == "json") {
    Json j;
    j["space"] = basis.descriptor.label();
    j["dimension"] = basis.size();
    j["polynomials"] = basis.poly_count;
    Json els = Json::array();
    for (const auto& e : basis.elements) els.push_back(e.to_string());
    j["elements"] = els;
    if (sm) j["smoothness"] = smoothness_to_json(*sm);
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    if (sm) {
      rows.push_back({"element", "edge", "order", "flagged"});
      for (const auto& e : sm->entries) {
        rows.push_back({e.element.to_string(), e.edge_name, std::to_string(e.order), e.flagged ? "1" : "0"});
      }
    } else {
      rows.push_back({"index", "element", "kind"});
      for (std::size_t i = 0; i < basis.size(); ++i) {
        rows.push_back({std::to_string(i), basis.elements[i].to_string(),
                        static_cast<int>(i) < basis.poly_count ? "bernstein" : "spline"});
      }
    }
    print_csv(out, rows);
  } else if (sm) {
    out << basis.descriptor.label() << ", required smoothness " << sm->required << '\n';
    Table t({"element", "edge", "order", ""});
    for (const auto& e : sm->entries) {
      t.add({e.element.to_string(), e.edge_name, std::to_string(e.order), e.flagged ? "FLAG" : ""});
    }
    t.print(out);
  } else {
    for (const auto& e : basis.elements) out << e.to_string() << '\n';
  }
  return sm && sm->any_flagged() ? kNotExact : kOk;
}

struct EvalArgs {
  std::string split, element, at, bary, direction;
  int order = 1;
};

template <class S>
int cmd_eval(const EvalArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const Triangle<S> t = parse_triangle<S>(c.triangle);
  KnotVector kv = parse_knot_vector(a.element);
  if (!a.split.empty() && parse_split_kind(a.split) != kv.kind()) throw UsageError("--split does not match the element");
  SimplexSpline<S> s(make_split(t, kv.kind()), kv);
  if (a.at.empty() == a.bary.empty()) throw UsageError("give exactly one of --at or --bary");
  Point2<S> x;
  if (!a.at.empty()) {
    auto v = parse_list<S>(a.at, 2, "--at");
    x = {v[0], v[1]};
  } else {
    auto v = parse_list<S>(a.bary, 3, "--bary");
    x = point_from_barycentric(t, Barycentric<S>{{v[0], v[1], v[2]}});
  }
  S value;
  if (!a.direction.empty()) {
    if (a.order < 0) throw UsageError("--order must be non-negative");
    auto u = parse_list<S>(a.direction, 2, "--direction");
    value = eval(derivative(s, Point2<S>{u[0], u[1]}, a.order), x);
  } else {
    value = eval(s, x);
    auto limits = one_sided_limits(*s.split().topo, kv, barycentric(t, x));
    if (!detail::limits_agree(limits)) {
      err << "warning: point lies on a knot line where " << kv.to_string()
          << " is discontinuous; reporting the limit from the barycenter side\n";
    }
  }
  if (c.format == "json") {
    Json j{{"element", kv.to_string()}, {"x", to_string(x.x)}, {"y", to_string(x.y)}, {"value", to_string(value)}};
    if (!a.direction.empty()) j["order"] = a.order;
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    print_csv(out, {{"element", "x", "y", "value"}, {kv.to_string(), to_string(x.x), to_string(x.y), to_string(value)}});
  } else {
    out << to_string(value) << '\n';
  }
  return kOk;
}

struct IntegrateArgs {
  std::string element;
};

template <class S>
int cmd_integrate(const IntegrateArgs& a, const Common& c, std::ostream& out) {
  KnotVector kv = parse_knot_vector(a.element);
  SimplexSpline<S> s(make_split(parse_triangle<S>(c.triangle), kv.kind()), kv);
  const S closed = integral(s);
  const S oracle = oracle_integrate(s);
  if (c.format == "json") {
    Json j{{"element", kv.to_string()}, {"closed_form", to_string(closed)}, {"oracle", to_string(oracle)},
           {"difference", to_string(closed - oracle)}};
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    print_csv(out, {{"element", "closed_form", "oracle"}, {kv.to_string(), to_string(closed), to_string(oracle)}});
  } else {
    out << "closed form: " << to_string(closed) << '\n' << "oracle: " << to_string(oracle) << '\n';
  }
  return kOk;
}

struct FitArgs {
  int degree = -1;
  std::string orbits_file;
  std::string variant = "a";
  std::string name;
  std::string output;
};

template <class S>
int cmd_fit(const FitArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  FitResult<S> fit;
  if (!a.orbits_file.empty()) {
    Json doc = read_json_file(a.orbits_file);
    if (!doc.is_object() || !doc.contains("orbits") || !doc["orbits"].is_array()) {
      throw FormatError(a.orbits_file + ": needs an 'orbits' array");
    }
    // Weights are unknowns here; fill placeholders so the orbit parser accepts them.
    for (auto& o : doc["orbits"]) {
      if (o.is_object() && !o.contains("weight")) o["weight"] = "0";
    }
    int degree = a.degree;
    if (degree < 0 && doc.contains("degree") && doc["degree"].is_number_integer()) degree = doc["degree"].get<int>();
    if (degree < 0) throw UsageError("fit-weights needs --degree");
    doc["degree"] = degree;
    auto parsed = rule_from_json<S>(doc);
    std::string name = a.name.empty() ? (doc.contains("name") ? parsed.name() : "fitted-d" + std::to_string(degree))
                                      : a.name;
    fit = fit_weights(parsed.orbits(), degree, name);
  } else {
    if (a.degree < 0) throw UsageError("fit-weights needs --degree");
    if (a.variant.size() != 1) throw UsageError("--template must be a or b");
    fit = fitted_rule<S>(a.degree, a.variant[0]);
    if (fit.rule && !a.name.empty()) fit.rule.emplace(fit.rule->degree(), fit.rule->orbits(), a.name);
  }
  if (!fit.feasible()) {
    err << "fit infeasible: " << fit.diagnostic << '\n';
    return kNotExact;
  }
  const auto& rule = *fit.rule;
  Json doc = rule_to_json(rule, "fit-weights");
  if (!a.output.empty()) {
    std::ofstream f(a.output);
    if (!f) throw UsageError("cannot write " + a.output);
    f << doc.dump(2) << '\n';
  }
  if (c.format == "json") {
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    std::vector<std::vector<std::string>> rows{{"type", "theta", "eta", "weight"}};
    for (const auto& o : rule.orbits()) {
      rows.push_back({std::to_string(static_cast<int>(o.type)), to_string(o.theta), to_string(o.eta), to_string(o.weight)});
    }
    print_csv(out, rows);
  } else {
    const auto t = rule.type();
    out << rule.name() << ": degree " << rule.degree() << ", type [" << t[0] << "," << t[1] << "," << t[2] << "], "
        << rule.node_count() << " nodes\n";
    Table tab({"type", "theta", "eta", "weight"});
    for (const auto& o : rule.orbits()) {
      tab.add({std::to_string(static_cast<int>(o.type)), o.type == OrbitType::center ? "-" : to_string(o.theta),
               o.type == OrbitType::general ? to_string(o.eta) : "-", to_string(o.weight)});
    }
    tab.print(out);
    if (rule.negative_weights()) out << "note: negative weights\n";
    if (rule.exterior_nodes()) out << "note: nodes outside the triangle\n";
  }
  return kOk;
}

struct VerifyArgs {
  std::string rule, split;
  int r = -1, rho = -1, degree = -1, poly = -1;
  std::vector<std::string> elements;
  bool allow_side = false;
  bool serial = false;
};

template <class S>
int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const Triangle<S> t = parse_triangle<S>(c.triangle);
  const auto rule = resolve_rule<S>(a.rule);
  VerifyOptions opts{a.allow_side, !a.serial};
  ExactnessReport<S> rep;
  if (!a.elements.empty()) {
    if (a.r != -1) throw UsageError("--element and --r are mutually exclusive");
    std::vector<KnotVector> kvs;
    for (const auto& e : a.elements) kvs.push_back(parse_knot_vector(e));
    const SplitKind kind = a.split.empty() ? kvs.front().kind() : parse_split_kind(a.split);
    for (const auto& kv : kvs) {
      if (kv.kind() != kind) throw UsageError("element " + kv.to_string() + " does not match the split");
    }
    std::string target = "elements";
    if (a.rho >= 0) {
      const int d = a.degree >= 0 ? a.degree : kvs.front().degree();
      target = SpaceDescriptor{kind, a.rho, d, std::nullopt}.label();
    }
    rep = check_elements_exactness(rule, make_split(t, kind), kvs, target, opts);
  } else if (a.r != -1) {
    if (a.split.empty()) throw UsageError("--r needs --split");
    if (a.r < 1) throw UsageError("--r must be at least 1");
    rep = check_space_exactness(rule, make_basis(parse_split_kind(a.split), a.r, t), opts);
  } else {
    if (!a.split.empty()) throw UsageError("--split needs --r or --element");
    rep = check_poly_exactness(rule, a.poly >= 0 ? a.poly : rule.degree(), t);
  }
  print_report(rep, c.format, out);
  if (rep.verdict == Verdict::inconclusive) err << "inconclusive in floating point; rerun with --exact\n";
  return verdict_exit(rep.verdict);
}

struct CounterArgs {
  bool allow_side = false;
};

template <class S>
int cmd_counterexamples(const CounterArgs& a, const Common& c, std::ostream& out) {
  auto suite = counterexample_suite(parse_triangle<S>(c.triangle), VerifyOptions{a.allow_side, true});
  bool all = true;
  for (const auto& ce : suite) all = all && ce.reproduced();
  if (c.format == "json") {
    Json arr = Json::array();
    for (const auto& ce : suite) {
      Json j = report_to_json(ce.report);
      j["description"] = ce.description;
      j["expected_rule_value"] = to_string(ce.expected_rule_value);
      j["expected_true_value"] = to_string(ce.expected_true_value);
      j["reproduced"] = ce.reproduced();
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
  } else if (c.format == "csv") {
    std::vector<std::vector<std::string>> rows{{"rule", "element", "rule_value", "true_value", "deviation", "reproduced"}};
    for (const auto& ce : suite) {
      const auto& r = ce.report.records.front();
      rows.push_back({ce.report.rule, r.label, to_string(r.rule_value), to_string(r.true_value), to_string(r.deviation),
                      ce.reproduced() ? "1" : "0"});
    }
    print_csv(out, rows);
  } else {
    Table t({"rule", "element", "rule value", "true value", "deviation", "reproduced"});
    for (const auto& ce : suite) {
      const auto& r = ce.report.records.front();
      t.add({ce.report.rule, r.label, to_string(r.rule_value), to_string(r.true_value), to_string(r.deviation),
             ce.reproduced() ? "yes" : "NO"});
    }
    out << "area: " << to_string(suite.front().report.area) << '\n';
    t.print(out);
  }
  return all ? kOk : kNotExact;
}

struct NodesArgs {
  std::string rule;
};

template <class S>
int cmd_nodes(const NodesArgs& a, const Common& c, std::ostream& out) {
  const Triangle<S> t = parse_triangle<S>(c.triangle);
  const auto rule = resolve_rule<S>(a.rule);
  std::vector<std::vector<std::string>> rows{{"x", "y", "weight", "orbit_type"}};
  for (const auto& n : rule.nodes()) {
    Point2<S> x = point_from_barycentric(t, n.bary);
    rows.push_back({to_string(x.x), to_string(x.y), to_string(n.weight), std::to_string(static_cast<int>(n.type))});
  }
  if (c.format == "json") {
    Json arr = Json::array();
    for (std::size_t i = 1; i < rows.size(); ++i) {
      arr.push_back({{"x", rows[i][0]}, {"y", rows[i][1]}, {"weight", rows[i][2]}, {"orbit_type", std::stoi(rows[i][3])}});
    }
    out << arr.dump(2) << '\n';
  } else if (c.format == "text") {
    Table tab(rows.front());
    for (std::size_t i = 1; i < rows.size(); ++i) tab.add(rows[i]);
    tab.print(out);
  } else {
    print_csv(out, rows);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simplex splines on Clough-Tocher and Powell-Sabin splits and symmetric quadrature", "ssq"};
  app.require_subcommand(1);
  app.fallthrough(false);

  // Each subcommand owns its own copy of the shared flags.
  std::map<CLI::App*, Common> common;
  auto add_common = [&](CLI::App* sub, const std::string& default_format = "text") {
    Common& c = common[sub];
    c.format = default_format;
    sub->add_option("--triangle", c.triangle, "x1,y1,x2,y2,x3,y3 (default: unit right triangle)");
    sub->add_option("--format", c.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_flag("--exact", c.exact, "rational arithmetic");
    sub->add_flag("--float", c.floating, "double precision");
  };
  auto split_check = CLI::IsMember({"ct", "ps"});

  DimArgs dim;
  auto* s_dim = app.add_subcommand("dim", "dimension of a spline space on a split");
  s_dim->add_option("--split", dim.split)->required()->check(split_check);
  s_dim->add_option("--rho", dim.rho, "smoothness");
  s_dim->add_option("--d", dim.degree, "degree");
  s_dim->add_option("--r", dim.r, "macro-element family index");
  add_common(s_dim);

  BasisArgs basis;
  auto* s_basis = app.add_subcommand("basis", "list the basis knot vectors");
  s_basis->add_option("--split", basis.split)->required()->check(split_check);
  s_basis->add_option("--r", basis.r)->required();
  s_basis->add_flag("--jumps", basis.jumps, "tabulate jump orders across micro-edges");
  s_basis->add_flag("--serial", basis.serial);
  add_common(s_basis);

  EvalArgs ev;
  auto* s_eval = app.add_subcommand("eval", "evaluate a simplex spline or a directional derivative");
  s_eval->add_option("--split", ev.split)->check(split_check);
  s_eval->add_option("--element", ev.element, "tagged knot vector, e.g. ct:(1,2,2,1)")->required();
  s_eval->add_option("--at", ev.at, "x,y");
  s_eval->add_option("--bary", ev.bary, "a1,a2,a3");
  s_eval->add_option("--direction", ev.direction, "ux,uy");
  s_eval->add_option("--order", ev.order, "derivative order");
  add_common(s_eval);

  IntegrateArgs integ;
  auto* s_int = app.add_subcommand("integrate", "closed-form and cell-wise integral of a simplex spline");
  s_int->add_option("--element", integ.element)->required();
  add_common(s_int);

  FitArgs fit;
  auto* s_fit = app.add_subcommand("fit-weights", "fit orbit weights to the polynomial moments");
  s_fit->add_option("--degree", fit.degree);
  s_fit->add_option("--orbits", fit.orbits_file, "JSON file with an orbits array (weights ignored)");
  s_fit->add_option("--template", fit.variant, "built-in orbit template a or b")->check(CLI::IsMember({"a", "b"}));
  s_fit->add_option("--name", fit.name);
  s_fit->add_option("--output", fit.output, "write the rule file here");
  add_common(s_fit);

  VerifyArgs ver;
  auto* s_ver = app.add_subcommand("verify", "certify a rule on polynomials or on a spline space");
  s_ver->add_option("--rule", ver.rule, "builtin:hs-cubic, builtin:hs-quadratic, fitted:<d>[:a|b] or a file")
      ->required();
  s_ver->add_option("--split", ver.split)->check(split_check);
  s_ver->add_option("--r", ver.r);
  s_ver->add_option("--rho", ver.rho);
  s_ver->add_option("--d", ver.degree);
  s_ver->add_option("--element", ver.elements, "tagged knot vector (repeatable)");
  s_ver->add_option("--poly", ver.poly, "polynomial degree (default: the rule's degree)");
  s_ver->add_flag("--allow-knot-line-nodes", ver.allow_side, "evaluate ambiguous nodes from the barycenter side");
  s_ver->add_flag("--serial", ver.serial);
  add_common(s_ver);

  CounterArgs cx;
  auto* s_cx = app.add_subcommand("counterexamples", "reproduce the three non-exactness examples");
  s_cx->add_flag("--allow-knot-line-nodes", cx.allow_side);
  add_common(s_cx);

  NodesArgs nodes;
  auto* s_nodes = app.add_subcommand("nodes", "expand a rule's nodes on a triangle");
  s_nodes->add_option("--rule", nodes.rule)->required();
  add_common(s_nodes, "csv");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kInvalid;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Common& c = common[sub];
  try {
    if (sub == s_dim) return cmd_dim(dim, c, out);
    if (sub == s_basis) return c.use_exact(false) ? cmd_basis<Rational>(basis, c, out) : cmd_basis<double>(basis, c, out);
    if (sub == s_eval) return c.use_exact(false) ? cmd_eval<Rational>(ev, c, out, err) : cmd_eval<double>(ev, c, out, err);
    if (sub == s_int) return c.use_exact(false) ? cmd_integrate<Rational>(integ, c, out) : cmd_integrate<double>(integ, c, out);
    if (sub == s_fit) return c.use_exact(true) ? cmd_fit<Rational>(fit, c, out, err) : cmd_fit<double>(fit, c, out, err);
    if (sub == s_ver) return c.use_exact(true) ? cmd_verify<Rational>(ver, c, out, err) : cmd_verify<double>(ver, c, out, err);
    if (sub == s_cx) return c.use_exact(true) ? cmd_counterexamples<Rational>(cx, c, out) : cmd_counterexamples<double>(cx, c, out);
    if (sub == s_nodes) return c.use_exact(false) ? cmd_nodes<Rational>(nodes, c, out) : cmd_nodes<double>(nodes, c, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const KnotLineNodeError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  err << "error: unknown subcommand\n";
  return kInvalid;
}

}  // namespace ssq::cli
