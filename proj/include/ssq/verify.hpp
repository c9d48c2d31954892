#pragma once

// Ground-truth integration and exactness certificates for quadrature rules on
// polynomial and spline spaces.

#include "ssq/linalg.hpp"
#include "ssq/moments.hpp"
#include "ssq/quadrature.hpp"
#include "ssq/simplex.hpp"
#include "ssq/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ssq {

// ---------------------------------------------------------------------------
// Oracle integration

namespace detail {

// Interior points of the order-(d+3) principal lattice with weights making the
// rule exact on P_d (unisolvent, so the weights are unique). Weights are
// normalized to a unit-area triangle.
struct LatticeRule {
  std::vector<std::array<Rational, 3>> nodes;
  std::vector<Rational> weights;
};

inline const LatticeRule& lattice_rule(int d) {
  static std::mutex mutex;
  static std::map<int, LatticeRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(d); it != cache.end()) return it->second;

  LatticeRule rule;
  const long m = d + 3;
  for (long i = 1; i <= m - 2; ++i) {
    for (long j = 1; i + j <= m - 1; ++j) {
      rule.nodes.push_back({make_rational(i, m), make_rational(j, m), make_rational(m - i - j, m)});
    }
  }
  std::vector<std::array<int, 2>> exps;
  for (int n = 0; n <= d; ++n) {
    for (int a = n; a >= 0; --a) exps.push_back({a, n - a});
  }
  Matrix<Rational> a(exps.size(), rule.nodes.size());
  std::vector<Rational> rhs;
  for (std::size_t r = 0; r < exps.size(); ++r) {
    for (std::size_t c = 0; c < rule.nodes.size(); ++c) {
      Rational v = 1;
      for (int k = 0; k < exps[r][0]; ++k) v *= rule.nodes[c][0];
      for (int k = 0; k < exps[r][1]; ++k) v *= rule.nodes[c][1];
      a(r, c) = v;
    }
    rhs.push_back(normalized_moment(exps[r][0], exps[r][1], 0));
  }
  auto sol = solve(a, rhs);
  if (!sol.unique(rule.nodes.size())) throw std::logic_error("lattice rule is not unisolvent");
  rule.weights = std::move(sol.x);
  return cache.emplace(d, std::move(rule)).first->second;
}

template <class S>
using Polygon = std::vector<Point2<S>>;

template <class S>
S polygon_twice_area(const Polygon<S>& p) {
  S acc{0};
  for (std::size_t i = 0; i < p.size(); ++i) acc += cross(p[i], p[(i + 1) % p.size()]);
  return acc;
}

// Splits a convex polygon by the line through a, b.
template <class S>
std::pair<Polygon<S>, Polygon<S>> split_polygon(const Polygon<S>& poly, const Point2<S>& a, const Point2<S>& b) {
  Polygon<S> pos, neg;
  const Point2<S> e = b - a;
  std::vector<S> f;
  std::vector<int> s;
  for (const auto& v : poly) {
    f.push_back(cross(e, v - a));
    s.push_back(sign_of(f.back()));
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const std::size_t j = (i + 1) % poly.size();
    if (s[i] >= 0) pos.push_back(poly[i]);
    if (s[i] <= 0) neg.push_back(poly[i]);
    if (s[i] * s[j] < 0) {
      S t = f[i] / (f[i] - f[j]);
      Point2<S> x = poly[i] + t * (poly[j] - poly[i]);
      pos.push_back(x);
      neg.push_back(x);
    }
  }
  return {pos, neg};
}

// Faces of the arrangement of the knot lines in `mask`, clipped to T, in the
// barycentric frame.
template <class S>
std::vector<Polygon<S>> knot_line_cells(const SplitTopology& topo, unsigned mask) {
  auto frame = [&](int slot) {
    const auto& r = topo.ref6[static_cast<std::size_t>(slot)];
    return Point2<S>{ratio<S>(r[0], 6), ratio<S>(r[1], 6)};
  };
  std::vector<Polygon<S>> cells{{frame(0), frame(1), frame(2)}};
  std::vector<std::pair<int, int>> lines;
  for (int a = 0; a < topo.size; ++a) {
    if (!(mask >> a & 1u)) continue;
    for (int b = a + 1; b < topo.size; ++b) {
      if (!(mask >> b & 1u)) continue;
      bool dup = false;
      for (const auto& [c, d] : lines) dup = dup || (topo.cross6(c, d, a) == 0 && topo.cross6(c, d, b) == 0);
      if (!dup) lines.emplace_back(a, b);
    }
  }
  for (const auto& [a, b] : lines) {
    std::vector<Polygon<S>> next;
    for (const auto& cell : cells) {
      auto [pos, neg] = split_polygon(cell, frame(a), frame(b));
      for (auto* part : {&pos, &neg}) {
        if (part->size() >= 3 && sign_of(polygon_twice_area(*part)) != 0) next.push_back(std::move(*part));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

template <class S>
S oracle_integrate_terms(const SplitConfig<S>& split, const std::vector<SplineTerm<S>>& terms) {
  if (terms.empty()) return S(0);
  unsigned mask = 0;
  int degree = 0;
  for (const auto& t : terms) {
    mask |= t.knots.positive_mask();
    degree = std::max(degree, t.knots.degree());
  }
  const LatticeRule& lattice = lattice_rule(degree);
  std::vector<S> weights;
  for (const auto& w : lattice.weights) weights.push_back(from_rational<S>(w));
  S frame_integral{0};
  for (const auto& cell : knot_line_cells<S>(*split.topo, mask)) {
    for (std::size_t k = 1; k + 1 < cell.size(); ++k) {
      const Point2<S>& q0 = cell[0];
      const Point2<S>& q1 = cell[k];
      const Point2<S>& q2 = cell[k + 1];
      const S tri_area = abs_value(orient(q0, q1, q2)) / S(2);
      S acc{0};
      for (std::size_t n = 0; n < lattice.nodes.size(); ++n) {
        const auto& b = lattice.nodes[n];
        Point2<S> x = from_rational<S>(b[0]) * q0 + from_rational<S>(b[1]) * q1 + from_rational<S>(b[2]) * q2;
        PointEvaluator<S> ev(*split.topo, x, PointEvaluator<S>::default_directions(x));
        S v{0};
        for (const auto& t : terms) v += t.coeff * ev.value(t.knots);
        acc += weights[n] * v;
      }
      frame_integral += tri_area * acc;
    }
  }
  // The frame triangle has area 1/2.
  return S(2) * split.triangle.area() * frame_integral;
}

}  // namespace detail

// Integrates cell by cell over the arrangement of knot lines with a rule that
// is exact for the spline's degree on every cell. Independent of the closed
// form A(T)/C(d+2,2).
template <class S>
S oracle_integrate(const SimplexSpline<S>& s) {
  return detail::oracle_integrate_terms(s.split(), {SplineTerm<S>{S(1), s.knots()}});
}

template <class S>
S oracle_integrate(const SplineCombination<S>& c) {
  return detail::oracle_integrate_terms(c.split(), c.terms());
}

// ---------------------------------------------------------------------------
// Exactness reports

enum class Verdict { exact, not_exact, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::exact: return "exact";
    case Verdict::not_exact: return "not-exact";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

template <class S>
struct ExactnessRecord {
  std::string label;  // monomial "a1^a a2^b a3^c" or tagged knot vector
  S rule_value;
  S true_value;
  S deviation;  // true_value - rule_value
};

template <class S>
struct ExactnessReport {
  std::string rule;
  std::string target;
  S area{};
  std::vector<ExactnessRecord<S>> records;
  S max_abs_deviation{};
  Verdict verdict = Verdict::exact;
  bool used_side_convention = false;

  std::size_t exact_count() const {
    std::size_t n = 0;
    for (const auto& r : records) {
      if constexpr (is_exact_v<S>) {
        n += is_zero(r.deviation) ? 1 : 0;
      } else {
        n += std::fabs(r.deviation) <= kExactTol * area ? 1 : 0;
      }
    }
    return n;
  }

  // Float thresholds relative to A(T).
  static constexpr double kExactTol = 1e-12;
  static constexpr double kInconclusiveTol = 1e-8;
};

template <class S>
void finalize(ExactnessReport<S>& rep) {
  rep.max_abs_deviation = S(0);
  for (const auto& r : rep.records) {
    S mag = abs_value(r.deviation);
    if (mag > rep.max_abs_deviation) rep.max_abs_deviation = mag;
  }
  if constexpr (is_exact_v<S>) {
    rep.verdict = is_zero(rep.max_abs_deviation) ? Verdict::exact : Verdict::not_exact;
  } else {
    const double rel = rep.max_abs_deviation / rep.area;
    rep.verdict = rel <= ExactnessReport<S>::kExactTol          ? Verdict::exact
                  : rel < ExactnessReport<S>::kInconclusiveTol ? Verdict::inconclusive
                                                                : Verdict::not_exact;
  }
}

inline std::string monomial_label(const std::array<int, 3>& e) {
  return "a1^" + std::to_string(e[0]) + " a2^" + std::to_string(e[1]) + " a3^" + std::to_string(e[2]);
}

template <class S>
ExactnessReport<S> check_poly_exactness(const QuadratureRule<S>& rule, int degree, const Triangle<S>& t) {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  ExactnessReport<S> rep;
  rep.rule = rule.name();
  rep.target = "P_" + std::to_string(degree);
  rep.area = t.area();
  for (const auto& e : monomials_up_to(degree)) {
    S q = apply_barycentric(rule, t, [&](const Barycentric<S>& a) -> S { return monomial(e, a); });
    S exact = poly_moment(e[0], e[1], e[2], t);
    rep.records.push_back({monomial_label(e), q, exact, exact - q});
  }
  finalize(rep);
  return rep;
}

class KnotLineNodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifyOptions {
  // Evaluate nodes where one-sided limits disagree with the default limit
  // convention instead of failing.
  bool allow_knot_line_nodes = false;
  bool parallel = true;
};

namespace detail {

// Runs fn(i) for i in [0, n) on a few worker threads; results keep index order
// and the first exception is rethrown.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, bool parallel, F fn) {
  std::vector<R> out(n);
  const std::size_t workers = parallel ? std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    }));
  }
  std::exception_ptr first;
  for (auto& j : jobs) {
    try {
      j.get();
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return out;
}

template <class S>
bool limits_agree(const std::vector<S>& limits) {
  for (const auto& v : limits) {
    if constexpr (is_exact_v<S>) {
      if (v != limits.front()) return false;
    } else {
      const double scale = std::max(1.0, std::fabs(limits.front()));
      if (std::fabs(v - limits.front()) > 1e-9 * scale) return false;
    }
  }
  return true;
}

}  // namespace detail

// Applies the rule to each simplex spline and compares with A(T)/C(d+2,2).
// Nodes on knot lines are fine as long as every one-sided limit there agrees.
template <class S>
ExactnessReport<S> check_elements_exactness(const QuadratureRule<S>& rule, const SplitConfig<S>& split,
                                            const std::vector<KnotVector>& elements, std::string target,
                                            const VerifyOptions& opts = {}) {
  ExactnessReport<S> rep;
  rep.rule = rule.name();
  rep.target = std::move(target);
  rep.area = split.triangle.area();
  const auto nodes = rule.nodes();
  struct Row {
    ExactnessRecord<S> record;
    bool convention = false;
  };
  auto rows = detail::parallel_map<Row>(elements.size(), opts.parallel, [&](std::size_t i) {
    SimplexSpline<S> s(split, elements[i]);
    Row row;
    S acc{0};
    for (const auto& n : nodes) {
      auto limits = one_sided_limits(*split.topo, s.knots(), n.bary);
      S value = limits.front();
      if (!detail::limits_agree(limits)) {
        if (!opts.allow_knot_line_nodes) {
          throw KnotLineNodeError("node (" + to_string(n.bary[0]) + ", " + to_string(n.bary[1]) + ", " +
                                  to_string(n.bary[2]) + ") lies on a knot line of " + s.knots().to_string() +
                                  " where the spline has no unique value; pass the side-convention flag to "
                                  "evaluate it as the limit from the barycenter side");
        }
        value = eval_barycentric(*split.topo, s.knots(), n.bary);
        row.convention = true;
      }
      acc += n.weight * value;
    }
    S q = split.triangle.area() * acc;
    S exact = integral(s);
    row.record = {s.knots().to_string(), q, exact, exact - q};
    return row;
  });
  for (auto& r : rows) {
    rep.used_side_convention = rep.used_side_convention || r.convention;
    rep.records.push_back(std::move(r.record));
  }
  finalize(rep);
  return rep;
}

template <class S>
ExactnessReport<S> check_space_exactness(const QuadratureRule<S>& rule, const SplineSpaceBasis<S>& basis,
                                         const VerifyOptions& opts = {}) {
  return check_elements_exactness(rule, basis.split, basis.elements, basis.descriptor.label(), opts);
}

// ---------------------------------------------------------------------------
// Counterexamples showing the smoothness requirements are sharp

template <class S>
struct Counterexample {
  std::string description;
  ExactnessReport<S> report;
  S expected_rule_value;
  S expected_true_value;

  bool reproduced() const {
    const auto& r = report.records.front();
    if constexpr (is_exact_v<S>) {
      return r.rule_value == expected_rule_value && r.true_value == expected_true_value;
    } else {
      const double tol = 1e-12 * report.area;
      return std::fabs(r.rule_value - expected_rule_value) <= tol && std::fabs(r.true_value - expected_true_value) <= tol;
    }
  }
};

template <class S>
std::vector<Counterexample<S>> counterexample_suite(const Triangle<S>& t, const VerifyOptions& opts = {}) {
  const S a = t.area();
  const auto cubic = hammer_stroud<S>(HammerStroud::cubic);
  const auto quadratic = hammer_stroud<S>(HammerStroud::quadratic);
  const auto ct = make_split(t, SplitKind::ct);
  const auto ps = make_split(t, SplitKind::ps);
  std::vector<Counterexample<S>> out;
  out.push_back({"hs-cubic on ct:(3,2,0,1), a cubic that is only C^0",
                 check_elements_exactness(cubic, ct, {KnotVector::ct(3, 2, 0, 1)}, "S^0_3(ct)", opts), S(0),
                 a / S(10)});
  out.push_back({"hs-quadratic on ps:(2,0,1,2,0,0), a quadratic that is only C^0",
                 check_elements_exactness(quadratic, ps, {KnotVector::ps(2, 0, 1, 2, 0, 0)}, "S^0_2(ps)", opts),
                 S(2) * a / S(9), a / S(6)});
  out.push_back({"hs-cubic on ps:(4,0,1,1,0,0), a C^2 cubic",
                 check_elements_exactness(cubic, ps, {KnotVector::ps(4, 0, 1, 1, 0, 0)}, "S^2_3(ps)", opts),
                 a / S(15), a / S(10)});
  return out;
}

// ---------------------------------------------------------------------------
// Smoothness certification

struct SmoothnessEntry {
  KnotVector element;
  int edge = 0;
  std::string edge_name;
  int order = 0;
  bool flagged = false;
};

struct SmoothnessReport {
  int required = 0;
  std::vector<SmoothnessEntry> entries;

  bool any_flagged() const {
    for (const auto& e : entries) {
      if (e.flagged) return true;
    }
    return false;
  }
};

inline std::string edge_name(const SplitTopology& topo, int edge) {
  const MicroEdge& e = topo.micro_edges[static_cast<std::size_t>(edge)];
  return "<" + std::string(topo.names[static_cast<std::size_t>(e.from)]) + "," +
         std::string(topo.names[static_cast<std::size_t>(e.to)]) + ">";
}

// jump_order of every element across every micro-edge; entries below the
// space's smoothness are flagged.
template <class S>
SmoothnessReport smoothness_report(const SplineSpaceBasis<S>& basis, bool parallel = true) {
  const SplitTopology& topo = *basis.split.topo;
  const std::size_t edges = topo.micro_edges.size();
  SmoothnessReport rep;
  rep.required = basis.descriptor.rho;
  auto orders = detail::parallel_map<std::vector<int>>(basis.size(), parallel, [&](std::size_t i) {
    SimplexSpline<S> s(basis.split, basis.elements[i]);
    std::vector<int> o;
    for (std::size_t e = 0; e < edges; ++e) o.push_back(jump_order(s, static_cast<int>(e)));
    return o;
  });
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t e = 0; e < edges; ++e) {
      const int order = orders[i][e];
      rep.entries.push_back({basis.elements[i], static_cast<int>(e), edge_name(topo, static_cast<int>(e)), order,
                             order < rep.required});
    }
  }
  return rep;
}

}  // namespace ssq
