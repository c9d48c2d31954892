#pragma once

// Normalized bivariate simplex splines whose knots are drawn from the
// configuration points of a split.
//
// N_P = A(T) / C(d+2,2) * S_P, where S_P is the unit-integral simplex spline
// with knot multiset P of d+3 points. With that normalization the recurrence,
// derivative and knot-insertion formulas carry no degree-dependent factors
// apart from the d in the derivative.
//
// Evaluation runs in the barycentric frame of T, so values are invariant
// under affine maps of the macro-triangle by construction. Points on knot
// lines are resolved as one-sided limits: the query is perturbed by a
// lexicographic infinitesimal eps*d1 + eps^2*d2 + ..., and every orientation
// predicate that vanishes at the query falls through to the next direction.
// Base cases then select the polynomial piece of the cell that the perturbed
// point enters, which the recurrence evaluates at the unperturbed point. The
// result is the exact limit value, also in the rational backend.

#include "ssq/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ssq {

class KnotVector {
 public:
  KnotVector() = default;
  KnotVector(SplitKind kind, const std::vector<int>& mult) : kind_(kind) {
    const int given = static_cast<int>(mult.size());
    const bool ok = kind == SplitKind::ct ? given == 4 : (given == 6 || given == 7);
    if (!ok) {
      throw std::invalid_argument(std::string("knot vector for ") + std::string(split_tag(kind)) +
                                  " needs " + (kind == SplitKind::ct ? "4" : "6 or 7") + " entries");
    }
    for (int i = 0; i < given; ++i) {
      if (mult[static_cast<std::size_t>(i)] < 0) throw std::invalid_argument("negative knot multiplicity");
      if (mult[static_cast<std::size_t>(i)] > 255) throw std::invalid_argument("knot multiplicity too large");
      mult_[static_cast<std::size_t>(i)] = mult[static_cast<std::size_t>(i)];
    }
  }

  static KnotVector ct(int i, int j, int k, int l) { return KnotVector(SplitKind::ct, {i, j, k, l}); }
  static KnotVector ps(int i, int j, int k, int l, int m, int n, int c = 0) {
    return KnotVector(SplitKind::ps, {i, j, k, l, m, n, c});
  }

  SplitKind kind() const { return kind_; }
  int slots() const { return kind_ == SplitKind::ct ? 4 : 7; }
  int operator[](int slot) const { return mult_[static_cast<std::size_t>(slot)]; }
  int total() const {
    int t = 0;
    for (int m : mult_) t += m;
    return t;
  }
  int degree() const { return total() - 3; }

  unsigned positive_mask() const {
    unsigned mask = 0;
    for (int i = 0; i < kMaxSlots; ++i) {
      if (mult_[static_cast<std::size_t>(i)] > 0) mask |= 1u << i;
    }
    return mask;
  }

  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (int i = kMaxSlots - 1; i >= 0; --i) k = (k << 8) | static_cast<std::uint64_t>(mult_[static_cast<std::size_t>(i)]);
    return k;
  }

  KnotVector with_delta(int slot, int delta) const {
    KnotVector out = *this;
    out.mult_[static_cast<std::size_t>(slot)] += delta;
    return out;
  }

  // Support (convex hull of the knots) has positive area.
  bool has_full_support() const {
    return SplitTopology::get(kind_).pivot_for(positive_mask())[0] >= 0;
  }

  // "ct:(1,2,2,1)" / "ps:(4,0,1,1,0,0)"; a PS barycenter slot is printed only
  // when it is non-zero.
  std::string to_string() const {
    std::string s(split_tag(kind_));
    s += ":(";
    int n = slots();
    if (kind_ == SplitKind::ps && mult_[6] == 0) n = 6;
    for (int i = 0; i < n; ++i) {
      if (i) s += ',';
      s += std::to_string(mult_[static_cast<std::size_t>(i)]);
    }
    s += ')';
    return s;
  }

  friend bool operator==(const KnotVector& a, const KnotVector& b) {
    return a.kind_ == b.kind_ && a.mult_ == b.mult_;
  }
  friend std::ostream& operator<<(std::ostream& os, const KnotVector& kv) { return os << kv.to_string(); }
  friend bool operator<(const KnotVector& a, const KnotVector& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.mult_ < b.mult_;
  }

 private:
  SplitKind kind_ = SplitKind::ct;
  std::array<int, kMaxSlots> mult_{};
};

inline KnotVector parse_knot_vector(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("knot vector needs a split tag, e.g. ct:(1,2,2,1)");
  SplitKind kind = parse_split_kind(text.substr(0, colon));
  std::string_view body = text.substr(colon + 1);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
    throw std::invalid_argument("knot vector must be parenthesized: '" + std::string(text) + "'");
  }
  body = body.substr(1, body.size() - 2);
  std::vector<int> mult;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string item(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad multiplicity '" + item + "' in '" + std::string(text) + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("bad multiplicity '" + item + "' in '" + std::string(text) + "'");
    mult.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return KnotVector(kind, mult);
}

class SplineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class S>
class SimplexSpline {
 public:
  SimplexSpline(SplitConfig<S> split, KnotVector knots) : split_(std::move(split)), knots_(knots) {
    if (knots_.kind() != split_.kind()) throw SplineError("knot vector and split disagree on the split kind");
    if (knots_.total() < 3) throw SplineError("a simplex spline needs at least 3 knots");
    if (!knots_.has_full_support()) throw SplineError("knot support " + knots_.to_string() + " has zero area");
  }

  const SplitConfig<S>& split() const { return split_; }
  const KnotVector& knots() const { return knots_; }
  int degree() const { return knots_.degree(); }

  // A(T) / C(d+2, 2): both the integral of N_P and the scale from S_P.
  S normalization() const {
    const long d = degree();
    return split_.triangle.area() / ratio<S>((d + 2) * (d + 1) / 2);
  }

 private:
  SplitConfig<S> split_;
  KnotVector knots_;
};

template <class S>
struct SplineTerm {
  S coeff;
  KnotVector knots;
};

// Symbolic linear combination of simplex splines over one split.
template <class S>
class SplineCombination {
 public:
  explicit SplineCombination(SplitConfig<S> split) : split_(std::move(split)) {}

  const SplitConfig<S>& split() const { return split_; }
  const std::vector<SplineTerm<S>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Adds coeff * N_knots, merging equal knot vectors and dropping zero terms.
  void add(const S& coeff, const KnotVector& knots) {
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (it->knots == knots) {
        it->coeff += coeff;
        if (is_zero(it->coeff)) terms_.erase(it);
        return;
      }
    }
    if (!is_zero(coeff)) terms_.push_back({coeff, knots});
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [](const SplineTerm<S>& a, const SplineTerm<S>& b) { return a.knots < b.knots; });
  }

 private:
  SplitConfig<S> split_;
  std::vector<SplineTerm<S>> terms_;
};

// ---------------------------------------------------------------------------
// Point evaluation

// Evaluates simplex splines of one split at one (perturbed) point. Values are
// memoized by knot vector, so several splines and combinations evaluated at
// the same point share their sub-recurrences.
template <class S>
class PointEvaluator {
 public:
  // `x` is (a1, a2) in the barycentric frame; `dirs` are the perturbation
  // directions in the same frame, in priority order.
  PointEvaluator(const SplitTopology& topo, Point2<S> x, std::vector<Point2<S>> dirs)
      : topo_(&topo), x_(std::move(x)), dirs_(std::move(dirs)) {
    for (int i = 0; i < topo.size; ++i) {
      const auto& r = topo.ref6[static_cast<std::size_t>(i)];
      pts_[static_cast<std::size_t>(i)] = {ratio<S>(r[0], 6), ratio<S>(r[1], 6)};
    }
    for (auto& row : side_) row.fill(2);
  }

  // Default limit convention: approach from the barycenter's direction, then
  // two fixed independent directions of the barycentric frame.
  static std::vector<Point2<S>> default_directions(const Point2<S>& x) {
    const Point2<S> center{ratio<S>(1, 3), ratio<S>(1, 3)};
    std::vector<Point2<S>> dirs;
    Point2<S> toward = center - x;
    if (!(is_zero(toward.x) && is_zero(toward.y))) dirs.push_back(toward);
    dirs.push_back({ratio<S>(3), ratio<S>(1)});
    dirs.push_back({ratio<S>(-1), ratio<S>(3)});
    return dirs;
  }

  const Point2<S>& point() const { return x_; }

  S value(const KnotVector& kv) {
    if (kv.total() < 3) return S(0);
    return rec(kv);
  }

  S value(const SplineCombination<S>& comb) {
    S acc{0};
    for (const auto& t : comb.terms()) acc += t.coeff * value(t.knots);
    return acc;
  }

  // Sign of orient(p_a, p_b, x + perturbation).
  int side(int a, int b) {
    auto& cached = side_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    if (cached != 2) return cached;
    const Point2<S>& pa = pts_[static_cast<std::size_t>(a)];
    const Point2<S> e = pts_[static_cast<std::size_t>(b)] - pa;
    int s = sign_of(cross(e, x_ - pa));
    for (std::size_t i = 0; s == 0 && i < dirs_.size(); ++i) s = sign_of(cross(e, dirs_[i]));
    cached = static_cast<signed char>(s);
    side_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = static_cast<signed char>(-s);
    return s;
  }

  // True when the unperturbed point lies on the line through two slots.
  bool on_line(int a, int b) const {
    const Point2<S>& pa = pts_[static_cast<std::size_t>(a)];
    return sign_of(cross(pts_[static_cast<std::size_t>(b)] - pa, x_ - pa)) == 0;
  }

 private:
  S rec(const KnotVector& kv) {
    const std::uint64_t key = kv.key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    S v = compute(kv);
    memo_.emplace(key, v);
    return v;
  }

  S compute(const KnotVector& kv) {
    const unsigned mask = kv.positive_mask();
    const auto& piv = topo_->pivot_for(mask);
    if (piv[0] < 0) return S(0);  // collinear knots: null-set support
    const int d = kv.degree();
    if (d == 0) {
      if (kv[piv[0]] != 1 || kv[piv[1]] != 1 || kv[piv[2]] != 1) return S(0);
      const bool inside = side(piv[0], piv[1]) > 0 && side(piv[1], piv[2]) > 0 && side(piv[2], piv[0]) > 0;
      if (!inside) return S(0);
      return ratio<S>(SplitTopology::kTriangleCross6, topo_->cross6(piv[0], piv[1], piv[2]));
    }
    const auto& beta = weights(piv);
    S acc{0};
    for (int t = 0; t < 3; ++t) {
      if (is_zero(beta[static_cast<std::size_t>(t)])) continue;
      acc += beta[static_cast<std::size_t>(t)] * rec(kv.with_delta(piv[static_cast<std::size_t>(t)], -1));
    }
    return acc;
  }

  // Barycentric coordinates of x with respect to the pivot triple.
  const std::array<S, 3>& weights(const std::array<int, 3>& piv) {
    const int id = (piv[0] * kMaxSlots + piv[1]) * kMaxSlots + piv[2];
    if (auto it = beta_.find(id); it != beta_.end()) return it->second;
    const Point2<S>& a = pts_[static_cast<std::size_t>(piv[0])];
    const Point2<S> eb = pts_[static_cast<std::size_t>(piv[1])] - a;
    const Point2<S> ec = pts_[static_cast<std::size_t>(piv[2])] - a;
    const Point2<S> dx = x_ - a;
    const S det = cross(eb, ec);
    std::array<S, 3> w;
    w[1] = cross(dx, ec) / det;
    w[2] = cross(eb, dx) / det;
    w[0] = S(1) - w[1] - w[2];
    return beta_.emplace(id, std::move(w)).first->second;
  }

  const SplitTopology* topo_;
  Point2<S> x_;
  std::vector<Point2<S>> dirs_;
  std::array<Point2<S>, kMaxSlots> pts_{};
  std::array<std::array<signed char, kMaxSlots>, kMaxSlots> side_{};
  std::unordered_map<std::uint64_t, S> memo_;
  std::unordered_map<int, std::array<S, 3>> beta_;
};

template <class S>
Point2<S> frame_point(const Barycentric<S>& a) {
  return {a[0], a[1]};
}

// Value at a point given by barycentric coordinates, default limit convention.
template <class S>
S eval_barycentric(const SplitTopology& topo, const KnotVector& kv, const Barycentric<S>& a) {
  Point2<S> x = frame_point(a);
  PointEvaluator<S> ev(topo, x, PointEvaluator<S>::default_directions(x));
  return ev.value(kv);
}

template <class S>
S eval(const SimplexSpline<S>& s, const Point2<S>& x) {
  return eval_barycentric(*s.split().topo, s.knots(), barycentric(s.split().triangle, x));
}

template <class S>
S eval(const SplineCombination<S>& c, const Point2<S>& x) {
  Point2<S> r = frame_point(barycentric(c.split().triangle, x));
  PointEvaluator<S> ev(*c.split().topo, r, PointEvaluator<S>::default_directions(r));
  return ev.value(c);
}

// Limit value approached along the world direction `toward` (ties broken by
// the default convention).
template <class S>
S eval_limit(const SimplexSpline<S>& s, const Point2<S>& x, const Point2<S>& toward) {
  const auto& t = s.split().triangle;
  Point2<S> r = frame_point(barycentric(t, x));
  Barycentric<S> d = barycentric_direction(t, toward);
  std::vector<Point2<S>> dirs{{d[0], d[1]}};
  for (auto& extra : PointEvaluator<S>::default_directions(r)) dirs.push_back(extra);
  PointEvaluator<S> ev(*s.split().topo, r, std::move(dirs));
  return ev.value(s.knots());
}

// All one-sided limits at a point: one value per open sector cut out by the
// knot lines passing through it (a single value off knot lines). Distinct
// entries mean the spline has no well-defined value there.
template <class S>
std::vector<S> one_sided_limits(const SplitTopology& topo, const KnotVector& kv, const Barycentric<S>& a) {
  const Point2<S> x = frame_point(a);
  PointEvaluator<S> probe(topo, x, {});
  // Directions of knot lines through x.
  std::vector<Point2<S>> lines;
  const unsigned mask = kv.positive_mask();
  for (int i = 0; i < topo.size; ++i) {
    if (!(mask >> i & 1u)) continue;
    for (int j = i + 1; j < topo.size; ++j) {
      if (!(mask >> j & 1u)) continue;
      if (!probe.on_line(i, j)) continue;
      const auto& ri = topo.ref6[static_cast<std::size_t>(i)];
      const auto& rj = topo.ref6[static_cast<std::size_t>(j)];
      Point2<S> dir{ratio<S>(rj[0] - ri[0]), ratio<S>(rj[1] - ri[1])};
      bool dup = false;
      for (const auto& l : lines) dup = dup || sign_of(cross(l, dir)) == 0;
      if (!dup) lines.push_back(dir);
    }
  }
  if (lines.empty()) {
    PointEvaluator<S> ev(topo, x, PointEvaluator<S>::default_directions(x));
    return {ev.value(kv)};
  }
  // Rays in angular order, then one interior direction per sector.
  std::vector<Point2<S>> rays;
  for (const auto& l : lines) {
    rays.push_back(l);
    rays.push_back({-l.x, -l.y});
  }
  auto half = [](const Point2<S>& p) { return sign_of(p.y) > 0 || (sign_of(p.y) == 0 && sign_of(p.x) > 0) ? 0 : 1; };
  std::sort(rays.begin(), rays.end(), [&](const Point2<S>& p, const Point2<S>& q) {
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    return sign_of(cross(p, q)) > 0;
  });
  std::vector<S> out;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const Point2<S>& p = rays[i];
    const Point2<S>& q = rays[(i + 1) % rays.size()];
    Point2<S> mid = sign_of(cross(p, q)) == 0 ? Point2<S>{-p.y, p.x} : p + q;
    PointEvaluator<S> ev(topo, x, {mid});
    out.push_back(ev.value(kv));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Calculus on knot vectors

// One derivative step in a direction given in the barycentric frame:
// d/du N_P = d * sum alpha_i N_{P \ p_i}, u = sum alpha_i p_i, sum alpha_i = 0,
// with alpha supported on the max-area pivot triple. Terms with degenerate
// support vanish off knot lines and are dropped.
template <class S>
void differentiate_term(const SplitTopology& topo, const S& coeff, const KnotVector& kv, const Point2<S>& u,
                        std::map<KnotVector, S>& out) {
  const int d = kv.degree();
  if (d <= 0) return;
  const auto& piv = topo.pivot_for(kv.positive_mask());
  if (piv[0] < 0) return;
  auto p = [&](int slot) {
    const auto& r = topo.ref6[static_cast<std::size_t>(slot)];
    return Point2<S>{ratio<S>(r[0], 6), ratio<S>(r[1], 6)};
  };
  const Point2<S> a = p(piv[0]);
  const Point2<S> eb = p(piv[1]) - a;
  const Point2<S> ec = p(piv[2]) - a;
  const S det = cross(eb, ec);
  std::array<S, 3> alpha;
  alpha[1] = cross(u, ec) / det;
  alpha[2] = cross(eb, u) / det;
  alpha[0] = -alpha[1] - alpha[2];
  for (int t = 0; t < 3; ++t) {
    const S& al = alpha[static_cast<std::size_t>(t)];
    if (is_zero(al)) continue;
    KnotVector child = kv.with_delta(piv[static_cast<std::size_t>(t)], -1);
    if (!child.has_full_support()) continue;
    S c = coeff * S(d) * al;
    auto [it, fresh] = out.emplace(child, c);
    if (!fresh) it->second += c;
  }
}

template <class S>
SplineCombination<S> derivative_frame(const SplineCombination<S>& c, const Point2<S>& u_frame, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (is_zero(u_frame.x) && is_zero(u_frame.y)) throw std::invalid_argument("zero direction vector");
  std::vector<SplineTerm<S>> current = c.terms();
  for (int k = 0; k < order; ++k) {
    std::map<KnotVector, S> next;
    for (const auto& t : current) differentiate_term(*c.split().topo, t.coeff, t.knots, u_frame, next);
    current.clear();
    for (auto it = next.rbegin(); it != next.rend(); ++it) {
      if (!is_zero(it->second)) current.push_back({it->second, it->first});
    }
  }
  SplineCombination<S> out(c.split());
  for (const auto& t : current) out.add(t.coeff, t.knots);
  return out;
}

template <class S>
SplineCombination<S> as_combination(const SimplexSpline<S>& s) {
  SplineCombination<S> c(s.split());
  c.add(S(1), s.knots());
  return c;
}

// order-th directional derivative along the world vector u. The result has
// degree d - order; it is the empty combination when order > d.
template <class S>
SplineCombination<S> derivative(const SimplexSpline<S>& s, const Point2<S>& u, int order = 1) {
  if (order < 1) throw std::invalid_argument("derivative order must be at least 1");
  if (is_zero(u.x) && is_zero(u.y)) throw std::invalid_argument("zero direction vector");
  Barycentric<S> du = barycentric_direction(s.split().triangle, u);
  return derivative_frame(as_combination(s), Point2<S>{du[0], du[1]}, order);
}

template <class S>
SplineCombination<S> derivative(const SplineCombination<S>& c, const Point2<S>& u, int order = 1) {
  if (order < 1) throw std::invalid_argument("derivative order must be at least 1");
  if (is_zero(u.x) && is_zero(u.y)) throw std::invalid_argument("zero direction vector");
  Barycentric<S> du = barycentric_direction(c.split().triangle, u);
  return derivative_frame(c, Point2<S>{du[0], du[1]}, order);
}

// Knot insertion with explicit weights gamma over the slots:
// N_P = sum gamma_i N_{P + y - p_i}, requiring sum gamma_i = 1,
// y = sum gamma_i p_i, and gamma_i != 0 only where P has a knot.
template <class S>
SplineCombination<S> knot_insert(const SimplexSpline<S>& s, int slot, const std::vector<S>& gamma) {
  const SplitTopology& topo = *s.split().topo;
  if (slot < 0 || slot >= topo.size) throw std::invalid_argument("knot slot out of range");
  if (static_cast<int>(gamma.size()) != topo.size) throw std::invalid_argument("gamma needs one entry per slot");
  S sum{0};
  Point2<S> comb{S(0), S(0)};
  for (int i = 0; i < topo.size; ++i) {
    const S& g = gamma[static_cast<std::size_t>(i)];
    if (is_zero(g)) continue;
    if (s.knots()[i] == 0) throw std::invalid_argument("gamma is non-zero on a slot without knots");
    sum += g;
    const auto& r = topo.ref6[static_cast<std::size_t>(i)];
    comb = comb + g * Point2<S>{ratio<S>(r[0], 6), ratio<S>(r[1], 6)};
  }
  const auto& ry = topo.ref6[static_cast<std::size_t>(slot)];
  Point2<S> target{ratio<S>(ry[0], 6), ratio<S>(ry[1], 6)};
  Point2<S> gap = comb - target;
  if (!is_zero(sum - S(1)) || !is_zero(gap.x) || !is_zero(gap.y)) {
    throw std::invalid_argument("gamma must be an affine combination of the knots reproducing the new knot");
  }
  SplineCombination<S> out(s.split());
  for (int i = 0; i < topo.size; ++i) {
    const S& g = gamma[static_cast<std::size_t>(i)];
    if (is_zero(g)) continue;
    out.add(g, s.knots().with_delta(i, -1).with_delta(slot, +1));
  }
  return out;
}

// Knot insertion with the canonical gamma: the identity when the slot already
// carries a knot, else the two endpoints of the first knot segment containing
// it, else the max-area pivot triple.
template <class S>
SplineCombination<S> knot_insert(const SimplexSpline<S>& s, int slot) {
  const SplitTopology& topo = *s.split().topo;
  if (slot < 0 || slot >= topo.size) throw std::invalid_argument("knot slot out of range");
  std::vector<S> gamma(static_cast<std::size_t>(topo.size), S(0));
  if (s.knots()[slot] > 0) {
    gamma[static_cast<std::size_t>(slot)] = S(1);
    return knot_insert(s, slot, gamma);
  }
  const auto& y = topo.ref6[static_cast<std::size_t>(slot)];
  const unsigned mask = s.knots().positive_mask();
  for (int a = 0; a < topo.size; ++a) {
    if (!(mask >> a & 1u)) continue;
    for (int b = a + 1; b < topo.size; ++b) {
      if (!(mask >> b & 1u)) continue;
      if (topo.cross6(a, b, slot) != 0) continue;
      const auto& pa = topo.ref6[static_cast<std::size_t>(a)];
      const auto& pb = topo.ref6[static_cast<std::size_t>(b)];
      // Parameter of y along a -> b, using the coordinate with larger spread.
      const int c = std::labs(pb[0] - pa[0]) >= std::labs(pb[1] - pa[1]) ? 0 : 1;
      const long num = y[static_cast<std::size_t>(c)] - pa[static_cast<std::size_t>(c)];
      const long den = pb[static_cast<std::size_t>(c)] - pa[static_cast<std::size_t>(c)];
      if (den == 0 || num * den <= 0 || std::labs(num) >= std::labs(den)) continue;
      gamma[static_cast<std::size_t>(a)] = ratio<S>(den - num, den);
      gamma[static_cast<std::size_t>(b)] = ratio<S>(num, den);
      return knot_insert(s, slot, gamma);
    }
  }
  const auto& piv = topo.pivot_for(mask);
  const long det = topo.cross6(piv[0], piv[1], piv[2]);
  gamma[static_cast<std::size_t>(piv[0])] = ratio<S>(topo.cross6(slot, piv[1], piv[2]), det);
  gamma[static_cast<std::size_t>(piv[1])] = ratio<S>(topo.cross6(piv[0], slot, piv[2]), det);
  gamma[static_cast<std::size_t>(piv[2])] = ratio<S>(topo.cross6(piv[0], piv[1], slot), det);
  return knot_insert(s, slot, gamma);
}

// Inserts a world point, which must coincide with a configuration point.
template <class S>
SplineCombination<S> knot_insert(const SimplexSpline<S>& s, const Point2<S>& y) {
  const auto& split = s.split();
  for (int i = 0; i < split.size(); ++i) {
    Point2<S> d = split.point(i) - y;
    if (is_zero(d.x) && is_zero(d.y)) return knot_insert(s, i);
  }
  throw std::invalid_argument("inserted knot must be a configuration point of the split");
}

template <class S>
S integral(const SimplexSpline<S>& s) {
  return s.normalization();
}

// ---------------------------------------------------------------------------
// Smoothness across micro-edges

// Evaluates, at 2d+1 interior points of a micro-edge, the one-sided limits of
// derivatives of increasing order along the edge normal.
template <class S>
class EdgeJumpProbe {
 public:
  EdgeJumpProbe(const SimplexSpline<S>& s, int edge) : spline_(s) {
    const SplitTopology& topo = *s.split().topo;
    if (edge < 0 || edge >= static_cast<int>(topo.micro_edges.size())) {
      throw std::invalid_argument("not an interior micro-edge of the split");
    }
    const MicroEdge& e = topo.micro_edges[static_cast<std::size_t>(edge)];
    const Point2<S> a = s.split().ref_point(e.from);
    const Point2<S> b = s.split().ref_point(e.to);
    const Point2<S> along = b - a;
    normal_ = {-along.y, along.x};
    const int d = s.degree();
    const int samples = 2 * d + 1;
    // Crossings of the edge with other configuration lines sit at parameters
    // whose denominators are below 100; the 1009 keeps every sample off them.
    for (int k = 1; k <= samples; ++k) {
      Point2<S> x = a + ratio<S>(1009L * k + 1, 1009L * (samples + 1)) * along;
      points_.push_back(x);
      plus_.emplace_back(topo, x, std::vector<Point2<S>>{normal_, along});
      minus_.emplace_back(topo, x, std::vector<Point2<S>>{Point2<S>{-normal_.x, -normal_.y}, along});
    }
  }

  std::size_t samples() const { return points_.size(); }
  const Point2<S>& sample(std::size_t i) const { return points_[i]; }

  // k-th normal derivative on the positive side minus the negative side, at
  // every sample point.
  std::vector<S> jumps(int k) {
    SplineCombination<S> c = as_combination(spline_);
    if (k > 0) c = derivative_frame(c, normal_, k);
    std::vector<S> out;
    out.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) out.push_back(plus_[i].value(c) - minus_[i].value(c));
    return out;
  }

 private:
  SimplexSpline<S> spline_;
  Point2<S> normal_;
  std::vector<Point2<S>> points_;
  std::vector<PointEvaluator<S>> plus_;
  std::vector<PointEvaluator<S>> minus_;
};

template <class S>
bool negligible_jump(const S& v, double tol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return is_zero(v);
  } else {
    return std::fabs(v) <= tol;
  }
}

// Smoothness order rho with s in C^rho across the edge: (first k with a
// non-zero k-th jump) - 1, or d when the two sides are one polynomial.
// `tol` is the absolute jump threshold used by the float backend.
template <class S>
int jump_order(const SimplexSpline<S>& s, int edge, double tol = 1e-7) {
  EdgeJumpProbe<S> probe(s, edge);
  const int d = s.degree();
  for (int k = 0; k <= d; ++k) {
    for (const S& j : probe.jumps(k)) {
      if (!negligible_jump(j, tol)) return k - 1;
    }
  }
  return d;
}

}  // namespace ssq
