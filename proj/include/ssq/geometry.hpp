#pragma once

// Triangles, barycentric coordinates, the Clough-Tocher 3-split and the
// uniform Powell-Sabin 6-split, and expansion of symmetric node orbits.

#include "ssq/scalar.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ssq {

template <class S>
struct Point2 {
  S x{};
  S y{};

  friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(const S& s, const Point2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
};

template <class S>
S cross(const Point2<S>& a, const Point2<S>& b) {
  return a.x * b.y - a.y * b.x;
}

// Twice the signed area of (a, b, c); positive when counterclockwise.
template <class S>
S orient(const Point2<S>& a, const Point2<S>& b, const Point2<S>& c) {
  return cross(b - a, c - a);
}

template <class S>
struct Barycentric {
  std::array<S, 3> c{};

  const S& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  S& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  S sum() const { return c[0] + c[1] + c[2]; }
  friend bool operator==(const Barycentric& a, const Barycentric& b) { return a.c == b.c; }
};

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A non-degenerate triangle. Vertex labels are kept in the order given; the
// orientation sign is recorded and the stored area is always positive.
template <class S>
class Triangle {
 public:
  Triangle(Point2<S> v1, Point2<S> v2, Point2<S> v3) : v_{std::move(v1), std::move(v2), std::move(v3)} {
    S twice = orient(v_[0], v_[1], v_[2]);
    if constexpr (is_exact_v<S>) {
      if (is_zero(twice)) throw GeometryError("degenerate triangle (zero area)");
    } else {
      double scale = 0.0;
      for (int i = 0; i < 3; ++i) {
        Point2<S> e = v_[(i + 1) % 3] - v_[i];
        scale = std::max(scale, e.x * e.x + e.y * e.y);
      }
      if (!(std::fabs(twice) > 1e-14 * scale)) throw GeometryError("degenerate triangle (zero area)");
    }
    orientation_ = sign_of(twice) > 0 ? 1 : -1;
    twice_signed_area_ = twice;
    area_ = abs_value(twice) / S(2);
  }

  static Triangle reference() { return Triangle({S(0), S(0)}, {S(1), S(0)}, {S(0), S(1)}); }

  const Point2<S>& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
  const S& area() const { return area_; }
  const S& twice_signed_area() const { return twice_signed_area_; }
  int orientation() const { return orientation_; }
  Point2<S> barycenter() const {
    S third = ratio<S>(1, 3);
    return third * (v_[0] + v_[1] + v_[2]);
  }
  S diameter_squared() const {
    S best{0};
    for (int i = 0; i < 3; ++i) {
      Point2<S> e = v_[(i + 1) % 3] - v_[i];
      S len = e.x * e.x + e.y * e.y;
      if (len > best) best = len;
    }
    return best;
  }

 private:
  std::array<Point2<S>, 3> v_;
  S twice_signed_area_{};
  S area_{};
  int orientation_ = 1;
};

template <class S>
Barycentric<S> barycentric(const Triangle<S>& t, const Point2<S>& x) {
  const Point2<S> e2 = t.vertex(1) - t.vertex(0);
  const Point2<S> e3 = t.vertex(2) - t.vertex(0);
  const Point2<S> d = x - t.vertex(0);
  const S& det = t.twice_signed_area();
  Barycentric<S> a;
  a[1] = cross(d, e3) / det;
  a[2] = cross(e2, d) / det;
  a[0] = S(1) - a[1] - a[2];
  return a;
}

// Barycentric components of a displacement vector (they sum to zero).
template <class S>
Barycentric<S> barycentric_direction(const Triangle<S>& t, const Point2<S>& u) {
  const Point2<S> e2 = t.vertex(1) - t.vertex(0);
  const Point2<S> e3 = t.vertex(2) - t.vertex(0);
  const S& det = t.twice_signed_area();
  Barycentric<S> a;
  a[1] = cross(u, e3) / det;
  a[2] = cross(e2, u) / det;
  a[0] = -a[1] - a[2];
  return a;
}

template <class S>
Point2<S> point_from_barycentric(const Triangle<S>& t, const Barycentric<S>& a) {
  if constexpr (is_exact_v<S>) {
    if (a.sum() != S(1)) throw GeometryError("barycentric coordinates must sum to 1");
  } else {
    if (std::fabs(a.sum() - 1.0) > 1e-12) throw GeometryError("barycentric coordinates must sum to 1");
  }
  return a[0] * t.vertex(0) + a[1] * t.vertex(1) + a[2] * t.vertex(2);
}

enum class SplitKind { ct, ps };

inline std::string_view split_tag(SplitKind k) { return k == SplitKind::ct ? "ct" : "ps"; }

inline SplitKind parse_split_kind(std::string_view s) {
  if (s == "ct" || s == "CT") return SplitKind::ct;
  if (s == "ps" || s == "PS") return SplitKind::ps;
  throw std::invalid_argument("unknown split '" + std::string(s) + "' (expected ct or ps)");
}

inline constexpr int kMaxSlots = 7;

struct MicroEdge {
  int from;   // vertex or edge midpoint
  int to;     // always the barycenter slot
  int left;   // micro-triangle index on one side
  int right;  // micro-triangle index on the other side
};

// Combinatorial and frame-independent data of a split. Configuration points
// are stored in the barycentric frame (a1, a2) scaled by 6, so all of them
// have integer coordinates and every predicate on them is exact.
struct SplitTopology {
  SplitKind kind;
  int size;
  int center;
  std::array<std::array<long, 2>, kMaxSlots> ref6{};
  std::array<std::array<int, 3>, kMaxSlots> bary6{};
  std::array<std::string_view, kMaxSlots> names{};
  std::vector<std::array<int, 3>> micro_triangles;
  std::vector<MicroEdge> micro_edges;
  // Max-area affinely independent triple (counterclockwise) for each subset
  // of slots, indexed by bitmask; {-1,-1,-1} when the subset is collinear.
  std::vector<std::array<int, 3>> pivot;

  long cross6(int a, int b, int c) const {
    const auto& pa = ref6[static_cast<std::size_t>(a)];
    const auto& pb = ref6[static_cast<std::size_t>(b)];
    const auto& pc = ref6[static_cast<std::size_t>(c)];
    return (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0]);
  }

  // 72 * area in the barycentric frame; the full triangle gives 36.
  static constexpr long kTriangleCross6 = 36;

  const std::array<int, 3>& pivot_for(unsigned mask) const { return pivot[mask]; }

  static const SplitTopology& get(SplitKind kind) {
    static const SplitTopology ct = build(SplitKind::ct);
    static const SplitTopology ps = build(SplitKind::ps);
    return kind == SplitKind::ct ? ct : ps;
  }

 private:
  static SplitTopology build(SplitKind kind) {
    SplitTopology t{kind, 0, 0, {}, {}, {}, {}, {}, {}};
    auto add = [&t](std::string_view name, int a1, int a2, int a3) {
      auto i = static_cast<std::size_t>(t.size++);
      t.bary6[i] = {a1, a2, a3};
      t.ref6[i] = {a1, a2};
      t.names[i] = name;
    };
    add("p1", 6, 0, 0);
    add("p2", 0, 6, 0);
    add("p3", 0, 0, 6);
    if (kind == SplitKind::ct) {
      add("pc", 2, 2, 2);
      t.center = 3;
      t.micro_triangles = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
      t.micro_edges = {{0, 3, 2, 0}, {1, 3, 0, 1}, {2, 3, 1, 2}};
    } else {
      add("p12", 3, 3, 0);
      add("p23", 0, 3, 3);
      add("p31", 3, 0, 3);
      add("pc", 2, 2, 2);
      t.center = 6;
      t.micro_triangles = {{0, 3, 6}, {3, 1, 6}, {1, 4, 6}, {4, 2, 6}, {2, 5, 6}, {5, 0, 6}};
      t.micro_edges = {{0, 6, 5, 0}, {3, 6, 0, 1}, {1, 6, 1, 2}, {4, 6, 2, 3}, {2, 6, 3, 4}, {5, 6, 4, 5}};
    }
    const unsigned masks = 1u << t.size;
    t.pivot.assign(masks, {-1, -1, -1});
    for (unsigned m = 0; m < masks; ++m) {
      long best = 0;
      for (int a = 0; a < t.size; ++a) {
        if (!(m >> a & 1u)) continue;
        for (int b = a + 1; b < t.size; ++b) {
          if (!(m >> b & 1u)) continue;
          for (int c = b + 1; c < t.size; ++c) {
            if (!(m >> c & 1u)) continue;
            long area = t.cross6(a, b, c);
            long mag = area < 0 ? -area : area;
            if (mag > best) {
              best = mag;
              t.pivot[m] = area > 0 ? std::array<int, 3>{a, b, c} : std::array<int, 3>{a, c, b};
            }
          }
        }
      }
    }
    return t;
  }
};

// A macro-triangle together with its split.
template <class S>
struct SplitConfig {
  const SplitTopology* topo;
  Triangle<S> triangle;
  std::vector<Point2<S>> points;  // world coordinates, slot order of `topo`

  SplitKind kind() const { return topo->kind; }
  int size() const { return topo->size; }
  const Point2<S>& point(int slot) const { return points[static_cast<std::size_t>(slot)]; }
  const Point2<S>& center() const { return point(topo->center); }

  // Configuration point in the barycentric frame (a1, a2).
  Point2<S> ref_point(int slot) const {
    const auto& r = topo->ref6[static_cast<std::size_t>(slot)];
    return {ratio<S>(r[0], 6), ratio<S>(r[1], 6)};
  }

  S micro_area(int tri) const {
    const auto& v = topo->micro_triangles[static_cast<std::size_t>(tri)];
    return abs_value(orient(point(v[0]), point(v[1]), point(v[2]))) / S(2);
  }
};

template <class S>
SplitConfig<S> make_split(const Triangle<S>& t, SplitKind kind) {
  const SplitTopology& topo = SplitTopology::get(kind);
  std::vector<Point2<S>> pts;
  pts.reserve(static_cast<std::size_t>(topo.size));
  for (int i = 0; i < topo.size; ++i) {
    const auto& b = topo.bary6[static_cast<std::size_t>(i)];
    Barycentric<S> a{{ratio<S>(b[0], 6), ratio<S>(b[1], 6), ratio<S>(b[2], 6)}};
    if constexpr (is_exact_v<S>) {
      pts.push_back(point_from_barycentric(t, a));
    } else {
      pts.push_back(a[0] * t.vertex(0) + a[1] * t.vertex(1) + a[2] * t.vertex(2));
    }
  }
  return SplitConfig<S>{&topo, t, std::move(pts)};
}

// ---------------------------------------------------------------------------
// Symmetric orbits

enum class OrbitType : int { center = 0, median = 1, general = 2 };

template <class S>
struct Orbit {
  OrbitType type = OrbitType::center;
  S theta{};
  S eta{};
  S weight{};

  int node_count() const {
    switch (type) {
      case OrbitType::center: return 1;
      case OrbitType::median: return 3;
      case OrbitType::general: return 6;
    }
    return 0;
  }
};

template <class S>
bool same_value(const S& a, const S& b) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return std::fabs(a - b) <= 1e-14;
  }
}

// Throws GeometryError when an orbit degenerates to a smaller type.
template <class S>
void validate_orbit(const Orbit<S>& o) {
  const S third = ratio<S>(1, 3);
  if (o.type == OrbitType::median && same_value(o.theta, third)) {
    throw GeometryError("type-1 orbit with theta = 1/3 coincides with the type-0 orbit");
  }
  if (o.type == OrbitType::general) {
    const S zeta = S(1) - o.theta - o.eta;
    if (same_value(o.theta, o.eta) || same_value(o.theta, zeta) || same_value(o.eta, zeta)) {
      throw GeometryError("type-2 orbit needs pairwise distinct barycentric coordinates");
    }
  }
}

// Barycentric coordinates of the orbit's nodes: (1-2t,t,t), (t,1-2t,t),
// (t,t,1-2t) for type 1 and the six permutations of (t, e, 1-t-e) in
// lexicographic index order for type 2.
template <class S>
std::vector<Barycentric<S>> orbit_nodes(const Orbit<S>& o) {
  validate_orbit(o);
  std::vector<Barycentric<S>> out;
  switch (o.type) {
    case OrbitType::center: {
      const S third = ratio<S>(1, 3);
      out.push_back({{third, third, third}});
      break;
    }
    case OrbitType::median: {
      const S big = S(1) - S(2) * o.theta;
      out.push_back({{big, o.theta, o.theta}});
      out.push_back({{o.theta, big, o.theta}});
      out.push_back({{o.theta, o.theta, big}});
      break;
    }
    case OrbitType::general: {
      const std::array<S, 3> v{o.theta, o.eta, S(1) - o.theta - o.eta};
      static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      for (const auto& p : perms) out.push_back({{v[p[0]], v[p[1]], v[p[2]]}});
      break;
    }
  }
  return out;
}

template <class S>
std::vector<std::pair<Point2<S>, S>> expand_orbit(const Triangle<S>& t, const Orbit<S>& o) {
  std::vector<std::pair<Point2<S>, S>> out;
  for (const auto& a : orbit_nodes(o)) out.emplace_back(point_from_barycentric(t, a), o.weight);
  return out;
}

}  // namespace ssq
