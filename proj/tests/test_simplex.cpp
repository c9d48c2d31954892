#include "support.hpp"

#include "ssq/simplex.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <thread>

using namespace ssq;
using namespace ssq::testing;

namespace {

template <class S = Q>
SimplexSpline<S> spline(const Triangle<S>& t, const KnotVector& kv) {
  return SimplexSpline<S>(make_split(t, kv.kind()), kv);
}

Q eval_at(const SimplexSpline<Q>& s, const Barycentric<Q>& a) {
  return eval(s, point_from_barycentric(s.split().triangle, a));
}

Q eval_at(const SplineCombination<Q>& c, const Barycentric<Q>& a) {
  return eval(c, point_from_barycentric(c.split().triangle, a));
}

// All knot vectors of a split with the given degree and a 2-d support.
std::vector<KnotVector> all_knot_vectors(SplitKind kind, int degree) {
  const int slots = kind == SplitKind::ct ? 4 : 6;
  std::vector<KnotVector> out;
  std::vector<int> m(static_cast<std::size_t>(slots), 0);
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == slots - 1) {
      m.back() = left;
      KnotVector kv(kind, m);
      if (kv.has_full_support()) out.push_back(kv);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      m[static_cast<std::size_t>(slot)] = v;
      self(self, slot + 1, left - v);
    }
  };
  rec(rec, 0, degree + 3);
  return out;
}

}  // namespace

TEST(Eval, ConstantOnWholeTriangle) {
  EXPECT_EQ(eval(spline(unit_triangle(), KnotVector::ct(1, 1, 1, 0)), Point2<Q>{q(1, 4), q(1, 4)}), 1);
}

TEST(Eval, ConstantOnMicroTriangle) {
  auto s = spline(unit_triangle(), KnotVector::ct(1, 1, 0, 1));
  EXPECT_EQ(eval(s, Point2<Q>{q(1, 2), q(1, 10)}), 3);
  EXPECT_EQ(eval(s, Point2<Q>{q(1, 10), q(1, 2)}), 0);
}

TEST(Eval, CentralBernsteinAtBarycenter) {
  auto s = spline(scalene(), KnotVector::ct(2, 2, 2, 0));
  EXPECT_EQ(eval(s, scalene().barycenter()), q(2, 9));
}

TEST(Eval, PowellSabinCubicOnHalfTriangle) {
  auto s = spline(unit_triangle(), KnotVector::ps(4, 0, 1, 1, 0, 0));
  EXPECT_EQ(eval_at(s, {{q(5, 8), q(1, 8), q(1, 4)}}), q(1, 4));
}

TEST(Eval, HatApexAtBarycenter) {
  auto s = spline(unit_triangle(), KnotVector::ct(1, 1, 1, 1));
  EXPECT_EQ(eval(s, Point2<Q>{q(1, 3), q(1, 3)}), 1);
  EXPECT_EQ(eval_at(s, {{q(1, 2), q(1, 3), q(1, 6)}}), q(1, 2));
}

TEST(Eval, HatMatchesClosedForm) {
  // The degree-1 spline with a barycenter knot is 3 min(a1, a2, a3).
  auto s = spline(scalene(), KnotVector::ct(1, 1, 1, 1));
  RationalSource src(21);
  for (int n = 0; n < 200; ++n) {
    auto a = src.interior_barycentric();
    EXPECT_EQ(eval_at(s, a), 3 * std::min({a[0], a[1], a[2]}));
  }
}

TEST(Eval, IndicatorOfMicroTriangle) {
  auto s = spline(obtuse(), KnotVector::ct(1, 0, 1, 1));
  RationalSource src(22);
  for (int n = 0; n < 200; ++n) {
    auto a = src.interior_barycentric();
    // Inside the micro-triangle (p3, p1, pc) iff a2 is the smallest coordinate.
    const bool inside = a[1] < a[0] && a[1] < a[2];
    const bool on_boundary = a[1] == a[0] || a[1] == a[2];
    if (!on_boundary) EXPECT_EQ(eval_at(s, a), inside ? 3 : 0);
  }
}

TEST(Eval, PowellSabinCubicIdentityOnBothHalves) {
  auto s = spline(scalene(), KnotVector::ps(4, 0, 1, 1, 0, 0));
  RationalSource src(23);
  for (int n = 0; n < 300; ++n) {
    auto a = src.interior_barycentric();
    const Q diff = a[0] - a[1];
    if (diff > 0) {
      EXPECT_EQ(eval_at(s, a), 2 * diff * diff * diff);
    } else if (diff < 0) {
      EXPECT_EQ(eval_at(s, a), 0);
    }
  }
}

TEST(Eval, ZeroOutsideTriangle) {
  auto s = spline(unit_triangle(), KnotVector::ct(2, 2, 2, 0));
  EXPECT_EQ(eval(s, Point2<Q>{q(2), q(2)}), 0);
  EXPECT_EQ(eval(s, Point2<Q>{q(-1, 10), q(1, 2)}), 0);
}

TEST(Eval, AgreesWithBernsteinClosedForm) {
  RationalSource src(24);
  std::vector<Barycentric<Q>> pts;
  for (int n = 0; n < 40; ++n) pts.push_back(src.interior_barycentric());
  for (int d = 0; d <= 6; ++d) {
    for (const auto& [i, j, k] : detail::bernstein_indices(d)) {
      auto ct = spline(scalene(), KnotVector::ct(i, j, k, 0));
      auto ps = spline(scalene(), KnotVector::ps(i, j, k, 0, 0, 0));
      for (const auto& a : pts) {
        const Q b = bernstein_eval(i, j, k, a);
        ASSERT_EQ(eval_at(ct, a), b);
        ASSERT_EQ(eval_at(ps, a), b);
      }
    }
  }
}

TEST(Eval, FloatBackendMatchesRational) {
  RationalSource src(25);
  const auto td = to_backend<double>(scalene());
  for (const auto& kv : {KnotVector::ct(1, 2, 2, 1), KnotVector::ct(3, 2, 0, 1), KnotVector::ps(1, 2, 1, 0, 1, 0),
                         KnotVector::ps(2, 1, 1, 1, 1, 1, 1)}) {
    auto sq = spline(scalene(), kv);
    auto sd = spline(td, kv);
    for (int n = 0; n < 50; ++n) {
      auto a = src.interior_barycentric();
      const double want = to_double(eval_at(sq, a));
      const double got = eval(sd, point_from_barycentric(td, bary_to_double(a)));
      EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::fabs(want))) << kv.to_string();
    }
  }
}

TEST(Eval, NonNegative) {
  RationalSource src(26);
  for (auto kind : {SplitKind::ct, SplitKind::ps}) {
    for (int d = 0; d <= 3; ++d) {
      for (const auto& kv : all_knot_vectors(kind, d)) {
        auto s = spline(scalene(), kv);
        for (int n = 0; n < 5; ++n) ASSERT_GE(eval_at(s, src.interior_barycentric()), 0) << kv.to_string();
      }
    }
  }
}

TEST(Eval, AffineInvariant) {
  RationalSource src(27);
  for (const auto& kv : {KnotVector::ct(2, 1, 2, 1), KnotVector::ps(1, 1, 2, 1, 0, 1)}) {
    auto s1 = spline(unit_triangle(), kv);
    auto s2 = spline(reflected(), kv);
    for (int n = 0; n < 50; ++n) {
      auto a = src.interior_barycentric();
      EXPECT_EQ(eval_at(s1, a), eval_at(s2, a));
    }
    EXPECT_EQ(integral(s2) / integral(s1), reflected().area() / unit_triangle().area());
  }
}

TEST(Eval, ConcurrentCallersAgree) {
  auto s = spline(scalene(), KnotVector::ct(3, 3, 2, 1));
  RationalSource src(28);
  std::vector<Barycentric<Q>> pts;
  for (int n = 0; n < 40; ++n) pts.push_back(src.interior_barycentric());
  std::vector<Q> serial;
  for (const auto& a : pts) serial.push_back(eval_at(s, a));
  std::vector<std::vector<Q>> results(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t) {
    threads.emplace_back([&, t] {
      for (const auto& a : pts) results[t].push_back(eval_at(s, a));
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& r : results) EXPECT_EQ(r, serial);
}

TEST(Eval, RejectsDegenerateSupport) {
  EXPECT_THROW(spline(unit_triangle(), KnotVector::ct(2, 2, 0, 0)), SplineError);
  EXPECT_THROW(spline(unit_triangle(), KnotVector::ct(1, 1, 0, 0)), SplineError);
  EXPECT_THROW(KnotVector(SplitKind::ct, {1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(spline(unit_triangle(), KnotVector::ps(2, 0, 0, 0, 2, 0)), SplineError);
}

TEST(KnotVectorText, RoundTrip) {
  for (const auto& kv : {KnotVector::ct(1, 2, 2, 1), KnotVector::ps(4, 0, 1, 1, 0, 0), KnotVector::ps(1, 1, 1, 0, 0, 0, 2)}) {
    EXPECT_EQ(parse_knot_vector(kv.to_string()), kv);
  }
  EXPECT_EQ(KnotVector::ct(1, 2, 2, 1).to_string(), "ct:(1,2,2,1)");
  EXPECT_EQ(KnotVector::ps(4, 0, 1, 1, 0, 0).to_string(), "ps:(4,0,1,1,0,0)");
  EXPECT_THROW(parse_knot_vector("ct:(1,2,2)"), std::invalid_argument);
  EXPECT_THROW(parse_knot_vector("xx:(1,2,2,1)"), std::invalid_argument);
}

TEST(Derivative, LinearBernsteinAlongEdge) {
  auto t = scalene();
  auto s = spline(t, KnotVector::ct(1, 1, 2, 0));
  auto d = derivative(s, t.vertex(2) - t.vertex(0));
  RationalSource src(31);
  for (int n = 0; n < 50; ++n) EXPECT_EQ(eval_at(d, src.interior_barycentric()), 1);
}

TEST(Derivative, OrderAboveDegreeVanishes) {
  auto t = scalene();
  RationalSource src(32);
  for (const auto& kv : {KnotVector::ct(1, 2, 2, 1), KnotVector::ps(2, 0, 1, 2, 0, 0), KnotVector::ct(2, 2, 2, 0)}) {
    auto s = spline(t, kv);
    auto d = derivative(s, Point2<Q>{q(1), q(-2, 3)}, kv.degree() + 1);
    for (int n = 0; n < 30; ++n) EXPECT_EQ(eval_at(d, src.interior_barycentric()), 0) << kv.to_string();
  }
}

TEST(Derivative, MatchesFiniteDifferences) {
  const auto t = to_backend<double>(scalene());
  auto s = spline(t, KnotVector::ct(1, 2, 2, 1));
  const Point2<double> u = t.barycenter() - t.vertex(0);
  auto d1 = derivative(s, u);
  const double h = 1e-5 * std::sqrt(t.diameter_squared());
  const double len = std::sqrt(u.x * u.x + u.y * u.y);
  const Point2<double> step = (h / len) * u;
  RationalSource src(33);
  int checked = 0;
  while (checked < 50) {
    // Interior of micro-triangle (p1, p2, pc): a3 is the smallest coordinate.
    auto a = bary_to_double(src.interior_barycentric());
    if (!(a[2] < a[0] - 1e-3 && a[2] < a[1] - 1e-3)) continue;
    const Point2<double> x = point_from_barycentric(t, a);
    const double fd = (eval(s, x + step) - eval(s, x - step)) / (2 * h) * len;
    const double an = eval(d1, x);
    EXPECT_NEAR(an, fd, 1e-7 * std::max(1.0, std::fabs(an)));
    ++checked;
  }
}

TEST(Derivative, SecondOrderMatchesFiniteDifferences) {
  const auto t = to_backend<double>(obtuse());
  auto s = spline(t, KnotVector::ps(2, 1, 1, 1, 1, 0));
  const Point2<double> u{0.6, 0.8};
  auto d2 = derivative(s, u, 2);
  const double h = 1e-4;
  RationalSource src(34);
  for (int n = 0; n < 30; ++n) {
    auto a = bary_to_double(src.interior_barycentric());
    const Point2<double> x = point_from_barycentric(t, a);
    // Keep the stencil inside one polynomial piece: skip points near knot lines.
    bool near_line = false;
    const auto& topo = *s.split().topo;
    for (int i = 0; i < topo.size && !near_line; ++i) {
      for (int j = i + 1; j < topo.size && !near_line; ++j) {
        const auto& pi = topo.ref6[static_cast<std::size_t>(i)];
        const auto& pj = topo.ref6[static_cast<std::size_t>(j)];
        const double ex = (pj[0] - pi[0]) / 6.0, ey = (pj[1] - pi[1]) / 6.0;
        const double dx = a[0] - pi[0] / 6.0, dy = a[1] - pi[1] / 6.0;
        near_line = std::fabs(ex * dy - ey * dx) / std::hypot(ex, ey) < 1e-2;
      }
    }
    if (near_line) continue;
    const double fd = (eval(s, x + h * u) - 2 * eval(s, x) + eval(s, x - h * u)) / (h * h);
    EXPECT_NEAR(eval(d2, x), fd, 1e-4 * std::max(1.0, std::fabs(fd)));
  }
}

TEST(Derivative, RejectsZeroDirection) {
  auto s = spline(unit_triangle(), KnotVector::ct(1, 2, 2, 1));
  EXPECT_THROW(derivative(s, Point2<Q>{0, 0}), std::invalid_argument);
}

TEST(KnotInsertion, BarycenterIntoCentralBernstein) {
  auto s = spline(unit_triangle(), KnotVector::ct(2, 2, 2, 0));
  auto c = knot_insert(s, s.split().center());
  c.sort_terms();
  ASSERT_EQ(c.terms().size(), 3u);
  EXPECT_EQ(c.terms()[0].knots, KnotVector::ct(1, 2, 2, 1));
  EXPECT_EQ(c.terms()[1].knots, KnotVector::ct(2, 1, 2, 1));
  EXPECT_EQ(c.terms()[2].knots, KnotVector::ct(2, 2, 1, 1));
  for (const auto& term : c.terms()) EXPECT_EQ(term.coeff, q(1, 3));
}

TEST(KnotInsertion, EdgeMidpointIntoPowellSabinBernstein) {
  auto s = spline(unit_triangle(), KnotVector::ps(1, 2, 2, 0, 0, 0));
  auto c = knot_insert(s, s.split().point(4));
  c.sort_terms();
  ASSERT_EQ(c.terms().size(), 2u);
  EXPECT_EQ(c.terms()[0].knots, KnotVector::ps(1, 1, 2, 0, 1, 0));
  EXPECT_EQ(c.terms()[1].knots, KnotVector::ps(1, 2, 1, 0, 1, 0));
  for (const auto& term : c.terms()) EXPECT_EQ(term.coeff, q(1, 2));
}

TEST(KnotInsertion, IdentityAtExistingKnot) {
  auto s = spline(unit_triangle(), KnotVector::ct(2, 1, 2, 1));
  auto c = knot_insert(s, 0, std::vector<Q>{1, 0, 0, 0});
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_EQ(c.terms()[0].coeff, 1);
  EXPECT_EQ(c.terms()[0].knots, s.knots());
}

TEST(KnotInsertion, RejectsNonConfigurationPoint) {
  auto s = spline(unit_triangle(), KnotVector::ct(2, 2, 2, 0));
  EXPECT_THROW(knot_insert(s, Point2<Q>{q(1, 7), q(1, 7)}), std::invalid_argument);
}

TEST(KnotInsertion, RejectsGammaThatDoesNotReproducePoint) {
  auto s = spline(unit_triangle(), KnotVector::ct(2, 2, 2, 0));
  EXPECT_THROW(knot_insert(s, 3, std::vector<Q>{1, 0, 0, 0}), std::invalid_argument);
}

TEST(KnotInsertion, PointwiseIdentity) {
  RationalSource src(41);
  for (auto kind : {SplitKind::ct, SplitKind::ps}) {
    for (int d = 0; d <= 3; ++d) {
      for (const auto& kv : all_knot_vectors(kind, d)) {
        auto s = spline(scalene(), kv);
        for (int slot = 0; slot < s.split().size(); ++slot) {
          auto c = knot_insert(s, slot);
          Q gsum = 0;
          for (const auto& term : c.terms()) gsum += term.coeff;
          if (!c.terms().empty()) EXPECT_EQ(gsum, 1);
          for (int n = 0; n < 3; ++n) {
            auto a = src.interior_barycentric();
            ASSERT_EQ(eval_at(c, a), eval_at(s, a)) << kv.to_string() << " slot " << slot;
          }
        }
      }
    }
  }
}

TEST(Integral, ClosedForm) {
  const auto t = scalene();
  EXPECT_EQ(integral(spline(t, KnotVector::ct(1, 2, 2, 1))), t.area() / 10);
  EXPECT_EQ(integral(spline(t, KnotVector::ps(2, 0, 1, 2, 0, 0))), t.area() / 6);
  EXPECT_EQ(integral(spline(t, KnotVector::ps(4, 0, 1, 1, 0, 0))), t.area() / 10);
  EXPECT_EQ(integral(spline(t, KnotVector::ct(1, 1, 1, 0))), t.area());
}

TEST(JumpOrder, Examples) {
  auto s = spline(unit_triangle(), KnotVector::ct(1, 2, 2, 1));
  // Micro-edges: <p1,pc>, <p2,pc>, <p3,pc>.
  EXPECT_EQ(jump_order(s, 0), 2);
  EXPECT_EQ(jump_order(s, 1), 1);
  EXPECT_EQ(jump_order(s, 2), 1);
  auto b = spline(unit_triangle(), KnotVector::ct(2, 2, 2, 0));
  for (int e = 0; e < 3; ++e) EXPECT_EQ(jump_order(b, e), 3);
  EXPECT_THROW(jump_order(b, 3), std::invalid_argument);
}

// Across a micro-edge lying inside the hull of the knots on its line the
// smoothness is d + 1 - (number of knots on the line); elsewhere the spline is
// a polynomial near the edge.
TEST(JumpOrder, MatchesKnotLineMultiplicity) {
  for (auto kind : {SplitKind::ct, SplitKind::ps}) {
    const auto& topo = SplitTopology::get(kind);
    for (int d = 0; d <= 3; ++d) {
      for (const auto& kv : all_knot_vectors(kind, d)) {
        auto s = spline(unit_triangle(), kv);
        for (std::size_t e = 0; e < topo.micro_edges.size(); ++e) {
          const auto& me = topo.micro_edges[e];
          // Parameter along the line from pc toward the edge's other end.
          std::vector<long> params;
          int mu = 0;
          for (int slot = 0; slot < topo.size; ++slot) {
            if (kv[slot] == 0 || topo.cross6(me.from, me.to, slot) != 0) continue;
            const auto& c = topo.ref6[static_cast<std::size_t>(me.to)];
            const auto& f = topo.ref6[static_cast<std::size_t>(me.from)];
            const auto& p = topo.ref6[static_cast<std::size_t>(slot)];
            params.push_back((p[0] - c[0]) * (f[0] - c[0]) + (p[1] - c[1]) * (f[1] - c[1]));
            mu += kv[slot];
          }
          const long len = [&] {
            const auto& c = topo.ref6[static_cast<std::size_t>(me.to)];
            const auto& f = topo.ref6[static_cast<std::size_t>(me.from)];
            return (f[0] - c[0]) * (f[0] - c[0]) + (f[1] - c[1]) * (f[1] - c[1]);
          }();
          const bool covered = !params.empty() && *std::min_element(params.begin(), params.end()) <= 0 &&
                               *std::max_element(params.begin(), params.end()) >= len;
          const int want = covered ? std::min(d, d + 1 - mu) : d;
          ASSERT_EQ(jump_order(s, static_cast<int>(e)), want) << kv.to_string() << " edge " << e;
        }
      }
    }
  }
}

TEST(JumpOrder, FloatBackendAgrees) {
  auto s = spline(to_backend<double>(scalene()), KnotVector::ct(2, 3, 3, 1));
  EXPECT_EQ(jump_order(s, 0), 4);
  EXPECT_EQ(jump_order(s, 1), 3);
  EXPECT_EQ(jump_order(s, 2), 3);
}
