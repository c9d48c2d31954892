#pragma once

#include "ssq/geometry.hpp"
#include "ssq/spaces.hpp"

#include <random>
#include <vector>

namespace ssq::testing {

using Q = Rational;

inline Q q(long p, long d = 1) { return make_rational(p, d); }

inline Triangle<Q> unit_triangle() { return Triangle<Q>::reference(); }

// A scalene triangle with rational vertices.
inline Triangle<Q> scalene() { return Triangle<Q>({q(-1, 2), q(1, 3)}, {q(7, 2), q(1)}, {q(1, 5), q(9, 4)}); }

inline Triangle<Q> obtuse() { return Triangle<Q>({q(0), q(0)}, {q(5), q(0)}, {q(6), q(1)}); }

// Base 1, height 1/100 over a vertex at the base midpoint: aspect ratio 100.
inline Triangle<Q> thin() { return Triangle<Q>({q(0), q(0)}, {q(1), q(0)}, {q(1, 2), q(1, 100)}); }

// Clockwise vertex order.
inline Triangle<Q> reflected() { return Triangle<Q>({q(0), q(0)}, {q(-2), q(1)}, {q(-1, 3), q(3)}); }

template <class S>
Triangle<S> to_backend(const Triangle<Q>& t) {
  auto p = [&](int i) { return Point2<S>{from_rational<S>(t.vertex(i).x), from_rational<S>(t.vertex(i).y)}; };
  return Triangle<S>(p(0), p(1), p(2));
}

// Deterministic random rationals with small denominators.
class RationalSource {
 public:
  explicit RationalSource(unsigned seed) : rng_(seed) {}

  Q next(long lo = -4, long hi = 4) {
    std::uniform_int_distribution<long> den(1, 30);
    long d = den(rng_);
    std::uniform_int_distribution<long> num(lo * d, hi * d);
    return make_rational(num(rng_), d);
  }

  // Strictly positive barycentric triple.
  Barycentric<Q> interior_barycentric() {
    std::uniform_int_distribution<long> part(1, 50);
    long a = part(rng_), b = part(rng_), c = part(rng_);
    long s = a + b + c;
    return {{make_rational(a, s), make_rational(b, s), make_rational(c, s)}};
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

inline Barycentric<double> bary_to_double(const Barycentric<Q>& a) {
  return {{a[0].get_d(), a[1].get_d(), a[2].get_d()}};
}

}  // namespace ssq::testing
