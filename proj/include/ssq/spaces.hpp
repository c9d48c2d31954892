#pragma once

// Dimensions and simplex-spline bases of the maximally smooth macro-element
// spaces: C^{2r-1} splines of degree 3r on the Clough-Tocher split and of
// degree 2r on the Powell-Sabin split.

#include "ssq/linalg.hpp"
#include "ssq/simplex.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssq {

struct SpaceDescriptor {
  SplitKind split = SplitKind::ct;
  int rho = 0;
  int degree = 1;
  std::optional<int> r;  // set for the two macro-element families

  static SpaceDescriptor ct_family(int r) { return {SplitKind::ct, 2 * r - 1, 3 * r, r}; }
  static SpaceDescriptor ps_family(int r) { return {SplitKind::ps, 2 * r - 1, 2 * r, r}; }

  std::string label() const {
    return "S^" + std::to_string(rho) + "_" + std::to_string(degree) + "(" + std::string(split_tag(split)) + ")";
  }
};

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// C(rho+2,2) + n C(d-rho+1,2) + sum_{j=1}^{d-rho} max(rho+1-2j, 0), with n the
// number of micro-triangles.
inline long dimension(const SpaceDescriptor& desc) {
  if (desc.rho < 0 || desc.degree <= desc.rho) {
    throw std::invalid_argument("dimension formula needs 0 <= rho < d");
  }
  const long n = desc.split == SplitKind::ct ? 3 : 6;
  const long rho = desc.rho;
  const long d = desc.degree;
  long dim = binomial(rho + 2, 2) + n * binomial(d - rho + 1, 2);
  for (long j = 1; j <= d - rho; ++j) dim += std::max(rho + 1 - 2 * j, 0L);
  return dim;
}

template <class S>
struct SplineSpaceBasis {
  SpaceDescriptor descriptor;
  SplitConfig<S> split;
  std::vector<KnotVector> elements;
  int poly_count = 0;  // leading Bernstein elements

  std::size_t size() const { return elements.size(); }
  SimplexSpline<S> spline(std::size_t i) const { return SimplexSpline<S>(split, elements[i]); }
};

namespace detail {

// Bernstein knot vectors (i, j, k) with i, j, k >= 1, i + j + k = d + 3, in
// lexicographic order.
inline std::vector<std::array<int, 3>> bernstein_indices(int d) {
  std::vector<std::array<int, 3>> out;
  for (int i = 1; i <= d + 1; ++i) {
    for (int j = 1; i + j <= d + 2; ++j) out.push_back({i, j, d + 3 - i - j});
  }
  return out;
}

}  // namespace detail

// Bernstein polynomials of degree 3r without the central one, followed by
// (r,r+1,r+1;1), (r+1,r,r+1;1), (r+1,r+1,r;1).
template <class S>
SplineSpaceBasis<S> ct_basis(int r, const SplitConfig<S>& split) {
  if (r < 1) throw std::invalid_argument("ct_basis needs r >= 1");
  if (split.kind() != SplitKind::ct) throw std::invalid_argument("ct_basis needs a Clough-Tocher split");
  SplineSpaceBasis<S> b{SpaceDescriptor::ct_family(r), split, {}, 0};
  for (const auto& [i, j, k] : detail::bernstein_indices(3 * r)) {
    if (i == r + 1 && j == r + 1 && k == r + 1) continue;
    b.elements.push_back(KnotVector::ct(i, j, k, 0));
  }
  b.poly_count = static_cast<int>(b.elements.size());
  b.elements.push_back(KnotVector::ct(r, r + 1, r + 1, 1));
  b.elements.push_back(KnotVector::ct(r + 1, r, r + 1, 1));
  b.elements.push_back(KnotVector::ct(r + 1, r + 1, r, 1));
  return b;
}

// Bernstein polynomials of degree 2r without (1,r+1,r+1), (r+1,1,r+1),
// (r+1,r+1,1), followed by the six splines with one edge-midpoint knot.
template <class S>
SplineSpaceBasis<S> ps_basis(int r, const SplitConfig<S>& split) {
  if (r < 1) throw std::invalid_argument("ps_basis needs r >= 1");
  if (split.kind() != SplitKind::ps) throw std::invalid_argument("ps_basis needs a Powell-Sabin split");
  SplineSpaceBasis<S> b{SpaceDescriptor::ps_family(r), split, {}, 0};
  for (const auto& [i, j, k] : detail::bernstein_indices(2 * r)) {
    const bool excluded = (i == 1 && j == r + 1 && k == r + 1) || (i == r + 1 && j == 1 && k == r + 1) ||
                          (i == r + 1 && j == r + 1 && k == 1);
    if (excluded) continue;
    b.elements.push_back(KnotVector::ps(i, j, k, 0, 0, 0));
  }
  b.poly_count = static_cast<int>(b.elements.size());
  b.elements.push_back(KnotVector::ps(1, r, r + 1, 0, 1, 0));
  b.elements.push_back(KnotVector::ps(1, r + 1, r, 0, 1, 0));
  b.elements.push_back(KnotVector::ps(r + 1, 1, r, 0, 0, 1));
  b.elements.push_back(KnotVector::ps(r, 1, r + 1, 0, 0, 1));
  b.elements.push_back(KnotVector::ps(r, r + 1, 1, 1, 0, 0));
  b.elements.push_back(KnotVector::ps(r + 1, r, 1, 1, 0, 0));
  return b;
}

template <class S>
SplineSpaceBasis<S> make_basis(SplitKind kind, int r, const Triangle<S>& t) {
  SplitConfig<S> split = make_split(t, kind);
  return kind == SplitKind::ct ? ct_basis(r, split) : ps_basis(r, split);
}

// (i+j+k-3)! / ((i-1)!(j-1)!(k-1)!) a1^(i-1) a2^(j-1) a3^(k-1)
template <class S>
S bernstein_eval(int i, int j, int k, const Barycentric<S>& a) {
  if (i < 1 || j < 1 || k < 1) throw std::invalid_argument("Bernstein indices must be positive");
  mpz_class multinomial;
  mpz_fac_ui(multinomial.get_mpz_t(), static_cast<unsigned long>(i + j + k - 3));
  for (int e : {i - 1, j - 1, k - 1}) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(e));
    multinomial /= f;
  }
  S v = from_rational<S>(Rational(multinomial));
  auto power = [](const S& base, int e) {
    S p{1};
    for (int n = 0; n < e; ++n) p *= base;
    return p;
  };
  return v * power(a[0], i - 1) * power(a[1], j - 1) * power(a[2], k - 1);
}

// Barycentric sample points from the Halton sequence (bases 2, 3), keeping
// only points strictly inside the triangle and off every line
// through two configuration points of the split.
template <class S>
std::vector<Barycentric<S>> interior_sample_points(const SplitTopology& topo, std::size_t count,
                                                   std::size_t skip = 1) {
  auto van_der_corput = [](std::size_t n, unsigned long base) {
    Rational q = 0;
    Rational f = make_rational(1, static_cast<long>(base));
    while (n > 0) {
      q += f * static_cast<unsigned long>(n % base);
      f /= static_cast<unsigned long>(base);
      n /= base;
    }
    return q;
  };
  std::vector<Barycentric<S>> out;
  for (std::size_t n = skip; out.size() < count; ++n) {
    Rational u = van_der_corput(n, 2);
    Rational v = van_der_corput(n, 3);
    Rational w = 1 - u - v;
    if (sgn(u) <= 0 || sgn(v) <= 0 || sgn(w) <= 0) continue;
    // Reject points on a line through two configuration points.
    bool on_line = false;
    for (int a = 0; a < topo.size && !on_line; ++a) {
      for (int b = a + 1; b < topo.size && !on_line; ++b) {
        const auto& pa = topo.ref6[static_cast<std::size_t>(a)];
        const auto& pb = topo.ref6[static_cast<std::size_t>(b)];
        Rational ex = make_rational(pb[0] - pa[0], 6), ey = make_rational(pb[1] - pa[1], 6);
        Rational dx = u - make_rational(pa[0], 6), dy = v - make_rational(pa[1], 6);
        on_line = sgn(ex * dy - ey * dx) == 0;
      }
    }
    if (on_line) continue;
    out.push_back({{from_rational<S>(u), from_rational<S>(v), from_rational<S>(w)}});
  }
  return out;
}

// Rank of the collocation matrix of the basis at the first |B| sample points.
template <class S>
std::size_t collocation_rank(const SplineSpaceBasis<S>& basis) {
  const std::size_t n = basis.size();
  const auto pts = interior_sample_points<S>(*basis.split.topo, n);
  Matrix<S> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    Point2<S> x = frame_point(pts[r]);
    PointEvaluator<S> ev(*basis.split.topo, x, PointEvaluator<S>::default_directions(x));
    for (std::size_t c = 0; c < n; ++c) m(r, c) = ev.value(basis.elements[c]);
  }
  return rank(m);
}

}  // namespace ssq
