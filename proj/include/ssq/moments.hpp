#pragma once

#include "ssq/geometry.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace ssq {

// Integral over T of a1^a a2^b a3^c divided by A(T): 2 a! b! c! / (a+b+c+2)!.
inline Rational normalized_moment(int a, int b, int c) {
  auto fac = [](int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
  };
  Rational q(2 * fac(a) * fac(b) * fac(c), fac(a + b + c + 2));
  q.canonicalize();
  return q;
}

template <class S>
S poly_moment(int a, int b, int c, const Triangle<S>& t) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("monomial exponents must be non-negative");
  return t.area() * from_rational<S>(normalized_moment(a, b, c));
}

// Exponent triples with a+b+c <= degree, graded, then lexicographically
// descending within a degree: (0,0,0), (1,0,0), (0,1,0), (0,0,1), (2,0,0), ...
inline std::vector<std::array<int, 3>> monomials_up_to(int degree) {
  std::vector<std::array<int, 3>> out;
  for (int n = 0; n <= degree; ++n) {
    for (int a = n; a >= 0; --a) {
      for (int b = n - a; b >= 0; --b) out.push_back({a, b, n - a - b});
    }
  }
  return out;
}

// Partitions of n into at most three parts, largest part first.
inline std::vector<std::array<int, 3>> partitions3(int n) {
  std::vector<std::array<int, 3>> out;
  for (int a = n; a >= 0; --a) {
    for (int b = std::min(a, n - a); b >= 0; --b) {
      int c = n - a - b;
      if (c <= b) out.push_back({a, b, c});
    }
  }
  return out;
}

// Distinct permutations of an exponent triple.
inline std::vector<std::array<int, 3>> distinct_permutations(std::array<int, 3> e) {
  std::sort(e.begin(), e.end());
  std::vector<std::array<int, 3>> out;
  do {
    out.push_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

template <class S>
S monomial(const std::array<int, 3>& e, const Barycentric<S>& x) {
  S v{1};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) v *= x[i];
  }
  return v;
}

}  // namespace ssq
