#pragma once

// Symmetric quadrature rules on a triangle, stored as orbits of barycentric
// permutations:
//   Q(f) = A(T) * sum over orbits of weight * sum over orbit nodes f(node).

#include "ssq/linalg.hpp"
#include "ssq/moments.hpp"

#include <array>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssq {

template <class S>
struct QuadNode {
  Barycentric<S> bary;
  S weight;
  OrbitType type;
};

template <class S>
class QuadratureRule {
 public:
  QuadratureRule(int degree, std::vector<Orbit<S>> orbits, std::string name = {})
      : degree_(degree), orbits_(std::move(orbits)), name_(std::move(name)) {
    if (degree_ < 0) throw std::invalid_argument("rule degree must be non-negative");
    if (orbits_.empty()) throw std::invalid_argument("a rule needs at least one orbit");
    int centers = 0;
    for (const auto& o : orbits_) {
      validate_orbit(o);
      if (o.type == OrbitType::center) ++centers;
      if (sign_of(o.weight) < 0) negative_weights_ = true;
      for (const auto& a : orbit_nodes(o)) {
        for (int i = 0; i < 3; ++i) {
          if (sign_of(a[i]) < 0) exterior_nodes_ = true;
        }
      }
    }
    if (centers > 1) throw std::invalid_argument("a symmetric rule has at most one type-0 orbit");
  }

  int degree() const { return degree_; }
  const std::vector<Orbit<S>>& orbits() const { return orbits_; }
  const std::string& name() const { return name_; }
  bool exterior_nodes() const { return exterior_nodes_; }
  bool negative_weights() const { return negative_weights_; }

  // [n0, n1, n2]
  std::array<int, 3> type() const {
    std::array<int, 3> t{0, 0, 0};
    for (const auto& o : orbits_) ++t[static_cast<std::size_t>(o.type)];
    return t;
  }

  std::size_t node_count() const {
    std::size_t n = 0;
    for (const auto& o : orbits_) n += static_cast<std::size_t>(o.node_count());
    return n;
  }

  std::vector<QuadNode<S>> nodes() const {
    std::vector<QuadNode<S>> out;
    for (const auto& o : orbits_) {
      for (auto& a : orbit_nodes(o)) out.push_back({std::move(a), o.weight, o.type});
    }
    return out;
  }

  S weight_sum() const {
    S s{0};
    for (const auto& o : orbits_) s += S(o.node_count()) * o.weight;
    return s;
  }

 private:
  int degree_;
  std::vector<Orbit<S>> orbits_;
  std::string name_;
  bool exterior_nodes_ = false;
  bool negative_weights_ = false;
};

template <class S, class F>
S apply_barycentric(const QuadratureRule<S>& rule, const Triangle<S>& t, F&& f) {
  S acc{0};
  for (const auto& o : rule.orbits()) {
    S inner{0};
    for (const auto& a : orbit_nodes(o)) inner += S(f(a));
    acc += o.weight * inner;
  }
  return t.area() * acc;
}

template <class S, class F>
S apply(const QuadratureRule<S>& rule, const Triangle<S>& t, F&& f) {
  return apply_barycentric(rule, t, [&](const Barycentric<S>& a) -> S { return f(point_from_barycentric(t, a)); });
}

enum class HammerStroud { quadratic, cubic };

// Degree 2: weight 1/3 on the permutations of (2/3, 1/6, 1/6).
// Degree 3: -9/16 at the barycenter, 25/48 on the permutations of (3/5, 1/5, 1/5).
template <class S>
QuadratureRule<S> hammer_stroud(HammerStroud kind) {
  if (kind == HammerStroud::quadratic) {
    return QuadratureRule<S>(2, {Orbit<S>{OrbitType::median, ratio<S>(1, 6), S(0), ratio<S>(1, 3)}},
                             "hs-quadratic");
  }
  return QuadratureRule<S>(3,
                           {Orbit<S>{OrbitType::center, S(0), S(0), ratio<S>(-9, 16)},
                            Orbit<S>{OrbitType::median, ratio<S>(1, 5), S(0), ratio<S>(25, 48)}},
                           "hs-cubic");
}

template <class S>
struct FitResult {
  std::optional<QuadratureRule<S>> rule;
  std::size_t constraints = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  bool consistent = false;
  S residual{};
  std::string diagnostic;

  bool feasible() const { return rule.has_value(); }
};

namespace detail {

// Row per partition lambda of `degree` into at most 3 parts, column per orbit:
// sum over the orbit's nodes of the monomial symmetric function m_lambda.
// Symmetric polynomials of degree <= `degree` restricted to the triangle are
// spanned by these m_lambda (homogenize with a1 + a2 + a3 = 1), so matching
// them is equivalent to exactness on P_degree for a symmetric rule.
template <class S>
Matrix<S> symmetric_moment_matrix(const std::vector<Orbit<S>>& orbits, int degree) {
  const auto parts = partitions3(degree);
  Matrix<S> m(parts.size(), orbits.size());
  for (std::size_t c = 0; c < orbits.size(); ++c) {
    const auto nodes = orbit_nodes(orbits[c]);
    for (std::size_t r = 0; r < parts.size(); ++r) {
      S acc{0};
      for (const auto& e : distinct_permutations(parts[r])) {
        for (const auto& a : nodes) acc += monomial(e, a);
      }
      m(r, c) = acc;
    }
  }
  return m;
}

template <class S>
std::vector<S> symmetric_moment_rhs(int degree) {
  std::vector<S> rhs;
  for (const auto& lambda : partitions3(degree)) {
    Rational acc = 0;
    for (const auto& e : distinct_permutations(lambda)) acc += normalized_moment(e[0], e[1], e[2]);
    rhs.push_back(from_rational<S>(acc));
  }
  return rhs;
}

}  // namespace detail

// Solves for one weight per orbit (incoming weights are ignored) so that the
// rule integrates every polynomial of total degree <= `degree` exactly.
template <class S>
FitResult<S> fit_weights(std::vector<Orbit<S>> orbits, int degree, std::string name = {}) {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  if (orbits.empty()) throw std::invalid_argument("fit_weights needs at least one orbit");
  for (const auto& o : orbits) validate_orbit(o);

  FitResult<S> out;
  Matrix<S> m = detail::symmetric_moment_matrix(orbits, degree);
  auto sol = solve(m, detail::symmetric_moment_rhs<S>(degree));
  out.constraints = m.rows();
  out.unknowns = m.cols();
  out.rank = sol.rank;
  out.consistent = sol.consistent;
  out.residual = sol.residual;
  if (!sol.consistent) {
    std::ostringstream msg;
    msg << "inconsistent moment system: " << m.rows() << " constraints, " << m.cols() << " orbits, rank "
        << sol.rank << ", residual " << to_decimal(sol.residual);
    out.diagnostic = msg.str();
    return out;
  }
  if (sol.rank < m.cols()) {
    std::ostringstream msg;
    msg << "singular moment system: rank defect " << (m.cols() - sol.rank) << " (" << m.cols()
        << " orbits, rank " << sol.rank << "); remove or replace orbits";
    out.diagnostic = msg.str();
    return out;
  }
  for (std::size_t i = 0; i < orbits.size(); ++i) orbits[i].weight = sol.x[i];
  out.rule.emplace(degree, std::move(orbits), std::move(name));
  return out;
}

// Candidate orbit lists for building some symmetric rule of a given degree
// with rational nodes. All candidate nodes lie inside the triangle.
template <class S>
std::vector<Orbit<S>> orbit_template(char variant) {
  struct T1 { long p, q; };
  struct T2 { long p1, q1, p2, q2; };
  std::vector<T1> medians;
  std::vector<T2> generals;
  if (variant == 'a' || variant == 'A') {
    medians = {{1, 6}, {1, 10}, {1, 4}, {2, 5}, {1, 20}, {1, 8}, {3, 7}, {1, 12}, {3, 10}, {1, 16}, {4, 9}, {1, 5}};
    generals = {{1, 10, 3, 10}, {1, 20, 1, 4}, {1, 7, 2, 7}, {1, 16, 3, 16}, {1, 12, 5, 12}, {1, 9, 2, 9}};
  } else if (variant == 'b' || variant == 'B') {
    medians = {{1, 5}, {1, 7}, {2, 7}, {1, 9}, {5, 12}, {1, 18}, {3, 8}, {1, 15}, {4, 11}, {1, 11}, {3, 7}, {1, 13}};
    generals = {{1, 9, 2, 9}, {1, 15, 1, 3}, {1, 8, 3, 8}, {1, 6, 1, 4}, {1, 11, 3, 11}, {1, 14, 3, 14}};
  } else {
    throw std::invalid_argument(std::string("unknown orbit template '") + variant + "' (expected a or b)");
  }
  std::vector<Orbit<S>> out;
  out.push_back({OrbitType::center, S(0), S(0), S(0)});
  for (const auto& m : medians) out.push_back({OrbitType::median, ratio<S>(m.p, m.q), S(0), S(0)});
  for (const auto& g : generals) {
    out.push_back({OrbitType::general, ratio<S>(g.p1, g.q1), ratio<S>(g.p2, g.q2), S(0)});
  }
  return out;
}

// Greedily keeps the template orbits that raise the rank of the symmetric
// moment system until it is square and non-singular, then fits the weights.
template <class S>
FitResult<S> fitted_rule(int degree, char variant = 'a') {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  const auto candidates = orbit_template<S>(variant);
  const std::size_t needed = partitions3(degree).size();
  std::vector<Orbit<S>> chosen;
  std::size_t current = 0;
  for (const auto& o : candidates) {
    if (current == needed) break;
    chosen.push_back(o);
    std::size_t r = rank(detail::symmetric_moment_matrix(chosen, degree));
    if (r > current) {
      current = r;
    } else {
      chosen.pop_back();
    }
  }
  std::string name = "fitted-d" + std::to_string(degree) + "-" + static_cast<char>(std::tolower(variant));
  if (current < needed) {
    FitResult<S> out;
    out.constraints = needed;
    out.unknowns = chosen.size();
    out.rank = current;
    out.diagnostic = "orbit template " + std::string(1, variant) + " cannot reach full rank at degree " +
                     std::to_string(degree);
    return out;
  }
  return fit_weights(std::move(chosen), degree, std::move(name));
}

}  // namespace ssq
