#ifndef PLDG_QUADRATURE_HPP
#define PLDG_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pldg/core.hpp"

namespace pldg
{

// Quadrature rule on a reference domain: the unit segment [0,1] (weights sum
// to 1) or the unit reference triangle {x,y >= 0, x+y <= 1} (weights sum to
// 1/2). All weights are strictly positive.
struct QuadRule
{
  std::vector<Vec2> points; // segment rules use only .x
  std::vector<double> weights;
  int exactness = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

namespace detail
{

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
inline void legendre(int n, double x, double & p, double & dp)
{
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = p0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Gauss-Legendre nodes/weights on [-1,1] via Newton from Chebyshev guesses.
inline void gauss_legendre_ref(int n, std::vector<double> & x, std::vector<double> & w)
{
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, t, p, dp);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15)
        break;
    }
    legendre(n, t, p, dp);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  std::sort(x.begin(), x.end());
  // weights are symmetric; recompute in sorted order
  for (int i = 0; i < n; ++i) {
    double p, dp;
    legendre(n, x[i], p, dp);
    w[i] = 2.0 / ((1.0 - x[i] * x[i]) * dp * dp);
  }
}

} // namespace detail

// Gauss-Legendre rule with n points on [0,1], exact for degree 2n-1.
inline QuadRule gauss_segment(int n)
{
  if (n < 1)
    throw std::invalid_argument("gauss_segment: need n >= 1");
  std::vector<double> x, w;
  detail::gauss_legendre_ref(n, x, w);
  QuadRule rule;
  rule.exactness = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = {0.5 * (x[i] + 1.0), 0.0};
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

// Gauss-Lobatto points on [0,1] (endpoints included), n >= 2. Used only as an
// output sampling set; no weights are needed for that purpose.
inline std::vector<double> lobatto_points(int n)
{
  if (n < 2)
    throw std::invalid_argument("lobatto_points: need n >= 2");
  std::vector<double> pts(n);
  pts.front() = 0.0;
  pts.back() = 1.0;
  // interior nodes: roots of P'_{n-1}
  const int m = n - 1;
  for (int i = 1; i < m; ++i) {
    double t = std::cos(std::numbers::pi * i / m);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      detail::legendre(m, t, p, dp);
      // Newton on P'_m using ddP from the Legendre ODE:
      // (1-x^2) P'' = 2x P' - m(m+1) P
      const double ddp = (2.0 * t * dp - m * (m + 1.0) * p) / (1.0 - t * t);
      const double dt = dp / ddp;
      t -= dt;
      if (std::abs(dt) < 1e-15)
        break;
    }
    pts[m - i] = 0.5 * (t + 1.0);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

namespace detail
{

// Symmetrizes a rule on the reference triangle over the six affine symmetries
// (barycentric permutations), merging coincident points.
inline QuadRule symmetrize_triangle(const QuadRule & base)
{
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<Vec2> pts;
  std::vector<double> wts;
  for (int q = 0; q < base.size(); ++q) {
    const double l[3] = {1.0 - base.points[q].x - base.points[q].y, base.points[q].x, base.points[q].y};
    const double w6 = base.weights[q] / 6.0;
    for (const auto & perm : perms) {
      const Vec2 p{l[perm[1]], l[perm[2]]};
      bool merged = false;
      for (size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(pts[i].x - p.x) < 1e-12 && std::abs(pts[i].y - p.y) < 1e-12) {
          wts[i] += w6;
          merged = true;
          break;
        }
      }
      if (!merged) {
        pts.push_back(p);
        wts.push_back(w6);
      }
    }
  }
  QuadRule rule;
  rule.exactness = base.exactness;
  rule.points = std::move(pts);
  rule.weights = std::move(wts);
  return rule;
}

// Product Gauss rule on the triangle through the collapsed-square map
// x = xi, y = eta (1 - xi); the Jacobian factor (1 - xi) is absorbed into
// the weights, which keeps them positive.
inline QuadRule duffy_triangle(int degree)
{
  const int m = (degree + 1) / 2 + 1; // 2m-1 >= degree+1 covers the Jacobian factor
  std::vector<double> x, w;
  gauss_legendre_ref(m, x, w);
  QuadRule rule;
  rule.exactness = degree;
  rule.points.reserve(static_cast<size_t>(m) * m);
  rule.weights.reserve(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    const double xi = 0.5 * (x[i] + 1.0);
    const double wxi = 0.5 * w[i];
    for (int j = 0; j < m; ++j) {
      const double eta = 0.5 * (x[j] + 1.0);
      const double weta = 0.5 * w[j];
      rule.points.push_back({xi, eta * (1.0 - xi)});
      rule.weights.push_back(wxi * weta * (1.0 - xi));
    }
  }
  return rule;
}

} // namespace detail

// Symmetric positive-weight rule on the reference triangle, exact to the
// requested total degree. Supported degrees: 1..13 (enough for 2k and 2k+1
// with k <= 6).
inline QuadRule gauss_triangle(int degree)
{
  if (degree < 1)
    throw std::invalid_argument("gauss_triangle: need degree >= 1");
  if (degree > 13)
    throw std::invalid_argument("gauss_triangle: degree above the supported range (13)");
  QuadRule rule;
  if (degree == 1) {
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
    rule.exactness = 1;
    return rule;
  }
  if (degree == 2) {
    rule.points = {{2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}, {1.0 / 6.0, 1.0 / 6.0}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    rule.exactness = 2;
    return rule;
  }
  return detail::symmetrize_triangle(detail::duffy_triangle(degree));
}

// Exact monomial integral over the reference triangle: a! b! / (a+b+2)!.
inline double triangle_monomial_integral(int a, int b)
{
  double v = 1.0;
  // a! b! / (a+b+2)! computed as a product of ratios to avoid overflow
  for (int i = 1; i <= a + b + 2; ++i)
    v /= i;
  for (int i = 1; i <= a; ++i)
    v *= i;
  for (int i = 1; i <= b; ++i)
    v *= i;
  return v;
}

} // namespace pldg

#endif
