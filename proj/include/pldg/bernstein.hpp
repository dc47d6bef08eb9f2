#ifndef PLDG_BERNSTEIN_HPP
#define PLDG_BERNSTEIN_HPP

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "pldg/core.hpp"

namespace pldg
{

// Bernstein basis of total degree k on the reference triangle, tabulated at a
// fixed set of evaluation points. Functions are indexed by the multi-index
// (a,b,c), a+b+c=k, ordered with a descending then b descending, so that the
// first function is the vertex function lambda_1^k.
//
//   B_{abc}(lambda) = k!/(a! b! c!) lambda_1^a lambda_2^b lambda_3^c,
//   lambda = (1-x-y, x, y).
struct BernsteinBasis
{
  int degree = 0;
  int n_fun = 0;
  int n_pts = 0;
  std::vector<std::array<int, 3>> index;
  std::vector<double> values;  // [q * n_fun + i]
  std::vector<Vec2> gradients; // reference-coordinate gradients, [q * n_fun + i]

  double value(int q, int i) const { return values[static_cast<size_t>(q) * n_fun + i]; }
  const Vec2 & gradient(int q, int i) const { return gradients[static_cast<size_t>(q) * n_fun + i]; }
};

namespace detail
{

inline double bernstein_single(int a, int b, int c, double l1, double l2, double l3)
{
  double coef = 1.0;
  const int k = a + b + c;
  // k!/(a!b!c!) as an integer-valued product; exact in double for k <= 6
  int num = k;
  for (int i = 1; i <= b; ++i)
    coef *= static_cast<double>(num--) / i;
  for (int i = 1; i <= c; ++i)
    coef *= static_cast<double>(num--) / i;
  double v = coef;
  for (int i = 0; i < a; ++i)
    v *= l1;
  for (int i = 0; i < b; ++i)
    v *= l2;
  for (int i = 0; i < c; ++i)
    v *= l3;
  return v;
}

} // namespace detail

inline int bernstein_dim(int k) { return (k + 1) * (k + 2) / 2; }

// Tabulates basis values and reference gradients of degree k at the given
// points (reference coordinates, inside the closed simplex).
inline BernsteinBasis bernstein_eval(int k, std::span<const Vec2> pts)
{
  if (k < 0)
    throw std::invalid_argument("bernstein_eval: need k >= 0");
  BernsteinBasis basis;
  basis.degree = k;
  basis.n_fun = bernstein_dim(k);
  basis.n_pts = static_cast<int>(pts.size());
  basis.index.reserve(basis.n_fun);
  for (int a = k; a >= 0; --a)
    for (int b = k - a; b >= 0; --b)
      basis.index.push_back({a, b, k - a - b});

  basis.values.resize(static_cast<size_t>(basis.n_pts) * basis.n_fun);
  basis.gradients.resize(static_cast<size_t>(basis.n_pts) * basis.n_fun);
  for (int q = 0; q < basis.n_pts; ++q) {
    const double l2 = pts[q].x;
    const double l3 = pts[q].y;
    const double l1 = 1.0 - l2 - l3;
    for (int i = 0; i < basis.n_fun; ++i) {
      const auto [a, b, c] = basis.index[i];
      basis.values[static_cast<size_t>(q) * basis.n_fun + i] = detail::bernstein_single(a, b, c, l1, l2, l3);
      // d/dx B^k_{abc} = k (B^{k-1}_{a,b-1,c} - B^{k-1}_{a-1,b,c}),
      // d/dy B^k_{abc} = k (B^{k-1}_{a,b,c-1} - B^{k-1}_{a-1,b,c})
      double gx = 0.0, gy = 0.0;
      if (k > 0) {
        const double down1 = (a > 0) ? detail::bernstein_single(a - 1, b, c, l1, l2, l3) : 0.0;
        const double down2 = (b > 0) ? detail::bernstein_single(a, b - 1, c, l1, l2, l3) : 0.0;
        const double down3 = (c > 0) ? detail::bernstein_single(a, b, c - 1, l1, l2, l3) : 0.0;
        gx = k * (down2 - down1);
        gy = k * (down3 - down1);
      }
      basis.gradients[static_cast<size_t>(q) * basis.n_fun + i] = {gx, gy};
    }
  }
  return basis;
}

inline BernsteinBasis bernstein_eval(int k, const std::vector<Vec2> & pts)
{
  return bernstein_eval(k, std::span<const Vec2>(pts.data(), pts.size()));
}

} // namespace pldg

#endif
