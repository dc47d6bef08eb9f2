#ifndef PLDG_CORE_HPP
#define PLDG_CORE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pldg
{

struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  Vec2 & operator+=(const Vec2 & o) { x += o.x; y += o.y; return *this; }
  Vec2 & operator-=(const Vec2 & o) { x -= o.x; y -= o.y; return *this; }
  Vec2 & operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, const Vec2 & b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2 & b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }
inline double dot(const Vec2 & a, const Vec2 & b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3D cross product; positive for a ccw turn.
inline double cross(const Vec2 & a, const Vec2 & b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2 & a) { return std::hypot(a.x, a.y); }

// 2x2 matrix, row-major.
struct Mat2
{
  double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;

  double det() const { return a00 * a11 - a01 * a10; }

  Mat2 inverse() const
  {
    const double d = det();
    return {a11 / d, -a01 / d, -a10 / d, a00 / d};
  }

  Mat2 transpose() const { return {a00, a10, a01, a11}; }

  Vec2 apply(const Vec2 & v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
};

// |t|^e with the continuous extension 0^e := 0, guarding the singular
// e < 0 branch against overflow from denormal magnitudes.
inline double pow_abs(double t, double e)
{
  const double a = std::abs(t);
  if (a < 1e-300)
    return 0.0;
  return std::exp(e * std::log(a));
}

inline bool approx_eq(double a, double b, double tol)
{
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

inline double vec_dot(const std::vector<double> & a, const std::vector<double> & b)
{
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

// y += alpha x
inline void vec_axpy(std::vector<double> & y, double alpha, const std::vector<double> & x)
{
  for (size_t i = 0; i < y.size(); ++i)
    y[i] += alpha * x[i];
}

inline double vec_norm_inf(const std::vector<double> & a)
{
  double m = 0.0;
  for (double v : a)
    m = std::max(m, std::abs(v));
  return m;
}

inline double vec_norm2(const std::vector<double> & a)
{
  return std::sqrt(vec_dot(a, a));
}

} // namespace pldg

#endif
