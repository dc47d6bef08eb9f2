#include <gtest/gtest.h>

#include <cmath>

#include "pldg/quadrature.hpp"

using namespace pldg;

namespace
{

double integrate_segment(const QuadRule & rule, int power)
{
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    s += rule.weights[q] * std::pow(rule.points[q].x, power);
  return s;
}

double integrate_triangle(const QuadRule & rule, int a, int b)
{
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    s += rule.weights[q] * std::pow(rule.points[q].x, a) * std::pow(rule.points[q].y, b);
  return s;
}

} // namespace

TEST(GaussSegment, MidpointRule)
{
  const QuadRule rule = gauss_segment(1);
  ASSERT_EQ(rule.size(), 1);
  EXPECT_NEAR(rule.points[0].x, 0.5, 1e-15);
  EXPECT_NEAR(rule.weights[0], 1.0, 1e-15);
}

TEST(GaussSegment, TwoPointIntegratesCubics)
{
  const QuadRule rule = gauss_segment(2);
  EXPECT_NEAR(integrate_segment(rule, 3), 0.25, 1e-15);
}

TEST(GaussSegment, FivePointDegreeNine)
{
  const QuadRule rule = gauss_segment(5);
  EXPECT_NEAR(integrate_segment(rule, 9), 0.1, 1e-14);
}

TEST(GaussSegment, ExactnessSweep)
{
  for (int n = 1; n <= 8; ++n) {
    const QuadRule rule = gauss_segment(n);
    ASSERT_EQ(rule.exactness, 2 * n - 1);
    for (int d = 0; d <= rule.exactness; ++d) {
      const double exact = 1.0 / (d + 1);
      EXPECT_NEAR(integrate_segment(rule, d), exact, 1e-13 * exact) << "n=" << n << " d=" << d;
    }
  }
}

TEST(GaussSegment, RejectsZeroPoints)
{
  EXPECT_THROW(gauss_segment(0), std::invalid_argument);
}

TEST(GaussTriangle, CentroidRule)
{
  const QuadRule rule = gauss_triangle(1);
  ASSERT_EQ(rule.size(), 1);
  EXPECT_NEAR(rule.points[0].x, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rule.points[0].y, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rule.weights[0], 0.5, 1e-15);
}

TEST(GaussTriangle, FirstMoment)
{
  for (int d = 1; d <= 13; ++d) {
    const QuadRule rule = gauss_triangle(d);
    EXPECT_NEAR(integrate_triangle(rule, 1, 0), 1.0 / 6.0, 1e-13) << "degree " << d;
  }
}

TEST(GaussTriangle, Degree12HighMonomial)
{
  const QuadRule rule = gauss_triangle(12);
  const double exact = triangle_monomial_integral(6, 6);
  EXPECT_NEAR(integrate_triangle(rule, 6, 6), exact, 1e-12 * exact);
}

TEST(GaussTriangle, MomentExactnessSweep)
{
  for (int d = 1; d <= 13; ++d) {
    const QuadRule rule = gauss_triangle(d);
    for (int a = 0; a + 0 <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        const double exact = triangle_monomial_integral(a, b);
        EXPECT_NEAR(integrate_triangle(rule, a, b), exact, 1e-12 * exact)
            << "degree " << d << " monomial x^" << a << " y^" << b;
      }
  }
}

TEST(GaussTriangle, WeightsPositive)
{
  for (int d = 1; d <= 13; ++d) {
    const QuadRule rule = gauss_triangle(d);
    double total = 0.0;
    for (double w : rule.weights) {
      EXPECT_GT(w, 0.0) << "degree " << d;
      total += w;
    }
    EXPECT_NEAR(total, 0.5, 1e-13) << "degree " << d;
  }
}

TEST(GaussTriangle, PointSetSymmetric)
{
  // the point set must be invariant under barycentric permutations
  for (int d : {3, 5, 8, 13}) {
    const QuadRule rule = gauss_triangle(d);
    for (int q = 0; q < rule.size(); ++q) {
      const double l1 = 1.0 - rule.points[q].x - rule.points[q].y;
      const Vec2 swapped{l1, rule.points[q].y}; // swap lambda_1 <-> lambda_2
      bool found = false;
      for (int r = 0; r < rule.size(); ++r)
        if (std::abs(rule.points[r].x - swapped.x) < 1e-12 && std::abs(rule.points[r].y - swapped.y) < 1e-12) {
          found = std::abs(rule.weights[r] - rule.weights[q]) < 1e-13;
          break;
        }
      EXPECT_TRUE(found) << "degree " << d << " point " << q;
    }
  }
}

TEST(GaussTriangle, RejectsOutOfRangeDegrees)
{
  EXPECT_THROW(gauss_triangle(0), std::invalid_argument);
  EXPECT_THROW(gauss_triangle(14), std::invalid_argument);
}

TEST(Lobatto, EndpointsAndSymmetry)
{
  const auto pts = lobatto_points(5);
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_DOUBLE_EQ(pts.front(), 0.0);
  EXPECT_DOUBLE_EQ(pts.back(), 1.0);
  for (size_t i = 0; i < pts.size(); ++i)
    EXPECT_NEAR(pts[i] + pts[pts.size() - 1 - i], 1.0, 1e-14);
  // interior nodes of the 5-point rule: roots of P_4', i.e. +-sqrt(3/7) on [-1,1]
  EXPECT_NEAR(pts[1], 0.5 * (1.0 - std::sqrt(3.0 / 7.0)), 1e-14);
}

