#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "pldg/dgspace.hpp"

using namespace pldg;

namespace
{

std::shared_ptr<const Mesh> pentagon(int levels = 0)
{
  Mesh mesh = build_coarse({DomainSpec::Kind::pentagon, nullptr});
  for (int i = 0; i < levels; ++i)
    mesh = refine_uniform(mesh);
  return std::make_shared<const Mesh>(std::move(mesh));
}

} // namespace

TEST(BuildSpace, DofCountsMatchPentagonTable)
{
  auto mesh = pentagon();
  EXPECT_EQ(build_space(mesh, 1, 1).n_dof(), 21);
  EXPECT_EQ(build_space(mesh, 6, 1).n_dof(), 196);
  EXPECT_EQ(build_space(mesh, 2, 2).n_dof(), 12 * mesh->n_elements());
}

TEST(BuildSpace, RejectsUnsupportedDegrees)
{
  auto mesh = pentagon();
  EXPECT_THROW(build_space(mesh, 0, 1), std::invalid_argument);
  EXPECT_THROW(build_space(mesh, 7, 1), std::invalid_argument);
}

TEST(L2Project, ReproducesPolynomialsInSpace)
{
  auto mesh = pentagon(1);
  for (int k : {1, 2, 3}) {
    const DGSpace space = build_space(mesh, k, 1);
    auto poly = [k](const Vec2 & p) {
      double v = 1.0 + 2.0 * p.x - 0.5 * p.y;
      if (k >= 2)
        v += 0.25 * p.x * p.y;
      if (k >= 3)
        v += p.x * p.x * p.y;
      return v;
    };
    const DGFunction fn = l2_project(space, poly);
    for (int e = 0; e < mesh->n_elements(); ++e) {
      const ElementGeometry & geo = mesh->geometry(e);
      for (int q = 0; q < space.elem_rule.size(); ++q) {
        const Vec2 ref = space.elem_rule.points[q];
        EXPECT_NEAR(eval_scalar(fn, e, ref), poly(geo.to_physical(ref)), 1e-11);
      }
    }
  }
}

TEST(L2Project, ZeroFieldAndIdempotence)
{
  auto mesh = pentagon();
  const DGSpace space = build_space(mesh, 2, 1);
  const DGFunction zero = l2_project(space, [](const Vec2 &) { return 0.0; });
  for (double c : zero.coeffs)
    EXPECT_DOUBLE_EQ(c, 0.0);

  const DGFunction fx = l2_project(space, [](const Vec2 & p) { return p.x; });
  // re-project the projected function: coefficients must be reproduced
  const DGFunction fx2 = l2_project(space, [&](const Vec2 & p) {
    for (int e = 0; e < fx.space->mesh->n_elements(); ++e) {
      const ElementGeometry & geo = fx.space->mesh->geometry(e);
      const Vec2 ref = geo.to_reference(p);
      if (ref.x > -1e-12 && ref.y > -1e-12 && ref.x + ref.y < 1.0 + 1e-12)
        return eval_scalar(fx, e, ref);
    }
    return 0.0;
  });
  for (int i = 0; i < space.n_dof(); ++i)
    EXPECT_NEAR(fx2.coeffs[i], fx.coeffs[i], 1e-13);
}

TEST(Eval, ConstantOneEverywhere)
{
  auto mesh = pentagon();
  const DGSpace space = build_space(mesh, 3, 1);
  DGFunction one(space);
  std::fill(one.coeffs.begin(), one.coeffs.end(), 1.0);
  for (int e = 0; e < mesh->n_elements(); ++e)
    for (const Vec2 ref : {Vec2{0.1, 0.1}, Vec2{0.6, 0.3}, Vec2{0.0, 0.0}})
      EXPECT_NEAR(eval_scalar(one, e, ref), 1.0, 1e-14);
}

TEST(Eval, ProjectedLinearAtCentroid)
{
  auto mesh = pentagon();
  const DGSpace space = build_space(mesh, 1, 1);
  const DGFunction fx = l2_project(space, [](const Vec2 & p) { return p.x; });
  for (int e = 0; e < mesh->n_elements(); ++e) {
    const Vec2 centroid_ref{1.0 / 3.0, 1.0 / 3.0};
    const Vec2 centroid = mesh->geometry(e).to_physical(centroid_ref);
    EXPECT_NEAR(eval_scalar(fx, e, centroid_ref), centroid.x, 1e-13);
  }
}

TEST(Eval, SharedEdgeAgreesFromBothSides)
{
  auto mesh = pentagon(1);
  const DGSpace space = build_space(mesh, 2, 1);
  const DGFunction fx = l2_project(space, [](const Vec2 & p) { return p.x; });
  for (const Face & f : mesh->faces) {
    if (f.is_boundary())
      continue;
    const Vec2 mid = 0.5 * (mesh->vertices[f.v0] + mesh->vertices[f.v1]);
    const double left = eval_scalar(fx, f.left, mesh->geometry(f.left).to_reference(mid));
    const double right = eval_scalar(fx, f.right, mesh->geometry(f.right).to_reference(mid));
    EXPECT_NEAR(left, right, 1e-11);
  }
}

TEST(MassSolve, RoundTripAndZero)
{
  auto mesh = pentagon();
  const DGSpace space = build_space(mesh, 2, 2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> c(space.n_dof());
  for (double & v : c)
    v = dist(rng);
  // rhs = M c via the scaled reference Gram blocks
  std::vector<double> rhs(space.n_dof(), 0.0);
  for (int e = 0; e < mesh->n_elements(); ++e)
    for (int comp = 0; comp < 2; ++comp)
      for (int i = 0; i < space.n_local; ++i) {
        double s = 0.0;
        for (int j = 0; j < space.n_local; ++j)
          s += space.gram(i, j) * c[space.dof(e, comp, j)];
        rhs[space.dof(e, comp, i)] = 2.0 * mesh->areas[e] * s;
      }
  const std::vector<double> back = mass_solve(space, rhs);
  for (int i = 0; i < space.n_dof(); ++i)
    EXPECT_NEAR(back[i], c[i], 1e-11 * (1.0 + std::abs(c[i])));

  const std::vector<double> zero = mass_solve(space, std::vector<double>(space.n_dof(), 0.0));
  for (double v : zero)
    EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(MassSolve, MomentsOfConstantGiveConstantCoefficients)
{
  auto mesh = pentagon();
  const DGSpace space = build_space(mesh, 3, 1);
  // moments of the constant-1 field
  std::vector<double> rhs(space.n_dof(), 0.0);
  for (int e = 0; e < mesh->n_elements(); ++e)
    for (int q = 0; q < space.elem_rule.size(); ++q)
      for (int i = 0; i < space.n_local; ++i)
        rhs[space.dof(e, 0, i)] += 2.0 * mesh->areas[e] * space.elem_rule.weights[q] * space.basis.value(q, i);
  const std::vector<double> coeffs = mass_solve(space, rhs);
  // the Bernstein representation of 1 has all coefficients equal to 1
  for (double c : coeffs)
    EXPECT_NEAR(c, 1.0, 1e-12);
}

TEST(L2Project, OrthogonalityOfResidual)
{
  auto mesh = pentagon(1);
  const DGSpace space = build_space(mesh, 2, 1);
  auto u = [](const Vec2 & p) { return std::sin(p.x) * std::exp(p.y); };
  const DGFunction pu = l2_project(space, u);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    DGFunction v(space);
    for (double & c : v.coeffs)
      c = dist(rng);
    double inner = 0.0, scale = 0.0;
    for (int e = 0; e < mesh->n_elements(); ++e) {
      const ElementGeometry & geo = mesh->geometry(e);
      for (int q = 0; q < space.elem_rule.size(); ++q) {
        double uh = 0.0, vh = 0.0;
        for (int i = 0; i < space.n_local; ++i) {
          uh += pu.coeffs[space.dof(e, 0, i)] * space.basis.value(q, i);
          vh += v.coeffs[space.dof(e, 0, i)] * space.basis.value(q, i);
        }
        const double w = 2.0 * geo.area * space.elem_rule.weights[q];
        const double diff = u(geo.to_physical(space.elem_rule.points[q])) - uh;
        inner += w * diff * vh;
        scale += w * std::abs(diff * vh);
      }
    }
    EXPECT_LE(std::abs(inner), 1e-10 * (1.0 + scale));
  }
}

TEST(L2Project, BestApproximationRate)
{
  // smooth field: L2 error decays at about order k+1, measured with an
  // independent finer rule than the one defining the projection
  for (int k : {1, 2}) {
    std::vector<double> errors;
    Mesh mesh = build_coarse({DomainSpec::Kind::pentagon, nullptr});
    auto u = [](const Vec2 & p) { return std::sin(p.x + 0.3) * std::cos(0.7 * p.y); };
    const QuadRule fine = gauss_triangle(2 * k + 4);
    for (int level = 0; level < 4; ++level) {
      auto shared = std::make_shared<const Mesh>(mesh);
      const DGSpace space = build_space(shared, k, 1);
      const BernsteinBasis fine_basis = bernstein_eval(k, fine.points);
      const DGFunction pu = l2_project(space, u);
      double err2 = 0.0;
      for (int e = 0; e < shared->n_elements(); ++e) {
        const ElementGeometry & geo = shared->geometry(e);
        for (int q = 0; q < fine.size(); ++q) {
          double uh = 0.0;
          for (int i = 0; i < space.n_local; ++i)
            uh += pu.coeffs[space.dof(e, 0, i)] * fine_basis.value(q, i);
          const double d = u(geo.to_physical(fine.points[q])) - uh;
          err2 += 2.0 * geo.area * fine.weights[q] * d * d;
        }
      }
      errors.push_back(std::sqrt(err2));
      mesh = refine_uniform(mesh);
    }
    const double order = std::log2(errors[errors.size() - 2] / errors.back());
    EXPECT_NEAR(order, k + 1.0, 0.2) << "k=" << k;
  }
}
