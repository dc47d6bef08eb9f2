#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "oracles.hpp"
#include "pldg/descent.hpp"

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

const ScalarField zero_field = [](const Vec2 &) { return 0.0; };

} // namespace

TEST(GoldenSection, MinimumAtTheGuess)
{
  int evals = 0;
  auto f = [&](double x) {
    ++evals;
    return (x - 1.0) * (x - 1.0);
  };
  const GoldenResult r = golden_section(f, 1.0, 1e-8);
  EXPECT_NEAR(r.x, 1.0, 1e-8);
  EXPECT_LE(r.y, 1e-15);
  EXPECT_EQ(r.evals, evals);
}

TEST(GoldenSection, ExpansionFindsFarMinimum)
{
  auto f = [](double x) { return (x - 2.0) * (x - 2.0); };
  const GoldenResult r = golden_section(f, 0.5, 1e-6);
  EXPECT_NEAR(r.x, 2.0, 1e-6);
}

TEST(GoldenSection, MonotoneIncreasingReturnsNearZero)
{
  double first_probe = -1.0;
  auto f = [&](double x) {
    if (first_probe < 0.0 && x > 0.0)
      first_probe = x;
    return x;
  };
  const GoldenResult r = golden_section(f, 1.0, 1e-4);
  EXPECT_LE(r.x, 1e-4);
  EXPECT_LE(r.y, first_probe);
}

TEST(GoldenSection, FlatLandscapeTiesToZero)
{
  auto f = [](double) { return 3.25; };
  const GoldenResult r = golden_section(f, 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(r.x, 0.0);
  EXPECT_DOUBLE_EQ(r.y, 3.25);
}

TEST(GoldenSection, OneEvaluationPerRefinementIteration)
{
  // quadratic with minimum inside the first bracket: after bracketing, the
  // count grows by exactly one per refinement step
  int evals = 0;
  auto f = [&](double x) {
    ++evals;
    return (x - 0.7) * (x - 0.7);
  };
  golden_section(f, 1.0, 1e-10);
  // bracketing uses 4 evaluations (0, guess, interior, x3); refinement needs
  // log_lambda(delta / width) steps, each one evaluation
  const int refine_steps = evals - 4;
  const double lambda = 0.5 * (std::sqrt(5.0) - 1.0);
  const int expected = static_cast<int>(std::ceil(std::log(1e-10 / 1.0) / std::log(lambda)));
  EXPECT_NEAR(refine_steps, expected, 3);
}

TEST(GoldenSection, InputValidation)
{
  auto f = [](double x) { return x * x; };
  EXPECT_THROW(golden_section(f, -1.0, 1e-6), std::invalid_argument);
  EXPECT_THROW(golden_section(f, 1.0, 0.0), std::invalid_argument);
}

TEST(SteepestDescent, ZeroDataStopsImmediately)
{
  auto mesh = pentagon();
  const EnergyContext ctx = make_context(mesh, 2, PExponent(1.5), make_mdldg_flux(*mesh), zero_field, zero_field);
  SolverConfig cfg;
  const DescentResult result = steepest_descent(ctx, cfg, DGFunction(*ctx.scalar_space));
  EXPECT_EQ(result.accepted_steps, 0);
  EXPECT_EQ(result.reason, DescentResult::Stop::w_norm);
  ASSERT_EQ(result.history.size(), 1u);
  EXPECT_LT(result.history[0].w_norm, cfg.delta_w);
}

TEST(SteepestDescent, PTwoConvergesInOneAcceptedStep)
{
  auto mesh = pentagon(1);
  const EnergyContext ctx = make_context(
      mesh, 2, PExponent(2.0), make_mdldg_flux(*mesh),
      [](const Vec2 & q) { return std::sin(q.x) * std::cos(q.y); }, [](const Vec2 & q) { return q.x * q.x; });
  SolverConfig cfg;
  cfg.eps = 0.0;
  const DescentResult result = steepest_descent(ctx, cfg, DGFunction(*ctx.scalar_space));
  EXPECT_EQ(result.accepted_steps, 1);
  ASSERT_GE(result.history.size(), 1u);
  EXPECT_NEAR(result.history[0].rho, 1.0, 1e-6);
  // the single preconditioned step is the full linear solve up to the
  // line-search resolution |1 - rho| ~ 1e-6
  EXPECT_LT(result.final_grad_inf, 1e-5 * (1.0 + vec_norm_inf(ctx.load)));
}

TEST(SteepestDescent, MonotoneEnergyAndPositiveDirections)
{
  auto mesh = pentagon(1);
  const EnergyContext ctx = make_context(
      mesh, 2, PExponent(1.5), make_mdldg_flux(*mesh),
      [](const Vec2 & q) { return 1.0 + q.y; }, [](const Vec2 & q) { return 0.5 * q.x; });
  SolverConfig cfg;
  const DescentResult result = steepest_descent(ctx, cfg, poisson_initial_guess(ctx));
  EXPECT_GE(result.accepted_steps, 2);
  for (size_t i = 1; i < result.history.size(); ++i)
    EXPECT_LE(result.history[i].energy, result.history[i - 1].energy);
  for (const IterationRecord & rec : result.history)
    EXPECT_GE(rec.w_norm, 0.0);
  // stationarity scale is recorded
  EXPECT_GT(result.final_grad_inf, 0.0);
  EXPECT_LT(result.final_grad_inf, 1e-4);
}

TEST(SteepestDescent, SingularAndDegenerateCasesTerminateQuickly)
{
  auto mesh = pentagon(1);
  for (double p : {1.5, 4.0}) {
    const EnergyContext ctx = make_context(
        mesh, 2, PExponent(p), make_mdldg_flux(*mesh),
        [](const Vec2 & q) { return q.x * q.y; }, [](const Vec2 & q) { return 0.2 * (q.x + q.y); });
    SolverConfig cfg;
    const DescentResult result = steepest_descent(ctx, cfg, poisson_initial_guess(ctx));
    EXPECT_NE(result.reason, DescentResult::Stop::max_iters) << "p=" << p;
    EXPECT_LT(result.accepted_steps, 60) << "p=" << p;
    EXPECT_GE(result.accepted_steps, 1) << "p=" << p;
  }
}

TEST(SteepestDescent, NonFiniteEnergyReported)
{
  auto mesh = pentagon();
  const EnergyContext ctx = make_context(mesh, 1, PExponent(3.0), make_mdldg_flux(*mesh), zero_field, zero_field);
  DGFunction horrid(*ctx.scalar_space);
  std::fill(horrid.coeffs.begin(), horrid.coeffs.end(), 1e200);
  horrid.coeffs[0] = -3e200;
  SolverConfig cfg;
  EXPECT_THROW(steepest_descent(ctx, cfg, horrid), std::runtime_error);
}

TEST(SteepestDescent, ConfigValidation)
{
  auto mesh = pentagon();
  const EnergyContext ctx = make_context(mesh, 1, PExponent(2.0), make_mdldg_flux(*mesh), zero_field, zero_field);
  SolverConfig cfg;
  cfg.max_iters = 0;
  EXPECT_THROW(steepest_descent(ctx, cfg, DGFunction(*ctx.scalar_space)), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.delta_w = 0.0;
  EXPECT_THROW(steepest_descent(ctx, cfg, DGFunction(*ctx.scalar_space)), std::invalid_argument);
}
