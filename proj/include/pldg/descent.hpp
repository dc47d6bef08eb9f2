#ifndef PLDG_DESCENT_HPP
#define PLDG_DESCENT_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pldg/core.hpp"
#include "pldg/energy.hpp"
#include "pldg/precond.hpp"

namespace pldg
{

struct SolverConfig
{
  double eps = 1e-14;       // weight stabilization (ignored at p = 2)
  double delta_w = 1e-16;   // stop on the weighted descent norm
  double delta_rho = 1e-16; // stop on the accepted step size
  int max_iters = 500;
  double line_delta = 1e-16; // golden-section bracket width, scaled by max(1, rho_prev)

  void validate() const
  {
    if (!(delta_w > 0.0) || !(delta_rho > 0.0) || !(line_delta > 0.0))
      throw std::invalid_argument("SolverConfig: tolerances must be positive");
    if (max_iters < 1)
      throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  }
};

struct IterationRecord
{
  int iteration = 0;
  double energy = 0.0; // J_h after this pass (unchanged when the pass only stopped)
  double w_norm = 0.0; // sqrt(r . w) at the pass start
  double rho = 0.0;    // accepted step size, 0 when the pass stopped before updating
  int evals = 0;       // line-search energy evaluations
};

struct GoldenResult
{
  double x = 0.0;
  double y = 0.0;
  int evals = 0;
};

// One-sided golden-section line search for convex f on [0, inf) with
// f'(0) < 0 expected. Brackets by shrinking toward 0 when f(guess) >= f(0)
// and by geometric expansion while f decreases otherwise, then refines with
// the classical four-point scheme (one new evaluation per iteration).
// Returns the argmin over every evaluated point; ties keep the earliest
// evaluation, so a flat landscape returns x = 0.
inline GoldenResult golden_section(const std::function<double(double)> & f, double guess, double delta)
{
  if (!(guess >= 0.0))
    throw std::invalid_argument("golden_section: guess must be >= 0");
  if (!(delta > 0.0))
    throw std::invalid_argument("golden_section: delta must be positive");
  const double lambda = 0.5 * (std::sqrt(5.0) - 1.0);

  GoldenResult best;
  best.y = std::numeric_limits<double>::infinity();
  auto probe = [&](double x) {
    const double y = f(x);
    ++best.evals;
    if (y < best.y) {
      best.x = x;
      best.y = y;
    }
    return y;
  };

  double x1 = 0.0, y1 = probe(0.0);
  double x2, y2, x4, y4;
  const double yg = probe(guess);
  if (yg >= y1) {
    // shrink toward 0 until an interior decrease appears or the bracket
    // falls below delta
    x4 = guess;
    y4 = yg;
    x2 = (1.0 - lambda) * x4;
    y2 = probe(x2);
    while (x4 > delta) {
      if (y1 <= y2) {
        x4 = x2;
        y4 = y2;
        x2 = (1.0 - lambda) * x4;
        y2 = probe(x2);
      } else {
        break;
      }
    }
  } else {
    // expand geometrically while f keeps decreasing
    x2 = guess;
    y2 = yg;
    x4 = x2 / lambda;
    y4 = probe(x4);
    while (y2 > y4) {
      x1 = x2;
      y1 = y2;
      x2 = x4;
      y2 = y4;
      x4 = x2 / lambda;
      y4 = probe(x4);
    }
  }

  double x3 = lambda * x2 + (1.0 - lambda) * x4;
  double y3 = probe(x3);
  // The requested width can sit below the double-precision spacing of the
  // bracket endpoints; widen it to a few ulps of the bracket location (and
  // cap the refinement count) so the loop always terminates.
  for (int step = 0; step < 256; ++step) {
    const double resolution = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(x1) + std::abs(x4));
    if (!(x4 - x1 > std::max(delta, resolution)))
      break;
    if (y2 > y3) {
      x1 = x2;
      y1 = y2;
      x2 = x3;
      y2 = y3;
      x3 = lambda * x3 + (1.0 - lambda) * x4;
      y3 = probe(x3);
    } else {
      x4 = x3;
      y4 = y3;
      x3 = x2;
      y3 = y2;
      x2 = (1.0 - lambda) * x1 + lambda * x2;
      y2 = probe(x2);
    }
  }
  return best;
}

struct DescentResult
{
  enum class Stop
  {
    w_norm,    // ||w_h|| < delta_w
    step_size, // accepted rho < delta_rho
    stall,     // line search found no decrease beyond floating-point resolution
    max_iters
  };

  DGFunction u;
  std::vector<IterationRecord> history;
  int accepted_steps = 0;
  double final_grad_inf = 0.0;
  Stop reason = Stop::max_iters;

  explicit DescentResult(const DGSpace & space) : u(space) {}
};

// Preconditioned steepest descent: per iteration the preconditioner is
// reassembled at the current iterate, w solves A w = grad J_h(u), the
// weighted norm is ||w|| = sqrt(grad . w), and the step comes from the
// golden-section search warm-started at the previous step size. Beyond the
// delta_w / delta_rho / N_it stops, the loop also stops when the line search
// cannot decrease J_h beyond floating-point resolution (the energy
// improvements reachable below that point are pure rounding noise).
inline DescentResult steepest_descent(const EnergyContext & ctx, const SolverConfig & cfg,
                                      const DGFunction & u0)
{
  cfg.validate();
  if (u0.space != ctx.scalar_space.get())
    throw std::invalid_argument("steepest_descent: u0 must live in the context's scalar space");
  DescentResult result(*ctx.scalar_space);
  result.u = u0;
  double rho_prev = 1.0;
  double energy = energy_Jh(ctx, result.u);
  if (!std::isfinite(energy))
    throw std::runtime_error("steepest_descent: non-finite energy at the initial guess");
  // Line-search improvements below this resolution are rounding dust. At
  // p = 2 one preconditioned step solves the quadratic exactly, so anything
  // the search still finds afterwards is bounded by its own rho resolution
  // (~1e-13 relative); the coarser threshold stops there. For p != 2 the
  // iteration is allowed to grind down to the floating-point floor.
  const double stall_tol =
      (ctx.p() == 2.0 ? 64.0 : 4.0) * std::numeric_limits<double>::epsilon();

  DGFunction trial(*ctx.scalar_space);
  for (int k = 0; k < cfg.max_iters; ++k) {
    const PrecondSystem sys = assemble_precond(ctx, result.u, cfg.eps);
    const std::vector<double> r = grad_Jh(ctx, result.u);
    const std::vector<double> w = sys.solve(r);
    const double w_norm = std::sqrt(std::max(vec_dot(r, w), 0.0));

    if (w_norm < cfg.delta_w) {
      result.history.push_back({k, energy, w_norm, 0.0, 0});
      result.reason = DescentResult::Stop::w_norm;
      break;
    }

    auto line = [&](double rho) {
      trial.coeffs = result.u.coeffs;
      vec_axpy(trial.coeffs, -rho, w);
      return energy_Jh(ctx, trial);
    };
    const GoldenResult ls = golden_section(line, rho_prev, cfg.line_delta * std::max(1.0, rho_prev));

    if (ls.x < cfg.delta_rho) {
      result.history.push_back({k, energy, w_norm, ls.x, ls.evals});
      result.reason = DescentResult::Stop::step_size;
      break;
    }
    if (ls.y >= energy - stall_tol * (1.0 + std::abs(energy))) {
      result.history.push_back({k, energy, w_norm, 0.0, ls.evals});
      result.reason = DescentResult::Stop::stall;
      break;
    }
    if (!std::isfinite(ls.y))
      throw std::runtime_error("steepest_descent: non-finite energy along the search direction");

    vec_axpy(result.u.coeffs, -ls.x, w);
    energy = ls.y;
    rho_prev = ls.x;
    ++result.accepted_steps;
    result.history.push_back({k, energy, w_norm, ls.x, ls.evals});
  }

  result.final_grad_inf = vec_norm_inf(grad_Jh(ctx, result.u));
  return result;
}

} // namespace pldg

#endif
