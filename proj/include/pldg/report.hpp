#ifndef PLDG_REPORT_HPP
#define PLDG_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pldg/descent.hpp"
#include "pldg/energy.hpp"
#include "pldg/problems.hpp"

namespace pldg
{

// One row of a convergence table. Order fields are NaN when absent (coarsest
// level) or undefined (non-positive error ratio); the CSV writer prints an
// empty field for the former and `nan` for the latter.
struct LevelResult
{
  int level = 0;
  int n_elements = 0;
  int n_dof = 0;
  double err_u = 0.0;
  double err_q = 0.0;
  double err_sigma = 0.0;
  double ord_u = std::numeric_limits<double>::quiet_NaN();
  double ord_q = std::numeric_limits<double>::quiet_NaN();
  double ord_sigma = std::numeric_limits<double>::quiet_NaN();
  bool has_orders = false;
  int iterations = 0;
  double seconds = 0.0;
};

// q_h = D(u_h; g_D) and sigma_h = Pi_{Sigma_h} A(q_h).
inline std::pair<DGFunction, DGFunction> recover_gradients(const EnergyContext & ctx, const DGFunction & u_h)
{
  const DGSpace & qs = *ctx.vector_space;
  DGFunction q_h = apply_ddg(ctx.grad, u_h, ctx.b_g);
  DGFunction sigma_h(qs);
  const double p = ctx.p();
  std::vector<double> mx(qs.n_local), my(qs.n_local);
  for (int e = 0; e < ctx.mesh->n_elements(); ++e) {
    std::fill(mx.begin(), mx.end(), 0.0);
    std::fill(my.begin(), my.end(), 0.0);
    for (int q = 0; q < qs.elem_rule.size(); ++q) {
      const Vec2 a = a_op(detail::eval_vector_tabulated(q_h, e, q), p);
      const double w = qs.elem_rule.weights[q];
      for (int i = 0; i < qs.n_local; ++i) {
        const double wb = w * qs.basis.value(q, i);
        mx[i] += wb * a.x;
        my[i] += wb * a.y;
      }
    }
    qs.gram_chol.solve_in_place(mx.data());
    qs.gram_chol.solve_in_place(my.data());
    for (int i = 0; i < qs.n_local; ++i) {
      sigma_h.coeffs[qs.dof(e, 0, i)] = mx[i];
      sigma_h.coeffs[qs.dof(e, 1, i)] = my[i];
    }
  }
  return {std::move(q_h), std::move(sigma_h)};
}

struct ErrorTriple
{
  double u = 0.0;     // L^p
  double q = 0.0;     // L^p
  double sigma = 0.0; // L^{p'}
};

// L^p element-quadrature norms of (u - u_h) and (q - q_h), L^{p'} for sigma,
// all with the forward rules.
inline ErrorTriple error_norms(const EnergyContext & ctx, const ProblemSpec & prob, const DGFunction & u_h,
                               const DGFunction & q_h, const DGFunction & sigma_h)
{
  const double p = ctx.p();
  const double pc = ctx.exponent.conjugate();
  const DGSpace & vs = *ctx.scalar_space;
  double eu = 0.0, eq = 0.0, es = 0.0;
  for (int e = 0; e < ctx.mesh->n_elements(); ++e) {
    const ElementGeometry & geo = ctx.mesh->geometry(e);
    for (int q = 0; q < vs.elem_rule.size(); ++q) {
      const Vec2 x = geo.to_physical(vs.elem_rule.points[q]);
      const double w = 2.0 * geo.area * vs.elem_rule.weights[q];
      double uh = 0.0;
      for (int i = 0; i < vs.n_local; ++i)
        uh += u_h.coeffs[vs.dof(e, 0, i)] * vs.basis.value(q, i);
      eu += w * pow_abs(prob.u(x) - uh, p);
      const Vec2 qh = detail::eval_vector_tabulated(q_h, e, q);
      const Vec2 sh = detail::eval_vector_tabulated(sigma_h, e, q);
      eq += w * pow_abs(norm(prob.q(x) - qh), p);
      es += w * pow_abs(norm(prob.sigma(x) - sh), pc);
    }
  }
  return {std::pow(eu, 1.0 / p), std::pow(eq, 1.0 / p), std::pow(es, 1.0 / pc)};
}

// order = log2(e_coarse / e_fine) per column; non-positive errors leave the
// NaN marker in place.
inline void convergence_orders(std::vector<LevelResult> & results)
{
  auto order_of = [](double coarse, double fine) {
    if (!(coarse > 0.0) || !(fine > 0.0))
      return std::numeric_limits<double>::quiet_NaN();
    return std::log2(coarse / fine);
  };
  for (size_t i = 1; i < results.size(); ++i) {
    results[i].ord_u = order_of(results[i - 1].err_u, results[i].err_u);
    results[i].ord_q = order_of(results[i - 1].err_q, results[i].err_q);
    results[i].ord_sigma = order_of(results[i - 1].err_sigma, results[i].err_sigma);
    results[i].has_orders = true;
  }
}

namespace detail
{

inline std::string csv_float(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", v); // 10 significant digits
  return buf;
}

inline std::string csv_order(const LevelResult & row, double v)
{
  if (!row.has_orders)
    return ""; // absent at the coarsest level
  return csv_float(v);
}

} // namespace detail

inline void write_table_csv(std::ostream & os, const std::vector<LevelResult> & results)
{
  os << "level,Ne,Ndof,err_u,ord_u,err_q,ord_q,err_sigma,ord_sigma,iters,seconds\n";
  for (const LevelResult & row : results) {
    os << row.level << ',' << row.n_elements << ',' << row.n_dof << ',' << detail::csv_float(row.err_u)
       << ',' << detail::csv_order(row, row.ord_u) << ',' << detail::csv_float(row.err_q) << ','
       << detail::csv_order(row, row.ord_q) << ',' << detail::csv_float(row.err_sigma) << ','
       << detail::csv_order(row, row.ord_sigma) << ',' << row.iterations << ','
       << detail::csv_float(row.seconds) << '\n';
  }
}

inline void write_history_csv(std::ostream & os, const std::vector<IterationRecord> & history)
{
  os << "iter,J,wnorm,rho,evals\n";
  for (const IterationRecord & rec : history)
    os << rec.iteration << ',' << detail::csv_float(rec.energy) << ',' << detail::csv_float(rec.w_norm)
       << ',' << detail::csv_float(rec.rho) << ',' << rec.evals << '\n';
}

} // namespace pldg

#endif
