#ifndef PLDG_ENERGY_HPP
#define PLDG_ENERGY_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "pldg/core.hpp"
#include "pldg/dgspace.hpp"
#include "pldg/ldg.hpp"
#include "pldg/mesh.hpp"

namespace pldg
{

// Flux nonlinearity A(tau) = |tau|^{p-2} tau with the continuous extension
// A(0) = 0 for every p in (1, inf).
inline Vec2 a_op(const Vec2 & tau, double p)
{
  if (p == 2.0)
    return tau;
  const double s = pow_abs(norm(tau), p - 2.0);
  return s * tau;
}

struct PExponent
{
  double p = 2.0;

  explicit PExponent(double value = 2.0) : p(value)
  {
    if (!(p > 1.0) || !std::isfinite(p))
      throw std::invalid_argument("PExponent: p must lie in (1, inf)");
  }

  double conjugate() const { return p / (p - 1.0); }
};

// Everything needed to evaluate the discrete energy and its derivative for
// one problem instance on one mesh/degree pair: the broken spaces, the
// discrete weak gradient with its Dirichlet lifting channel, and the problem
// data tabulated at the quadrature points.
struct EnergyContext
{
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const DGSpace> scalar_space; // V_h
  std::shared_ptr<const DGSpace> vector_space; // Q_h and Sigma_h
  GradOperator grad;
  PExponent exponent{2.0};
  std::vector<double> b_g;                 // Dirichlet lifting moments
  std::vector<double> f_q;                 // f at element quad points [e * nq + q]
  std::vector<std::vector<double>> gd_q;   // per Dirichlet face: g_D at face quad points
  std::vector<std::vector<double>> gn_q;   // per Neumann face: g_N . n at face quad points
  std::vector<double> load;                // moments (f, phi) + <g_N . n, phi>

  double p() const { return exponent.p; }
  double eta() const { return grad.flux.eta; }
};

using ScalarField = std::function<double(const Vec2 &)>;

inline EnergyContext make_context(std::shared_ptr<const Mesh> mesh, int k, PExponent exponent,
                                  FluxParams flux, const ScalarField & f, const ScalarField & g_d,
                                  const ScalarField & g_n = nullptr)
{
  EnergyContext ctx;
  ctx.mesh = mesh;
  ctx.scalar_space = std::make_shared<const DGSpace>(build_space(mesh, k, 1));
  ctx.vector_space = std::make_shared<const DGSpace>(build_space(mesh, k, 2));
  ctx.exponent = exponent;
  ctx.grad = assemble_grad(*ctx.scalar_space, *ctx.vector_space, std::move(flux));
  ctx.b_g = lift_moments(ctx.grad, g_d);

  const DGSpace & vs = *ctx.scalar_space;
  const int nq = vs.elem_rule.size();
  ctx.f_q.assign(static_cast<size_t>(mesh->n_elements()) * nq, 0.0);
  ctx.load.assign(vs.n_dof(), 0.0);
  for (int e = 0; e < mesh->n_elements(); ++e) {
    const ElementGeometry & geo = mesh->geometry(e);
    for (int q = 0; q < nq; ++q) {
      const double fv = f ? f(geo.to_physical(vs.elem_rule.points[q])) : 0.0;
      ctx.f_q[static_cast<size_t>(e) * nq + q] = fv;
      const double w = 2.0 * geo.area * vs.elem_rule.weights[q] * fv;
      for (int i = 0; i < vs.n_local; ++i)
        ctx.load[vs.dof(e, 0, i)] += w * vs.basis.value(q, i);
    }
  }

  ctx.gd_q.resize(mesh->n_faces());
  ctx.gn_q.resize(mesh->n_faces());
  const int nqf = ctx.grad.face_rule.size();
  for (int fi = 0; fi < mesh->n_faces(); ++fi) {
    const Face & face = mesh->faces[fi];
    if (face.tag == BoundaryTag::dirichlet) {
      ctx.gd_q[fi].resize(nqf);
      for (int q = 0; q < nqf; ++q)
        ctx.gd_q[fi][q] = g_d ? g_d(ctx.grad.face_points[fi][q]) : 0.0;
    } else if (face.tag == BoundaryTag::neumann) {
      if (!g_n)
        throw std::invalid_argument("make_context: Neumann faces present but no g_N data");
      ctx.gn_q[fi].resize(nqf);
      for (int q = 0; q < nqf; ++q) {
        const double gv = g_n(ctx.grad.face_points[fi][q]);
        ctx.gn_q[fi][q] = gv;
        const double w = face.length * ctx.grad.face_rule.weights[q] * gv;
        const DenseMatrix & tr = ctx.grad.trace_left[fi];
        for (int i = 0; i < ctx.scalar_space->n_local; ++i)
          ctx.load[ctx.scalar_space->dof(face.left, 0, i)] += w * tr(q, i);
      }
    }
  }
  return ctx;
}

namespace detail
{

inline Vec2 eval_vector_tabulated(const DGFunction & fn, int e, int q)
{
  const DGSpace & space = *fn.space;
  Vec2 v;
  for (int i = 0; i < space.n_local; ++i) {
    const double b = space.basis.value(q, i);
    v.x += fn.coeffs[space.dof(e, 0, i)] * b;
    v.y += fn.coeffs[space.dof(e, 1, i)] * b;
  }
  return v;
}

} // namespace detail

// J_h(u) = (1/p) ||D(u; g_D)||_p^p
//        + (1/p) ||[[u]]||^p_{p, interior, eta h^{1-p}}
//        + (1/p) ||u - g_D||^p_{p, Dirichlet, eta h^{1-p}}
//        - (f, u) - <g_N . n, u>.
// Returns whatever the floating-point evaluation produces; callers detect
// non-finite results (extreme coefficients overflow the p-th powers).
inline double energy_Jh(const EnergyContext & ctx, const DGFunction & u)
{
  const double p = ctx.p();
  const double eta = ctx.eta();
  const Mesh & mesh = *ctx.mesh;
  const DGFunction q_h = apply_ddg(ctx.grad, u, ctx.b_g);

  double volume = 0.0;
  const DGSpace & qs = *ctx.vector_space;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double scale = 2.0 * mesh.areas[e];
    double local = 0.0;
    for (int q = 0; q < qs.elem_rule.size(); ++q)
      local += qs.elem_rule.weights[q] * pow_abs(norm(detail::eval_vector_tabulated(q_h, e, q)), p);
    volume += scale * local;
  }

  double faces = 0.0;
  std::vector<double> tl, tr;
  for (int fi = 0; fi < mesh.n_faces(); ++fi) {
    const Face & face = mesh.faces[fi];
    if (face.tag == BoundaryTag::neumann)
      continue;
    const double weight = eta * pow_abs(face.h_e, 1.0 - p) * face.length;
    ctx.grad.trace_values(u, fi, true, tl);
    double local = 0.0;
    if (face.is_boundary()) {
      for (int q = 0; q < ctx.grad.face_rule.size(); ++q)
        local += ctx.grad.face_rule.weights[q] * pow_abs(tl[q] - ctx.gd_q[fi][q], p);
    } else {
      ctx.grad.trace_values(u, fi, false, tr);
      for (int q = 0; q < ctx.grad.face_rule.size(); ++q)
        local += ctx.grad.face_rule.weights[q] * pow_abs(tl[q] - tr[q], p);
    }
    faces += weight * local;
  }

  const double coupling = vec_dot(ctx.load, u.coeffs);
  return (volume + faces) / p - coupling;
}

// Residual vector of the first-order Gateaux derivative:
// r_i = (A(D(u; g_D)), D(phi_i; 0)) + <eta A(h^{-1}[[u]]), [[phi_i]]>
//     + <eta A(h^{-1}(u - g_D) n), phi_i n> - (f, phi_i) - <g_N . n, phi_i>.
inline std::vector<double> grad_Jh(const EnergyContext & ctx, const DGFunction & u)
{
  const double p = ctx.p();
  const double eta = ctx.eta();
  const Mesh & mesh = *ctx.mesh;
  const DGSpace & vs = *ctx.scalar_space;
  const DGSpace & qs = *ctx.vector_space;

  // volume term through the transpose of the gradient machinery:
  // r_vol = B^T M^{-1} m with m the moments of A(q_h) against Q_h
  const DGFunction q_h = apply_ddg(ctx.grad, u, ctx.b_g);
  std::vector<double> m(qs.n_dof(), 0.0);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double scale = 2.0 * mesh.areas[e];
    for (int q = 0; q < qs.elem_rule.size(); ++q) {
      const Vec2 a = a_op(detail::eval_vector_tabulated(q_h, e, q), p);
      const double w = scale * qs.elem_rule.weights[q];
      for (int i = 0; i < qs.n_local; ++i) {
        const double b = w * qs.basis.value(q, i);
        m[qs.dof(e, 0, i)] += b * a.x;
        m[qs.dof(e, 1, i)] += b * a.y;
      }
    }
  }
  std::vector<double> r;
  ctx.grad.apply_transpose(mass_solve(qs, m), r);

  // face terms: eta h^{1-p} |jump|^{p-2} jump against the test jumps
  std::vector<double> tl, tr;
  for (int fi = 0; fi < mesh.n_faces(); ++fi) {
    const Face & face = mesh.faces[fi];
    if (face.tag == BoundaryTag::neumann)
      continue;
    const double weight = eta * pow_abs(face.h_e, 1.0 - p) * face.length;
    ctx.grad.trace_values(u, fi, true, tl);
    if (face.is_boundary()) {
      const DenseMatrix & trace = ctx.grad.trace_left[fi];
      for (int q = 0; q < ctx.grad.face_rule.size(); ++q) {
        const double d = tl[q] - ctx.gd_q[fi][q];
        const double factor = weight * ctx.grad.face_rule.weights[q] * pow_abs(d, p - 2.0) * d;
        for (int j = 0; j < vs.n_local; ++j)
          r[vs.dof(face.left, 0, j)] += factor * trace(q, j);
      }
    } else {
      ctx.grad.trace_values(u, fi, false, tr);
      const DenseMatrix & trace_l = ctx.grad.trace_left[fi];
      const DenseMatrix & trace_r = ctx.grad.trace_right[fi];
      for (int q = 0; q < ctx.grad.face_rule.size(); ++q) {
        const double d = tl[q] - tr[q];
        const double factor = weight * ctx.grad.face_rule.weights[q] * pow_abs(d, p - 2.0) * d;
        for (int j = 0; j < vs.n_local; ++j) {
          r[vs.dof(face.left, 0, j)] += factor * trace_l(q, j);
          r[vs.dof(face.right, 0, j)] -= factor * trace_r(q, j);
        }
      }
    }
  }

  vec_axpy(r, -1.0, ctx.load);
  return r;
}

// ||v||_{J,p} = (||D(v; 0)||_p^p + ||[[v]]||^p_{p, interior + Dirichlet, eta h^{1-p}})^{1/p}
inline double jnorm(const EnergyContext & ctx, const DGFunction & v)
{
  const double p = ctx.p();
  const Mesh & mesh = *ctx.mesh;
  const DGFunction d = apply_ddg(ctx.grad, v);
  const DGSpace & qs = *ctx.vector_space;

  double total = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double scale = 2.0 * mesh.areas[e];
    for (int q = 0; q < qs.elem_rule.size(); ++q)
      total += scale * qs.elem_rule.weights[q] * pow_abs(norm(detail::eval_vector_tabulated(d, e, q)), p);
  }
  std::vector<double> tl, tr;
  for (int fi = 0; fi < mesh.n_faces(); ++fi) {
    const Face & face = mesh.faces[fi];
    if (face.tag == BoundaryTag::neumann)
      continue;
    const double weight = ctx.eta() * pow_abs(face.h_e, 1.0 - p) * face.length;
    ctx.grad.trace_values(v, fi, true, tl);
    if (face.is_boundary()) {
      for (int q = 0; q < ctx.grad.face_rule.size(); ++q)
        total += weight * ctx.grad.face_rule.weights[q] * pow_abs(tl[q], p);
    } else {
      ctx.grad.trace_values(v, fi, false, tr);
      for (int q = 0; q < ctx.grad.face_rule.size(); ++q)
        total += weight * ctx.grad.face_rule.weights[q] * pow_abs(tl[q] - tr[q], p);
    }
  }
  return std::pow(total, 1.0 / p);
}

// E_h(u; g_D) = (||D(u; g_D)||_p^p + ||[[u]]||^p_{p, interior} + ||u - g_D||^p_{p, Dirichlet})^{1/p}
inline double energy_Eh(const EnergyContext & ctx, const DGFunction & u)
{
  const double p = ctx.p();
  const double coupling = vec_dot(ctx.load, u.coeffs);
  const double ep = p * (energy_Jh(ctx, u) + coupling);
  return std::pow(std::max(ep, 0.0), 1.0 / p);
}

// L^p norm over the mesh of a scalar DGFunction (forward quadrature rules).
inline double lp_norm(const EnergyContext & ctx, const DGFunction & v)
{
  const double p = ctx.p();
  const DGSpace & vs = *ctx.scalar_space;
  double total = 0.0;
  for (int e = 0; e < ctx.mesh->n_elements(); ++e) {
    const double scale = 2.0 * ctx.mesh->areas[e];
    for (int q = 0; q < vs.elem_rule.size(); ++q) {
      double uh = 0.0;
      for (int i = 0; i < vs.n_local; ++i)
        uh += v.coeffs[vs.dof(e, 0, i)] * vs.basis.value(q, i);
      total += scale * vs.elem_rule.weights[q] * pow_abs(uh, p);
    }
  }
  return std::pow(total, 1.0 / p);
}

} // namespace pldg

#endif
