#ifndef PLDG_CHECKS_HPP
#define PLDG_CHECKS_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pldg/bernstein.hpp"
#include "pldg/descent.hpp"
#include "pldg/energy.hpp"
#include "pldg/mesh.hpp"
#include "pldg/precond.hpp"
#include "pldg/problems.hpp"
#include "pldg/quadrature.hpp"

namespace pldg
{

struct CheckResult
{
  std::string name;
  bool ok = false;
  std::string detail;
};

// Moment-exactness sweep of a triangle rule against the closed-form monomial
// integrals. Exposed separately so corrupted rules can be fed in as a
// negative control.
inline bool verify_triangle_rule(const QuadRule & rule, int degree, double tol = 1e-12)
{
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) {
      double s = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * std::pow(rule.points[q].x, a) * std::pow(rule.points[q].y, b);
      const double exact = triangle_monomial_integral(a, b);
      if (std::abs(s - exact) > tol * exact)
        return false;
    }
  return true;
}

namespace checks_detail
{

inline DGFunction random_function(const DGSpace & space, std::mt19937_64 & rng, double amplitude = 1.0)
{
  DGFunction fn(space);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  for (double & c : fn.coeffs)
    c = dist(rng);
  return fn;
}

inline std::shared_ptr<const Mesh> pentagon(int levels)
{
  Mesh mesh = build_coarse({DomainSpec::Kind::pentagon, nullptr});
  for (int i = 0; i < levels; ++i)
    mesh = refine_uniform(mesh);
  return std::make_shared<const Mesh>(std::move(mesh));
}

// (D(v; 0), zeta) through the dual identity, evaluated pointwise; used to
// cross-check the assembled sparse operator.
inline double dual_pairing(const EnergyContext & ctx, const DGFunction & v, const DGFunction & zeta)
{
  const Mesh & mesh = *ctx.mesh;
  const DGSpace & vs = *ctx.scalar_space;
  const DGSpace & qs = *ctx.vector_space;
  double total = 0.0;
  // -(v, div zeta)
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Mat2 & jit = mesh.geometry(e).jac_inv_t;
    for (int q = 0; q < qs.elem_rule.size(); ++q) {
      double vv = 0.0, div = 0.0;
      for (int i = 0; i < vs.n_local; ++i)
        vv += v.coeffs[vs.dof(e, 0, i)] * vs.basis.value(q, i);
      for (int i = 0; i < qs.n_local; ++i) {
        const Vec2 g = jit.apply(qs.basis.gradient(q, i));
        div += zeta.coeffs[qs.dof(e, 0, i)] * g.x + zeta.coeffs[qs.dof(e, 1, i)] * g.y;
      }
      total -= 2.0 * mesh.areas[e] * qs.elem_rule.weights[q] * vv * div;
    }
  }
  // face terms
  std::vector<double> vl, vr;
  for (int fi = 0; fi < mesh.n_faces(); ++fi) {
    const Face & f = mesh.faces[fi];
    const auto & pts = ctx.grad.face_points[fi];
    ctx.grad.trace_values(v, fi, true, vl);
    std::vector<Vec2> ref_l(pts.size()), ref_r;
    for (size_t q = 0; q < pts.size(); ++q)
      ref_l[q] = mesh.geometry(f.left).to_reference(pts[q]);
    const BernsteinBasis bl = bernstein_eval(qs.degree, ref_l);
    auto zeta_at = [&](const BernsteinBasis & basis, int elem, int q) {
      Vec2 z;
      for (int i = 0; i < qs.n_local; ++i) {
        z.x += zeta.coeffs[qs.dof(elem, 0, i)] * basis.value(q, i);
        z.y += zeta.coeffs[qs.dof(elem, 1, i)] * basis.value(q, i);
      }
      return z;
    };
    if (f.is_boundary()) {
      if (f.tag == BoundaryTag::neumann)
        for (int q = 0; q < ctx.grad.face_rule.size(); ++q)
          total += f.length * ctx.grad.face_rule.weights[q] * vl[q] *
                   dot(zeta_at(bl, f.left, q), f.normal);
      // Dirichlet faces carry only the g channel, zero here
      continue;
    }
    ctx.grad.trace_values(v, fi, false, vr);
    ref_r.resize(pts.size());
    for (size_t q = 0; q < pts.size(); ++q)
      ref_r[q] = mesh.geometry(f.right).to_reference(pts[q]);
    const BernsteinBasis br = bernstein_eval(qs.degree, ref_r);
    for (int q = 0; q < ctx.grad.face_rule.size(); ++q) {
      const double upwind = 0.5 * (vl[q] + vr[q]) + dot(ctx.grad.flux.c12[fi], (vl[q] - vr[q]) * f.normal);
      const double zjump = dot(zeta_at(bl, f.left, q), f.normal) - dot(zeta_at(br, f.right, q), f.normal);
      total += f.length * ctx.grad.face_rule.weights[q] * upwind * zjump;
    }
  }
  return total;
}

// direct quadrature of the weighted descent norm ||v||^2 at the iterate u
inline double descent_norm_direct(const EnergyContext & ctx, const DGFunction & u, double eps,
                                  const DGFunction & v)
{
  const double p = ctx.p();
  auto weight_of = [&](double mag) {
    if (p < 2.0)
      return std::pow(eps + mag, p - 2.0);
    if (p == 2.0)
      return 1.0;
    return eps + (mag > 0.0 ? std::pow(mag, p - 2.0) : 0.0);
  };
  const DGFunction q_u = apply_ddg(ctx.grad, u, ctx.b_g);
  const DGFunction d_v = apply_ddg(ctx.grad, v);
  double total = 0.0;
  const DGSpace & qs = *ctx.vector_space;
  for (int e = 0; e < ctx.mesh->n_elements(); ++e)
    for (int q = 0; q < qs.elem_rule.size(); ++q) {
      const Vec2 dv = detail::eval_vector_tabulated(d_v, e, q);
      const Vec2 qu = detail::eval_vector_tabulated(q_u, e, q);
      total += 2.0 * ctx.mesh->areas[e] * qs.elem_rule.weights[q] * weight_of(norm(qu)) * dot(dv, dv);
    }
  std::vector<double> ul, ur, vl, vr;
  for (int fi = 0; fi < ctx.mesh->n_faces(); ++fi) {
    const Face & f = ctx.mesh->faces[fi];
    if (f.tag == BoundaryTag::neumann)
      continue;
    const double inv_h = 1.0 / f.h_e;
    ctx.grad.trace_values(u, fi, true, ul);
    ctx.grad.trace_values(v, fi, true, vl);
    if (!f.is_boundary()) {
      ctx.grad.trace_values(u, fi, false, ur);
      ctx.grad.trace_values(v, fi, false, vr);
    }
    for (int q = 0; q < ctx.grad.face_rule.size(); ++q) {
      const double du = f.is_boundary() ? ul[q] - ctx.gd_q[fi][q] : ul[q] - ur[q];
      const double dv = f.is_boundary() ? vl[q] : vl[q] - vr[q];
      total += ctx.eta() * inv_h * weight_of(inv_h * std::abs(du)) * f.length *
               ctx.grad.face_rule.weights[q] * dv * dv;
    }
  }
  return total;
}

} // namespace checks_detail

// Deterministic property suites over every module; returns one line per
// suite. All randomness is derived from the given seed.
inline std::vector<CheckResult> run_checks(std::uint64_t seed)
{
  using namespace checks_detail;
  std::vector<CheckResult> results;
  auto add = [&](const std::string & name, bool ok, const std::string & detail = "") {
    results.push_back({name, ok, detail});
  };

  // quadrature
  {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 1; n <= 8 && ok; ++n) {
      const QuadRule rule = gauss_segment(n);
      for (int d = 0; d <= rule.exactness; ++d) {
        double s = 0.0;
        for (int q = 0; q < rule.size(); ++q)
          s += rule.weights[q] * std::pow(rule.points[q].x, d);
        if (std::abs(s - 1.0 / (d + 1)) > 1e-13 / (d + 1)) {
          ok = false;
          detail << "segment rule n=" << n << " fails at degree " << d;
          break;
        }
      }
    }
    add("quadrature-segment-exactness", ok, detail.str());
  }
  {
    bool ok = true;
    std::ostringstream detail;
    for (int d = 1; d <= 13 && ok; ++d)
      if (!verify_triangle_rule(gauss_triangle(d), d)) {
        ok = false;
        detail << "triangle rule degree " << d << " fails the moment sweep";
      }
    add("quadrature-triangle-moments", ok, detail.str());
  }
  {
    bool ok = true;
    for (int d = 1; d <= 13; ++d)
      for (double w : gauss_triangle(d).weights)
        ok = ok && w > 0.0;
    for (int n = 1; n <= 8; ++n)
      for (double w : gauss_segment(n).weights)
        ok = ok && w > 0.0;
    add("quadrature-weights-positive", ok);
  }

  // bernstein
  {
    bool ok = true;
    const QuadRule rule = gauss_triangle(10);
    for (int k = 1; k <= 6 && ok; ++k) {
      const BernsteinBasis basis = bernstein_eval(k, rule.points);
      for (int q = 0; q < basis.n_pts && ok; ++q) {
        double sum = 0.0;
        Vec2 gsum;
        for (int i = 0; i < basis.n_fun; ++i) {
          sum += basis.value(q, i);
          gsum += basis.gradient(q, i);
          ok = ok && basis.value(q, i) >= 0.0 && basis.value(q, i) <= 1.0;
        }
        ok = ok && std::abs(sum - 1.0) < 1e-14 && std::abs(gsum.x) < 1e-13 && std::abs(gsum.y) < 1e-13;
      }
    }
    add("bernstein-partition-of-unity", ok);
  }
  {
    bool ok = true;
    for (int k = 1; k <= 6 && ok; ++k) {
      const QuadRule rule = gauss_triangle(2 * k);
      const BernsteinBasis basis = bernstein_eval(k, rule.points);
      DenseMatrix gram(basis.n_fun, basis.n_fun);
      for (int q = 0; q < rule.size(); ++q)
        for (int i = 0; i < basis.n_fun; ++i)
          for (int j = 0; j < basis.n_fun; ++j)
            gram(i, j) += rule.weights[q] * basis.value(q, i) * basis.value(q, j);
      try {
        CholeskyFactor factor(gram);
      } catch (const std::exception &) {
        ok = false;
      }
    }
    add("bernstein-mass-spd", ok);
  }

  // mesh
  {
    bool ok = true;
    std::ostringstream detail;
    const Mesh pent = build_coarse({DomainSpec::Kind::pentagon, nullptr});
    const Mesh square = build_coarse({DomainSpec::Kind::unit_square_shifted, nullptr});
    ok = ok && pent.n_elements() == 7 && square.n_elements() == 16;
    ok = ok && std::abs(pent.total_area() - 3.5) < 1e-12 * 3.5;
    ok = ok && std::abs(square.total_area() - 1.0) < 1e-12;
    const Mesh fine = refine_uniform(pent);
    ok = ok && fine.n_elements() == 28 && std::abs(fine.h - 0.5 * pent.h) < 1e-14;
    for (const Mesh * m : {&pent, &square, &fine})
      for (const Face & f : m->faces) {
        ok = ok && std::abs(norm(f.normal) - 1.0) < 1e-14;
        const double ratio = f.h_e * f.length / m->areas[f.left];
        ok = ok && ratio > 0.2 && ratio < 5.0;
      }
    if (!ok)
      detail << "coarse mesh invariants violated";
    add("mesh-invariants", ok, detail.str());
  }

  // broken spaces: projection reproduces in-space fields, mass solve inverts
  std::mt19937_64 rng(seed);
  {
    bool ok = true;
    auto mesh = pentagon(1);
    for (int k : {1, 3}) {
      const DGSpace space = build_space(mesh, k, 1);
      const DGFunction fn = l2_project(space, [](const Vec2 & p) { return 1.0 - 2.0 * p.x + 0.5 * p.y; });
      for (int e = 0; e < mesh->n_elements() && ok; ++e) {
        const Vec2 ref{0.2, 0.3};
        const Vec2 x = mesh->geometry(e).to_physical(ref);
        ok = ok && std::abs(eval_scalar(fn, e, ref) - (1.0 - 2.0 * x.x + 0.5 * x.y)) < 1e-11;
      }
      // moments of the projection solve back to the same coefficients
      std::vector<double> rhs(space.n_dof(), 0.0);
      for (int e = 0; e < mesh->n_elements(); ++e)
        for (int i = 0; i < space.n_local; ++i) {
          double s = 0.0;
          for (int j = 0; j < space.n_local; ++j)
            s += space.gram(i, j) * fn.coeffs[space.dof(e, 0, j)];
          rhs[space.dof(e, 0, i)] = 2.0 * mesh->areas[e] * s;
        }
      const std::vector<double> back = mass_solve(space, rhs);
      for (int i = 0; i < space.n_dof() && ok; ++i)
        ok = ok && std::abs(back[i] - fn.coeffs[i]) < 1e-11 * (1.0 + std::abs(fn.coeffs[i]));
    }
    add("dgspace-projection-and-mass", ok);
  }

  // A-operator
  {
    bool ok = true;
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    std::uniform_real_distribution<double> pos(0.0, 4.0);
    for (double p : {1.2, 1.5, 3.0, 4.0}) {
      for (int trial = 0; trial < 200 && ok; ++trial) {
        const Vec2 tau{dist(rng), dist(rng)};
        const double lambda = pos(rng);
        const Vec2 lhs = a_op(lambda * tau, p);
        const Vec2 rhs = std::pow(lambda, p - 1.0) * a_op(tau, p);
        ok = ok && std::abs(lhs.x - rhs.x) < 1e-10 * (1.0 + norm(rhs)) &&
             std::abs(lhs.y - rhs.y) < 1e-10 * (1.0 + norm(rhs));
      }
    }
    add("aop-positive-homogeneity", ok);
  }
  {
    bool ok = true;
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (double p : {1.2, 1.5, 3.0, 4.0}) {
      for (int trial = 0; trial < 1000 && ok; ++trial) {
        const Vec2 t1{dist(rng), dist(rng)};
        const Vec2 t2{dist(rng), dist(rng)};
        if (norm(t1 - t2) < 1e-12)
          continue;
        ok = ok && dot(t2 - t1, a_op(t2, p) - a_op(t1, p)) > 0.0;
      }
    }
    add("aop-strict-monotonicity", ok);
  }
  {
    bool ok = true;
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (double p : {1.2, 1.5, 3.0, 4.0}) {
      const double pc = p / (p - 1.0);
      for (int trial = 0; trial < 200 && ok; ++trial) {
        const Vec2 tau{dist(rng), dist(rng)};
        const Vec2 back = a_op(a_op(tau, p), pc);
        ok = ok && std::abs(back.x - tau.x) < 1e-10 * (1.0 + norm(tau)) &&
             std::abs(back.y - tau.y) < 1e-10 * (1.0 + norm(tau));
      }
    }
    add("aop-inverse-roundtrip", ok);
  }

  // flux conventions
  {
    bool ok = true;
    auto mesh = pentagon(1);
    const FluxParams flux = make_mdldg_flux(*mesh);
    for (int fi = 0; fi < mesh->n_faces(); ++fi)
      if (!mesh->faces[fi].is_boundary())
        ok = ok && norm(flux.c12[fi]) < 0.5 + 1e-14;
    add("flux-c12-bounded", ok);
  }

  // D_DG identities
  {
    bool ok = true;
    std::ostringstream detail;
    auto mesh = pentagon(1);
    for (int k : {1, 2}) {
      const EnergyContext ctx = make_context(
          mesh, k, PExponent(2.0), make_mdldg_flux(*mesh), [](const Vec2 &) { return 0.0; },
          [](const Vec2 &) { return 0.0; });
      for (int trial = 0; trial < 5 && ok; ++trial) {
        const DGFunction v = random_function(*ctx.scalar_space, rng);
        const DGFunction zeta = random_function(*ctx.vector_space, rng);
        std::vector<double> moments;
        ctx.grad.apply(v.coeffs, moments);
        // (D v, zeta)_Omega = moments . zeta_coeffs by expansion of zeta
        const double primal = vec_dot(moments, zeta.coeffs);
        const double dual = dual_pairing(ctx, v, zeta);
        ok = ok && std::abs(primal - dual) < 1e-11 * (1.0 + std::abs(dual));
        if (!ok)
          detail << "primal/dual mismatch k=" << k << ": " << primal << " vs " << dual;
      }
    }
    add("ddg-primal-dual", ok, detail.str());
  }
  {
    bool ok = true;
    auto mesh = pentagon(1);
    const EnergyContext ctx = make_context(
        mesh, 2, PExponent(2.0), make_mdldg_flux(*mesh), [](const Vec2 &) { return 0.0; },
        [](const Vec2 & p) { return p.x; });
    const DGFunction v = l2_project(*ctx.scalar_space, [](const Vec2 & p) { return p.x; });
    const DGFunction d = apply_ddg(ctx.grad, v, ctx.b_g);
    for (int e = 0; e < mesh->n_elements(); ++e) {
      const Vec2 val = eval_vector(d, e, {0.3, 0.3});
      ok = ok && std::abs(val.x - 1.0) < 1e-11 && std::abs(val.y) < 1e-11;
    }
    add("ddg-linear-consistency", ok);
  }

  // energy convexity + identity
  {
    bool ok = true;
    auto mesh = pentagon(0);
    std::uniform_real_distribution<double> theta_dist(0.0, 1.0);
    for (double p : {1.5, 3.0}) {
      const EnergyContext ctx = make_context(
          mesh, 2, PExponent(p), make_mdldg_flux(*mesh), [](const Vec2 & q) { return q.x; },
          [](const Vec2 & q) { return q.y; });
      for (int trial = 0; trial < 100 && ok; ++trial) {
        const DGFunction a = random_function(*ctx.scalar_space, rng);
        const DGFunction b = random_function(*ctx.scalar_space, rng);
        const double theta = theta_dist(rng);
        DGFunction mix(*ctx.scalar_space);
        for (int i = 0; i < ctx.scalar_space->n_dof(); ++i)
          mix.coeffs[i] = theta * a.coeffs[i] + (1.0 - theta) * b.coeffs[i];
        const double ja = energy_Jh(ctx, a);
        const double jb = energy_Jh(ctx, b);
        const double jm = energy_Jh(ctx, mix);
        ok = ok && jm <= theta * ja + (1.0 - theta) * jb + 1e-12 * (1.0 + std::abs(ja) + std::abs(jb));
      }
    }
    add("energy-convexity-sampling", ok);
  }
  {
    bool ok = true;
    auto mesh = pentagon(0);
    const EnergyContext ctx = make_context(
        mesh, 2, PExponent(3.0), make_mdldg_flux(*mesh), [](const Vec2 & q) { return q.x - q.y; },
        [](const Vec2 & q) { return q.x; });
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const DGFunction u = random_function(*ctx.scalar_space, rng);
      const double eh = energy_Eh(ctx, u);
      const double rhs = 3.0 * (energy_Jh(ctx, u) + vec_dot(ctx.load, u.coeffs));
      ok = ok && std::abs(std::pow(eh, 3.0) - rhs) < 1e-12 * (1.0 + std::abs(rhs));
    }
    add("energy-eh-identity", ok);
  }

  // gradient vs finite differences
  {
    bool ok = true;
    auto mesh = pentagon(0);
    for (double p : {1.5, 2.0, 3.0}) {
      const EnergyContext ctx = make_context(
          mesh, 2, PExponent(p), make_mdldg_flux(*mesh), [](const Vec2 & q) { return q.y + 1.0; },
          [](const Vec2 & q) { return 0.5 * q.x; });
      for (int trial = 0; trial < 5 && ok; ++trial) {
        const DGFunction u = random_function(*ctx.scalar_space, rng, 0.5);
        const DGFunction v = random_function(*ctx.scalar_space, rng, 0.5);
        const std::vector<double> r = grad_Jh(ctx, u);
        const double rv = vec_dot(r, v.coeffs);
        DGFunction up = u, um = u;
        const double t = 1e-4;
        vec_axpy(up.coeffs, t, v.coeffs);
        vec_axpy(um.coeffs, -t, v.coeffs);
        const double fd = (energy_Jh(ctx, up) - energy_Jh(ctx, um)) / (2.0 * t);
        ok = ok && std::abs(fd - rv) / (1.0 + std::abs(rv)) < 1e-6;
      }
    }
    add("gradient-finite-difference", ok);
  }

  // preconditioner
  {
    bool ok = true;
    auto mesh = pentagon(1);
    for (double p : {1.5, 2.0, 3.0}) {
      const EnergyContext ctx = make_context(
          mesh, 2, PExponent(p), make_mdldg_flux(*mesh), [](const Vec2 & q) { return q.x; },
          [](const Vec2 & q) { return q.y; });
      const double eps = p == 2.0 ? 0.0 : 1e-8;
      const DGFunction u = random_function(*ctx.scalar_space, rng);
      const PrecondSystem sys = assemble_precond(ctx, u, p == 2.0 ? 0.0 : eps);
      std::vector<double> x(ctx.scalar_space->n_dof()), ax;
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (int trial = 0; trial < 50 && ok; ++trial) {
        for (double & e : x)
          e = dist(rng);
        sys.apply(x, ax);
        ok = ok && vec_dot(x, ax) > 0.0;
      }
      for (int trial = 0; trial < 3 && ok; ++trial) {
        const DGFunction v = random_function(*ctx.scalar_space, rng);
        std::vector<double> av;
        sys.apply(v.coeffs, av);
        const double direct = descent_norm_direct(ctx, u, eps, v);
        ok = ok && std::abs(vec_dot(v.coeffs, av) - direct) < 1e-10 * (1.0 + std::abs(direct));
      }
    }
    add("precond-pd-and-norm-identity", ok);
  }

  // manufactured examples: sigma = A(q) pointwise
  {
    bool ok = true;
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    auto sample = [&](const ProblemSpec & prob) {
      for (;;) {
        Vec2 p;
        if (prob.domain.kind == DomainSpec::Kind::pentagon) {
          p = {2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
          if (p.y - p.x + 1.0 < 0.05)
            continue;
        } else {
          p = {1.0 + unit(rng), 1.0 + unit(rng)};
        }
        if (std::hypot(p.x, p.y) < 0.05)
          continue;
        return p;
      }
    };
    const ProblemSpec probs[] = {example_linear(), example_regular(0.0, 1.5), example_regular(7.0, 4.0),
                                 example_degenerate(4.0), example_smooth(3.0), example_neumann_smoke()};
    for (const ProblemSpec & prob : probs)
      for (int trial = 0; trial < 50 && ok; ++trial) {
        const Vec2 x = sample(prob);
        const Vec2 aq = a_op(prob.q(x), prob.exponent.p);
        const Vec2 sg = prob.sigma(x);
        ok = ok && norm(aq - sg) < 1e-10 * (1.0 + norm(sg));
      }
    add("problems-flux-compatibility", ok);
  }

  // golden section and the p = 2 single step
  {
    bool ok = true;
    const GoldenResult r1 = golden_section([](double x) { return (x - 1.0) * (x - 1.0); }, 1.0, 1e-8);
    ok = ok && std::abs(r1.x - 1.0) < 1e-8 && r1.y <= 1e-15;
    const GoldenResult r2 = golden_section([](double x) { return (x - 2.0) * (x - 2.0); }, 0.5, 1e-6);
    ok = ok && std::abs(r2.x - 2.0) < 1e-6;
    const GoldenResult r3 = golden_section([](double x) { return x; }, 1.0, 1e-4);
    ok = ok && r3.x <= 1e-4;
    add("golden-section", ok);
  }
  {
    bool ok = true;
    auto mesh = pentagon(0);
    const EnergyContext ctx = make_context(
        mesh, 2, PExponent(2.0), make_mdldg_flux(*mesh), [](const Vec2 & q) { return std::sin(q.x); },
        [](const Vec2 & q) { return q.x * q.y; });
    SolverConfig cfg;
    cfg.eps = 0.0;
    const DescentResult res = steepest_descent(ctx, cfg, DGFunction(*ctx.scalar_space));
    ok = ok && res.accepted_steps == 1 && std::abs(res.history[0].rho - 1.0) < 1e-6;
    add("descent-p2-single-step", ok);
  }

  return results;
}

} // namespace pldg

#endif
