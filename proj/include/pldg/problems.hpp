#ifndef PLDG_PROBLEMS_HPP
#define PLDG_PROBLEMS_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pldg/energy.hpp"
#include "pldg/mesh.hpp"

namespace pldg
{

using VectorField = std::function<Vec2(const Vec2 &)>;

// Manufactured problem: exact fields, induced source and boundary data.
// g_D is the trace of u; g_n is g_N . n on the Neumann part (null when the
// whole boundary is Dirichlet).
struct ProblemSpec
{
  std::string id;
  DomainSpec domain;
  PExponent exponent{2.0};
  ScalarField u;
  VectorField q;     // exact gradient
  VectorField sigma; // exact flux A(q)
  ScalarField f;
  ScalarField g_n;
};

namespace detail
{
inline double radius(const Vec2 & p) { return std::hypot(p.x, p.y); }
} // namespace detail

// u = e^{sin(pi x)} cos(pi (x + y)) on the pentagon with p = 2.
inline ProblemSpec example_linear()
{
  using std::numbers::pi;
  ProblemSpec prob;
  prob.id = "linear";
  prob.domain = {DomainSpec::Kind::pentagon, nullptr};
  prob.exponent = PExponent(2.0);
  prob.u = [](const Vec2 & p) { return std::exp(std::sin(pi * p.x)) * std::cos(pi * (p.x + p.y)); };
  prob.q = [](const Vec2 & p) {
    const double es = std::exp(std::sin(pi * p.x));
    const double c = std::cos(pi * (p.x + p.y));
    const double s = std::sin(pi * (p.x + p.y));
    return Vec2{pi * es * (std::cos(pi * p.x) * c - s), -pi * es * s};
  };
  prob.sigma = prob.q; // A is the identity at p = 2
  prob.f = [](const Vec2 & p) {
    const double es = std::exp(std::sin(pi * p.x));
    const double c = std::cos(pi * (p.x + p.y));
    const double s = std::sin(pi * (p.x + p.y));
    const double cx = std::cos(pi * p.x);
    return pi * pi * es * (c * (2.0 - cx * cx + std::sin(pi * p.x)) + 2.0 * cx * s);
  };
  return prob;
}

// Radial solution with f = r^sigma on the pentagon; singular at the origin
// in high derivatives but with no degenerate region.
inline ProblemSpec example_regular(double sigma_r, double p)
{
  if (!(sigma_r >= 0.0))
    throw std::invalid_argument("example_regular: radial exponent must be >= 0");
  const PExponent exponent(p);
  const double c = std::pow(sigma_r + 2.0, 1.0 / (p - 1.0));
  ProblemSpec prob;
  prob.id = "regular";
  prob.domain = {DomainSpec::Kind::pentagon, nullptr};
  prob.exponent = exponent;
  prob.u = [c, sigma_r, p](const Vec2 & pt) {
    const double r = detail::radius(pt);
    return (p - 1.0) / (c * (sigma_r + p)) * (1.0 - std::pow(r, (sigma_r + p) / (p - 1.0)));
  };
  prob.q = [c, sigma_r, p](const Vec2 & pt) {
    const double r = detail::radius(pt);
    if (r < 1e-14)
      return Vec2{};
    const double mag = std::pow(r, (sigma_r + 1.0) / (p - 1.0)) / c;
    return Vec2{-mag * pt.x / r, -mag * pt.y / r};
  };
  prob.sigma = [sigma_r](const Vec2 & pt) {
    const double r = detail::radius(pt);
    const double scale = (sigma_r == 0.0 ? 1.0 : std::pow(r, sigma_r)) / (sigma_r + 2.0);
    return Vec2{-scale * pt.x, -scale * pt.y};
  };
  prob.f = [sigma_r](const Vec2 & pt) {
    return sigma_r == 0.0 ? 1.0 : std::pow(detail::radius(pt), sigma_r);
  };
  return prob;
}

// Piecewise radial solution whose gradient vanishes on the disk r < a
// (a = 0.3); degenerate for p > 2. The kink circle r = a uses the outer
// branch, where both branches agree.
inline ProblemSpec example_degenerate(double p)
{
  const double a = 0.3;
  const PExponent exponent(p);
  ProblemSpec prob;
  prob.id = "degenerate";
  prob.domain = {DomainSpec::Kind::pentagon, nullptr};
  prob.exponent = exponent;
  prob.u = [a](const Vec2 & pt) {
    const double r = detail::radius(pt);
    if (r < a)
      return 0.0;
    const double d = r - a;
    return d * d * d * d;
  };
  prob.q = [a](const Vec2 & pt) {
    const double r = detail::radius(pt);
    if (r < a)
      return Vec2{};
    const double s = 4.0 * std::pow(r - a, 3.0) / r;
    return Vec2{s * pt.x, s * pt.y};
  };
  prob.sigma = [a, p](const Vec2 & pt) {
    const double r = detail::radius(pt);
    if (r < a)
      return Vec2{};
    const double s = std::pow(4.0, p - 1.0) * std::pow(r - a, 3.0 * p - 3.0) / r;
    return Vec2{s * pt.x, s * pt.y};
  };
  prob.f = [a, p](const Vec2 & pt) {
    const double r = detail::radius(pt);
    if (r < a)
      return 0.0;
    return std::pow(4.0, p - 1.0) * std::pow(r - a, 3.0 * p - 4.0) * (2.0 - 3.0 * p + a / r);
  };
  return prob;
}

// Radial p-harmonic solution u = r^{(p-2)/(p-1)} on the square [1,2]^2 with
// f = 0; the gradient is bounded away from 0 and infinity there.
inline ProblemSpec example_smooth(double p)
{
  if (p == 2.0)
    throw std::invalid_argument("example_smooth: p = 2 collapses the solution to a constant");
  const PExponent exponent(p);
  const double m = (p - 2.0) / (p - 1.0);
  ProblemSpec prob;
  prob.id = "smooth";
  prob.domain = {DomainSpec::Kind::unit_square_shifted, nullptr};
  prob.exponent = exponent;
  prob.u = [m](const Vec2 & pt) { return std::pow(detail::radius(pt), m); };
  prob.q = [m, p](const Vec2 & pt) {
    const double r = detail::radius(pt);
    const double s = m * std::pow(r, -p / (p - 1.0));
    return Vec2{s * pt.x, s * pt.y};
  };
  prob.sigma = [m, p](const Vec2 & pt) {
    const double r = detail::radius(pt);
    const double s = (p > 2.0 ? 1.0 : -1.0) * std::pow(std::abs(m), p - 1.0) / (r * r);
    return Vec2{s * pt.x, s * pt.y};
  };
  prob.f = [](const Vec2 &) { return 0.0; };
  return prob;
}

// In-space solution u = x^2 on the square with the x = 2 edge Neumann;
// exercises the <g_N . n, v> terms that the Dirichlet-only examples never
// touch.
inline ProblemSpec example_neumann_smoke()
{
  ProblemSpec prob;
  prob.id = "neumann-smoke";
  prob.domain = {DomainSpec::Kind::unit_square_shifted,
                 [](const Vec2 & p) { return std::abs(p.x - 2.0) < 1e-12; }};
  prob.exponent = PExponent(2.0);
  prob.u = [](const Vec2 & p) { return p.x * p.x; };
  prob.q = [](const Vec2 & p) { return Vec2{2.0 * p.x, 0.0}; };
  prob.sigma = prob.q;
  prob.f = [](const Vec2 &) { return -2.0; };
  prob.g_n = [](const Vec2 & p) { return 2.0 * p.x; }; // sigma . n = 2x = 4 on x = 2
  return prob;
}

// CLI ids: linear | regular | degenerate | smooth | neumann-smoke.
inline ProblemSpec problem_by_id(const std::string & id, double p, double sigma_r)
{
  if (id == "linear") {
    if (p != 2.0)
      throw std::invalid_argument("problem 'linear' is defined for p = 2 only");
    return example_linear();
  }
  if (id == "regular")
    return example_regular(sigma_r, p);
  if (id == "degenerate")
    return example_degenerate(p);
  if (id == "smooth")
    return example_smooth(p);
  if (id == "neumann-smoke") {
    if (p != 2.0)
      throw std::invalid_argument("problem 'neumann-smoke' is defined for p = 2 only");
    return example_neumann_smoke();
  }
  throw std::invalid_argument("unknown problem id: " + id);
}

inline Mesh build_problem_mesh(const ProblemSpec & prob, int level)
{
  Mesh mesh = build_coarse(prob.domain);
  for (int i = 0; i < level; ++i)
    mesh = refine_uniform(mesh);
  return mesh;
}

inline EnergyContext make_context(const ProblemSpec & prob, std::shared_ptr<const Mesh> mesh, int k,
                                  double eta)
{
  FluxParams flux = make_mdldg_flux(*mesh, eta);
  return make_context(std::move(mesh), k, prob.exponent, std::move(flux), prob.f, prob.u, prob.g_n);
}

} // namespace pldg

#endif
