#ifndef PLDG_DGSPACE_HPP
#define PLDG_DGSPACE_HPP

#include <cassert>
#include <functional>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "pldg/bernstein.hpp"
#include "pldg/core.hpp"
#include "pldg/dense.hpp"
#include "pldg/mesh.hpp"
#include "pldg/quadrature.hpp"

namespace pldg
{

// Broken polynomial space P^k per element, scalar (components = 1) or
// 2-vector valued (components = 2). DOF layout is element-major:
// dof(e, c, i) = e * components * n_local + c * n_local + i, coefficients in
// the Bernstein basis. Element mass matrices are the reference Bernstein Gram
// matrix scaled by 2|K|, so one Cholesky factorization serves all elements.
struct DGSpace
{
  std::shared_ptr<const Mesh> mesh;
  int degree = 0;
  int components = 1;
  int n_local = 0;
  int block = 0; // components * n_local
  QuadRule elem_rule;  // exactness 2k
  BernsteinBasis basis; // tabulated at elem_rule points
  DenseMatrix gram;
  CholeskyFactor gram_chol;

  int n_dof() const { return mesh->n_elements() * block; }
  int offset(int e) const { return e * block; }
  int dof(int e, int c, int i) const { return e * block + c * n_local + i; }
};

struct DGFunction
{
  const DGSpace * space = nullptr;
  std::vector<double> coeffs;

  explicit DGFunction(const DGSpace & s) : space(&s), coeffs(s.n_dof(), 0.0) {}
};

inline DGSpace build_space(std::shared_ptr<const Mesh> mesh, int k, int components)
{
  if (k < 1 || k > 6)
    throw std::invalid_argument("build_space: polynomial degree must be in [1, 6]");
  if (components != 1 && components != 2)
    throw std::invalid_argument("build_space: components must be 1 or 2");
  DGSpace space;
  space.mesh = std::move(mesh);
  space.degree = k;
  space.components = components;
  space.n_local = bernstein_dim(k);
  space.block = components * space.n_local;
  space.elem_rule = gauss_triangle(2 * k);
  space.basis = bernstein_eval(k, space.elem_rule.points);
  space.gram = DenseMatrix(space.n_local, space.n_local);
  for (int q = 0; q < space.elem_rule.size(); ++q) {
    const double w = space.elem_rule.weights[q];
    for (int i = 0; i < space.n_local; ++i)
      for (int j = 0; j < space.n_local; ++j)
        space.gram(i, j) += w * space.basis.value(q, i) * space.basis.value(q, j);
  }
  space.gram_chol = CholeskyFactor(space.gram);
  return space;
}

// Per-element, per-component solve of M c = rhs with M = 2|K| G.
inline std::vector<double> mass_solve(const DGSpace & space, const std::vector<double> & rhs)
{
  if (static_cast<int>(rhs.size()) != space.n_dof())
    throw std::invalid_argument("mass_solve: rhs length mismatch");
  std::vector<double> coeffs(rhs);
  const Mesh & mesh = *space.mesh;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double inv_scale = 1.0 / (2.0 * mesh.areas[e]);
    for (int c = 0; c < space.components; ++c) {
      double * blk = coeffs.data() + space.dof(e, c, 0);
      space.gram_chol.solve_in_place(blk);
      for (int i = 0; i < space.n_local; ++i)
        blk[i] *= inv_scale;
    }
  }
  return coeffs;
}

// L2 projection of a pointwise field into the space; realizes the
// interpolation operators onto V_h (scalar callables) and Q_h / Sigma_h
// (Vec2-valued callables).
template <typename F>
DGFunction l2_project(const DGSpace & space, F && field)
{
  using Result = std::invoke_result_t<F, Vec2>;
  constexpr bool vector_valued = std::is_same_v<Result, Vec2>;
  if constexpr (vector_valued) {
    if (space.components != 2)
      throw std::invalid_argument("l2_project: vector field into scalar space");
  } else {
    static_assert(std::is_convertible_v<Result, double>, "field must return double or Vec2");
    if (space.components != 1)
      throw std::invalid_argument("l2_project: scalar field into vector space");
  }

  DGFunction fn(space);
  const Mesh & mesh = *space.mesh;
  std::vector<double> mom(space.n_local);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry & geo = mesh.geometry(e);
    if constexpr (vector_valued) {
      std::vector<double> momy(space.n_local, 0.0);
      std::fill(mom.begin(), mom.end(), 0.0);
      for (int q = 0; q < space.elem_rule.size(); ++q) {
        const Vec2 value = field(geo.to_physical(space.elem_rule.points[q]));
        const double w = space.elem_rule.weights[q];
        for (int i = 0; i < space.n_local; ++i) {
          const double wb = w * space.basis.value(q, i);
          mom[i] += wb * value.x;
          momy[i] += wb * value.y;
        }
      }
      space.gram_chol.solve_in_place(mom.data());
      space.gram_chol.solve_in_place(momy.data());
      for (int i = 0; i < space.n_local; ++i) {
        fn.coeffs[space.dof(e, 0, i)] = mom[i];
        fn.coeffs[space.dof(e, 1, i)] = momy[i];
      }
    } else {
      std::fill(mom.begin(), mom.end(), 0.0);
      for (int q = 0; q < space.elem_rule.size(); ++q) {
        const double value = field(geo.to_physical(space.elem_rule.points[q]));
        const double w = space.elem_rule.weights[q];
        for (int i = 0; i < space.n_local; ++i)
          mom[i] += w * space.basis.value(q, i) * value;
      }
      space.gram_chol.solve_in_place(mom.data());
      for (int i = 0; i < space.n_local; ++i)
        fn.coeffs[space.dof(e, 0, i)] = mom[i];
    }
  }
  return fn;
}

// Pointwise evaluation at a reference point of one element. Not meant for
// inner loops; those use the tabulated bases directly.
inline double eval_scalar(const DGFunction & fn, int e, const Vec2 & ref)
{
  const DGSpace & space = *fn.space;
  assert(e >= 0 && e < space.mesh->n_elements());
  const std::vector<Vec2> pt{ref};
  const BernsteinBasis basis = bernstein_eval(space.degree, pt);
  double v = 0.0;
  for (int i = 0; i < space.n_local; ++i)
    v += fn.coeffs[space.dof(e, 0, i)] * basis.value(0, i);
  return v;
}

inline Vec2 eval_vector(const DGFunction & fn, int e, const Vec2 & ref)
{
  const DGSpace & space = *fn.space;
  assert(e >= 0 && e < space.mesh->n_elements());
  const std::vector<Vec2> pt{ref};
  const BernsteinBasis basis = bernstein_eval(space.degree, pt);
  Vec2 v;
  for (int i = 0; i < space.n_local; ++i) {
    v.x += fn.coeffs[space.dof(e, 0, i)] * basis.value(0, i);
    v.y += fn.coeffs[space.dof(e, 1, i)] * basis.value(0, i);
  }
  return v;
}

} // namespace pldg

#endif
