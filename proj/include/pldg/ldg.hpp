#ifndef PLDG_LDG_HPP
#define PLDG_LDG_HPP

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pldg/core.hpp"
#include "pldg/dense.hpp"
#include "pldg/dgspace.hpp"
#include "pldg/mesh.hpp"

namespace pldg
{

// ---------------------------------------------------------------------------
// Jump and average trace algebra. Interior faces combine the two one-sided
// traces with the outward normals (n_left + n_right = 0); boundary faces use
// the one-sided conventions. The scalar average and the vector jump are
// undefined on boundary faces.
// ---------------------------------------------------------------------------

inline Vec2 scalar_jump(const Face & f, double left, double right = 0.0)
{
  if (f.is_boundary())
    return left * f.normal;
  return (left - right) * f.normal;
}

inline double scalar_average(const Face & f, double left, double right)
{
  if (f.is_boundary())
    throw std::invalid_argument("scalar_average: undefined on boundary faces");
  return 0.5 * (left + right);
}

inline double vector_jump(const Face & f, const Vec2 & left, const Vec2 & right)
{
  if (f.is_boundary())
    throw std::invalid_argument("vector_jump: undefined on boundary faces");
  return dot(left - right, f.normal);
}

inline Vec2 vector_average(const Face & f, const Vec2 & left, const Vec2 & right = {})
{
  if (f.is_boundary())
    return left;
  return 0.5 * (left + right);
}

// ---------------------------------------------------------------------------
// Flux parameters: one penalty constant eta replicated per face and the
// upwind shift C12 per interior face, |C12| <= 1/2.
// ---------------------------------------------------------------------------

struct FluxParams
{
  double eta = 10.0;
  std::vector<Vec2> c12; // per face; zero (unused) on boundary faces
};

// MD-LDG choice: C12 = 1/2 sign(v0 . n) n with the tie v0 . n = 0 broken
// toward +1, so that u_hat is taken from one fixed side of each face.
inline Vec2 mdldg_c12(const Face & f, const Vec2 & v0)
{
  if (f.is_boundary())
    throw std::invalid_argument("mdldg_c12: C12 is defined on interior faces only");
  const double s = dot(v0, f.normal) < 0.0 ? -1.0 : 1.0;
  return 0.5 * s * f.normal;
}

inline FluxParams make_mdldg_flux(const Mesh & mesh, double eta = 10.0, const Vec2 & v0 = {1.0, 0.0})
{
  FluxParams flux;
  flux.eta = eta;
  flux.c12.assign(mesh.n_faces(), Vec2{});
  for (int f = 0; f < mesh.n_faces(); ++f)
    if (!mesh.faces[f].is_boundary())
      flux.c12[f] = mdldg_c12(mesh.faces[f], v0);
  return flux;
}

// ---------------------------------------------------------------------------
// Discrete weak gradient operator. The assembled sparse matrix B maps scalar
// coefficients to vector-space moments so that D(v; 0) = M^{-1} B v; the
// Dirichlet data channel enters through the moment vector b_g with
// D(0; g) = M^{-1} b_g, giving the decomposition D(v; g) = D(v; 0) + D(0; g).
// Blocks couple an element to itself and its face neighbors only.
// ---------------------------------------------------------------------------

class GradOperator
{
public:
  const DGSpace * scalar_space = nullptr;
  const DGSpace * vector_space = nullptr;
  FluxParams flux;
  QuadRule face_rule; // exactness 2k+1
  // Per face: physical quadrature points and one-sided basis traces
  // (n_q x n_local); trace_right is empty on boundary faces.
  std::vector<std::vector<Vec2>> face_points;
  std::vector<DenseMatrix> trace_left;
  std::vector<DenseMatrix> trace_right;

  // moments = B v
  void apply(const std::vector<double> & v, std::vector<double> & moments) const
  {
    moments.assign(vector_space->n_dof(), 0.0);
    const int vblk = scalar_space->block;
    const int qblk = vector_space->block;
    for (size_t e = 0; e < rows_.size(); ++e)
      for (const auto & [col, blk] : rows_[e])
        blk.apply_add(v.data() + static_cast<size_t>(col) * vblk, moments.data() + e * qblk);
  }

  // r = B^T y
  void apply_transpose(const std::vector<double> & y, std::vector<double> & r) const
  {
    r.assign(scalar_space->n_dof(), 0.0);
    const int vblk = scalar_space->block;
    const int qblk = vector_space->block;
    for (size_t e = 0; e < rows_.size(); ++e)
      for (const auto & [col, blk] : rows_[e])
        blk.apply_transpose_add(y.data() + e * qblk, r.data() + static_cast<size_t>(col) * vblk);
  }

  const std::vector<std::vector<std::pair<int, DenseMatrix>>> & blocks() const { return rows_; }

  DenseMatrix & block(int row_elem, int col_elem)
  {
    for (auto & entry : rows_[row_elem])
      if (entry.first == col_elem)
        return entry.second;
    rows_[row_elem].emplace_back(col_elem, DenseMatrix(vector_space->block, scalar_space->block));
    return rows_[row_elem].back().second;
  }

  void resize_rows(int n) { rows_.assign(n, {}); }

  // Evaluates the one-sided trace of a scalar DGFunction at the face
  // quadrature points.
  void trace_values(const DGFunction & fn, int face, bool left_side, std::vector<double> & out) const
  {
    const Face & f = scalar_space->mesh->faces[face];
    const int elem = left_side ? f.left : f.right;
    const DenseMatrix & tr = left_side ? trace_left[face] : trace_right[face];
    const int n = scalar_space->n_local;
    out.resize(face_rule.size());
    for (int q = 0; q < face_rule.size(); ++q) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += fn.coeffs[scalar_space->dof(elem, 0, i)] * tr(q, i);
      out[q] = s;
    }
  }

private:
  std::vector<std::vector<std::pair<int, DenseMatrix>>> rows_;
};

namespace detail
{

inline DenseMatrix face_trace_table(const DGSpace & space, int elem, const std::vector<Vec2> & phys_pts)
{
  const ElementGeometry & geo = space.mesh->geometry(elem);
  std::vector<Vec2> ref(phys_pts.size());
  for (size_t q = 0; q < phys_pts.size(); ++q)
    ref[q] = geo.to_reference(phys_pts[q]);
  const BernsteinBasis basis = bernstein_eval(space.degree, ref);
  DenseMatrix table(static_cast<int>(phys_pts.size()), space.n_local);
  for (int q = 0; q < table.rows(); ++q)
    for (int i = 0; i < space.n_local; ++i)
      table(q, i) = basis.value(q, i);
  return table;
}

} // namespace detail

// Assembles B for the pairing (D(v; g), zeta)_Omega =
//   (grad_h v, zeta)_Omega
//   - <[[v]], {zeta} - C12 [[zeta]]>_{interior}
//   - <v - g, zeta . n>_{Dirichlet}
// Neumann faces contribute nothing. The g channel is produced separately by
// lift_moments.
inline GradOperator assemble_grad(const DGSpace & scalar_space, const DGSpace & vector_space,
                                  FluxParams flux)
{
  if (scalar_space.mesh != vector_space.mesh || scalar_space.degree != vector_space.degree)
    throw std::invalid_argument("assemble_grad: spaces must share mesh and degree");
  if (scalar_space.components != 1 || vector_space.components != 2)
    throw std::invalid_argument("assemble_grad: expected scalar and vector spaces");
  const Mesh & mesh = *scalar_space.mesh;
  if (static_cast<int>(flux.c12.size()) != mesh.n_faces())
    throw std::invalid_argument("assemble_grad: flux parameters not sized to the mesh");

  GradOperator op;
  op.scalar_space = &scalar_space;
  op.vector_space = &vector_space;
  op.flux = std::move(flux);
  op.face_rule = gauss_segment(scalar_space.degree + 1);
  op.resize_rows(mesh.n_elements());

  const int n = scalar_space.n_local;
  const int nq_face = op.face_rule.size();

  // volume term (grad_h v, zeta)
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry & geo = mesh.geometry(e);
    DenseMatrix & blk = op.block(e, e);
    const QuadRule & rule = scalar_space.elem_rule;
    const BernsteinBasis & basis = scalar_space.basis;
    const double scale = 2.0 * geo.area;
    for (int q = 0; q < rule.size(); ++q) {
      const double w = scale * rule.weights[q];
      for (int i = 0; i < n; ++i) {
        const Vec2 g = geo.jac_inv_t.apply(basis.gradient(q, i));
        for (int j = 0; j < n; ++j) {
          const double bj = w * basis.value(q, j);
          blk(0 * n + j, i) += g.x * bj;
          blk(1 * n + j, i) += g.y * bj;
        }
      }
    }
  }

  // face traces and face terms
  op.face_points.resize(mesh.n_faces());
  op.trace_left.resize(mesh.n_faces());
  op.trace_right.resize(mesh.n_faces());
  for (int fi = 0; fi < mesh.n_faces(); ++fi) {
    const Face & f = mesh.faces[fi];
    auto & pts = op.face_points[fi];
    pts.resize(nq_face);
    const Vec2 a = mesh.vertices[f.v0];
    const Vec2 t = mesh.vertices[f.v1] - mesh.vertices[f.v0];
    for (int q = 0; q < nq_face; ++q)
      pts[q] = a + op.face_rule.points[q].x * t;
    op.trace_left[fi] = detail::face_trace_table(scalar_space, f.left, pts);
    if (!f.is_boundary())
      op.trace_right[fi] = detail::face_trace_table(scalar_space, f.right, pts);

    if (f.tag == BoundaryTag::neumann)
      continue;

    if (f.is_boundary()) {
      // -<v, zeta . n> on Dirichlet faces
      DenseMatrix & blk = op.block(f.left, f.left);
      const DenseMatrix & tr = op.trace_left[fi];
      for (int q = 0; q < nq_face; ++q) {
        const double w = f.length * op.face_rule.weights[q];
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double m = -w * tr(q, i) * tr(q, j);
            blk(0 * n + j, i) += m * f.normal.x;
            blk(1 * n + j, i) += m * f.normal.y;
          }
      }
      continue;
    }

    // -<[[v]], {zeta} - C12 [[zeta]]> on interior faces: with trial trace from
    // side t (sign s_t) and test trace from side s (sign s_s),
    //   contribution = -s_t (1/2 - s_s (n . C12)) n_c int B_i^t B_j^s
    const double nc12 = dot(f.normal, op.flux.c12[fi]);
    const int elems[2] = {f.left, f.right};
    const double signs[2] = {1.0, -1.0};
    const DenseMatrix * traces[2] = {&op.trace_left[fi], &op.trace_right[fi]};
    for (int ts = 0; ts < 2; ++ts)   // test side
      for (int tt = 0; tt < 2; ++tt) // trial side
      {
        const double factor = -signs[tt] * (0.5 - signs[ts] * nc12);
        if (factor == 0.0)
          continue;
        DenseMatrix & blk = op.block(elems[ts], elems[tt]);
        const DenseMatrix & tri = *traces[tt];
        const DenseMatrix & trj = *traces[ts];
        for (int q = 0; q < nq_face; ++q) {
          const double w = factor * f.length * op.face_rule.weights[q];
          for (int i = 0; i < n; ++i) {
            const double wi = w * tri(q, i);
            for (int j = 0; j < n; ++j) {
              const double m = wi * trj(q, j);
              blk(0 * n + j, i) += m * f.normal.x;
              blk(1 * n + j, i) += m * f.normal.y;
            }
          }
        }
      }
  }
  return op;
}

// Moments of the Dirichlet data channel: b_g(c, j) = <g, zeta . n>_{Dirichlet},
// with g evaluated directly at the face quadrature points.
inline std::vector<double> lift_moments(const GradOperator & op, const std::function<double(const Vec2 &)> & g)
{
  const DGSpace & qspace = *op.vector_space;
  const Mesh & mesh = *qspace.mesh;
  std::vector<double> b(qspace.n_dof(), 0.0);
  const int n = qspace.n_local;
  for (int fi = 0; fi < mesh.n_faces(); ++fi) {
    const Face & f = mesh.faces[fi];
    if (f.tag != BoundaryTag::dirichlet)
      continue;
    const DenseMatrix & tr = op.trace_left[fi];
    for (int q = 0; q < op.face_rule.size(); ++q) {
      const double w = f.length * op.face_rule.weights[q] * g(op.face_points[fi][q]);
      for (int j = 0; j < n; ++j) {
        const double m = w * tr(q, j);
        b[qspace.dof(f.left, 0, j)] += m * f.normal.x;
        b[qspace.dof(f.left, 1, j)] += m * f.normal.y;
      }
    }
  }
  return b;
}

// D(v; g) = M^{-1} (B v + b_g). Pass an empty g_moments for D(v; 0).
inline DGFunction apply_ddg(const GradOperator & op, const DGFunction & v,
                            const std::vector<double> & g_moments = {})
{
  DGFunction q(*op.vector_space);
  std::vector<double> moments;
  op.apply(v.coeffs, moments);
  if (!g_moments.empty()) {
    if (g_moments.size() != moments.size())
      throw std::invalid_argument("apply_ddg: g_moments length mismatch");
    for (size_t i = 0; i < moments.size(); ++i)
      moments[i] += g_moments[i];
  }
  q.coeffs = mass_solve(*op.vector_space, moments);
  return q;
}

} // namespace pldg

#endif
