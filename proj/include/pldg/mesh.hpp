#ifndef PLDG_MESH_HPP
#define PLDG_MESH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldg/core.hpp"

namespace pldg
{

enum class BoundaryTag
{
  interior,
  dirichlet,
  neumann
};

// Oriented face between two triangles (or one triangle and the boundary).
// The unit normal points out of the left element; the right element, when
// present, sees the opposite normal, so n_1 + n_2 = 0 across the face.
struct Face
{
  int v0 = -1;
  int v1 = -1;
  int left = -1;
  int right = -1; // -1 on boundary faces
  BoundaryTag tag = BoundaryTag::interior;
  Vec2 normal;
  double length = 0.0;
  double h_e = 0.0; // shortest normal characteristic length (min adjacent height)

  bool is_boundary() const { return right < 0; }
};

struct FaceGeometry
{
  Vec2 normal;
  double length = 0.0;
  double h_e = 0.0;
};

// Affine map from the reference triangle to a physical element:
// X(x_ref) = v0 + J x_ref.
struct ElementGeometry
{
  Vec2 v0;
  Mat2 jac;
  Mat2 jac_inv_t; // inverse transpose, maps reference gradients to physical
  double area = 0.0;
  double diameter = 0.0;

  Vec2 to_physical(const Vec2 & ref) const { return v0 + jac.apply(ref); }
  Vec2 to_reference(const Vec2 & phys) const { return jac_inv_t.transpose().apply(phys - v0); }
};

struct DomainSpec
{
  enum class Kind
  {
    pentagon,           // {-1 <= x,y <= 1, y - x + 1 >= 0}
    unit_square_shifted // [1,2]^2
  };

  Kind kind = Kind::pentagon;
  // Boundary faces whose midpoint satisfies this predicate are tagged
  // Neumann; everything else on the boundary is Dirichlet.
  std::function<bool(const Vec2 &)> is_neumann;
};

class Mesh
{
public:
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> elements; // ccw vertex ids
  std::vector<Face> faces;
  std::vector<double> areas;
  std::vector<double> diameters;
  double h = 0.0; // max element diameter
  DomainSpec domain;

  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }

  const ElementGeometry & geometry(int e) const { return geometry_[e]; }

  double total_area() const
  {
    double s = 0.0;
    for (double a : areas)
      s += a;
    return s;
  }

  // Finalizes derived data: orientation check, areas, faces, normals, h_e.
  void build_connectivity()
  {
    const int ne = n_elements();
    areas.resize(ne);
    diameters.resize(ne);
    geometry_.resize(ne);
    h = 0.0;
    for (int e = 0; e < ne; ++e) {
      const Vec2 & a = vertices[elements[e][0]];
      const Vec2 & b = vertices[elements[e][1]];
      const Vec2 & c = vertices[elements[e][2]];
      const double twice = cross(b - a, c - a);
      if (!(twice > 0.0))
        throw std::runtime_error("Mesh: element not counterclockwise or degenerate");
      areas[e] = 0.5 * twice;
      diameters[e] = std::max({norm(b - a), norm(c - b), norm(a - c)});
      h = std::max(h, diameters[e]);
      ElementGeometry g;
      g.v0 = a;
      g.jac = {b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y};
      g.jac_inv_t = g.jac.inverse().transpose();
      g.area = areas[e];
      g.diameter = diameters[e];
      geometry_[e] = g;
    }

    faces.clear();
    std::map<std::pair<int, int>, int> edge_to_face;
    for (int e = 0; e < ne; ++e) {
      for (int le = 0; le < 3; ++le) {
        const int a = elements[e][le];
        const int b = elements[e][(le + 1) % 3];
        const auto key = std::minmax(a, b);
        auto it = edge_to_face.find(key);
        if (it == edge_to_face.end()) {
          Face f;
          f.v0 = a;
          f.v1 = b;
          f.left = e;
          const Vec2 t = vertices[b] - vertices[a];
          f.length = norm(t);
          f.normal = {t.y / f.length, -t.x / f.length};
          edge_to_face.emplace(key, static_cast<int>(faces.size()));
          faces.push_back(f);
        } else {
          Face & f = faces[it->second];
          if (f.right >= 0)
            throw std::runtime_error("Mesh: face referenced by more than two elements");
          f.right = e;
        }
      }
    }

    for (Face & f : faces) {
      f.h_e = 2.0 * areas[f.left] / f.length;
      if (f.right >= 0) {
        f.h_e = std::min(f.h_e, 2.0 * areas[f.right] / f.length);
        f.tag = BoundaryTag::interior;
      } else {
        const Vec2 mid = 0.5 * (vertices[f.v0] + vertices[f.v1]);
        f.tag = (domain.is_neumann && domain.is_neumann(mid)) ? BoundaryTag::neumann : BoundaryTag::dirichlet;
      }
    }
  }

private:
  std::vector<ElementGeometry> geometry_;
};

// Builds a mesh from explicit vertex/element lists (used by small fixtures).
inline Mesh make_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> elements,
                      DomainSpec domain = {})
{
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.elements = std::move(elements);
  mesh.domain = std::move(domain);
  mesh.build_connectivity();
  return mesh;
}

// Coarse meshes of the two supported domains. The pentagon is the 2x2 square
// [-1,1]^2 with the corner triangle below y = x - 1 removed: the square is cut
// into four unit cells, each split by its slope +1 diagonal, and the one
// triangle outside the domain is dropped (7 elements). The shifted unit
// square [1,2]^2 is cut into 2x2 cells, each split by both diagonals into
// four triangles around the cell center (16 elements).
inline Mesh build_coarse(const DomainSpec & domain)
{
  Mesh mesh;
  mesh.domain = domain;
  switch (domain.kind) {
  case DomainSpec::Kind::pentagon: {
    std::map<std::pair<int, int>, int> vid;
    auto vertex = [&](int i, int j) {
      auto it = vid.find({i, j});
      if (it != vid.end())
        return it->second;
      const int id = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back({static_cast<double>(i) - 1.0, static_cast<double>(j) - 1.0});
      vid.emplace(std::make_pair(i, j), id);
      return id;
    };
    for (int cj = 0; cj < 2; ++cj)
      for (int ci = 0; ci < 2; ++ci) {
        const int v00 = vertex(ci, cj);
        const int v10 = vertex(ci + 1, cj);
        const int v11 = vertex(ci + 1, cj + 1);
        const int v01 = vertex(ci, cj + 1);
        // lower-right triangle of the cell (0,1)x(-1,0) lies outside
        if (!(ci == 1 && cj == 0))
          mesh.elements.push_back({v00, v10, v11});
        mesh.elements.push_back({v00, v11, v01});
      }
    break;
  }
  case DomainSpec::Kind::unit_square_shifted: {
    std::map<std::pair<int, int>, int> vid;
    auto vertex = [&](int i2, int j2) { // coordinates in half-steps of 0.25
      auto it = vid.find({i2, j2});
      if (it != vid.end())
        return it->second;
      const int id = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back({1.0 + 0.25 * i2, 1.0 + 0.25 * j2});
      vid.emplace(std::make_pair(i2, j2), id);
      return id;
    };
    for (int cj = 0; cj < 2; ++cj)
      for (int ci = 0; ci < 2; ++ci) {
        const int v00 = vertex(2 * ci, 2 * cj);
        const int v10 = vertex(2 * ci + 2, 2 * cj);
        const int v11 = vertex(2 * ci + 2, 2 * cj + 2);
        const int v01 = vertex(2 * ci, 2 * cj + 2);
        const int vm = vertex(2 * ci + 1, 2 * cj + 1);
        mesh.elements.push_back({v00, v10, vm});
        mesh.elements.push_back({v10, v11, vm});
        mesh.elements.push_back({v11, v01, vm});
        mesh.elements.push_back({v01, v00, vm});
      }
    break;
  }
  default:
    throw std::invalid_argument("build_coarse: unsupported domain kind");
  }
  mesh.build_connectivity();
  return mesh;
}

// Uniform refinement: each triangle is split into 4 congruent children by the
// edge midpoints. Conforming, area preserving, halves every h_e.
inline Mesh refine_uniform(const Mesh & parent)
{
  Mesh mesh;
  mesh.domain = parent.domain;
  mesh.vertices = parent.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end())
      return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(0.5 * (parent.vertices[a] + parent.vertices[b]));
    midpoint.emplace(key, id);
    return id;
  };
  mesh.elements.reserve(parent.elements.size() * 4);
  for (const auto & el : parent.elements) {
    const int m01 = mid(el[0], el[1]);
    const int m12 = mid(el[1], el[2]);
    const int m02 = mid(el[2], el[0]);
    mesh.elements.push_back({el[0], m01, m02});
    mesh.elements.push_back({m01, el[1], m12});
    mesh.elements.push_back({m02, m12, el[2]});
    mesh.elements.push_back({m01, m12, m02});
  }
  mesh.build_connectivity();
  return mesh;
}

inline FaceGeometry face_geometry(const Mesh & mesh, int face_id)
{
  if (face_id < 0 || face_id >= mesh.n_faces())
    throw std::out_of_range("face_geometry: invalid face id");
  const Face & f = mesh.faces[face_id];
  return {f.normal, f.length, f.h_e};
}

// Plain-text dump: one line per vertex `v x y`, element `t i j k`, and face
// `f i j left right tag` with tag in {i, d, n}.
inline void dump_mesh(const Mesh & mesh, std::ostream & os)
{
  for (const Vec2 & v : mesh.vertices)
    os << "v " << v.x << ' ' << v.y << '\n';
  for (const auto & el : mesh.elements)
    os << "t " << el[0] << ' ' << el[1] << ' ' << el[2] << '\n';
  for (const Face & f : mesh.faces) {
    const char tag = f.tag == BoundaryTag::interior ? 'i' : (f.tag == BoundaryTag::dirichlet ? 'd' : 'n');
    os << "f " << f.v0 << ' ' << f.v1 << ' ' << f.left << ' ' << f.right << ' ' << tag << '\n';
  }
}

} // namespace pldg

#endif
