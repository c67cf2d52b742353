#include "dbc/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace dbc {

FeFunction::FeFunction(std::shared_ptr<const Mesh> m, Vector c)
    : mesh(std::move(m)), coefficients(std::move(c)) {
  if (coefficients.size() != mesh->num_vertices()) {
    throw std::invalid_argument("FeFunction: coefficient length mismatch");
  }
}

double FeFunction::evaluate(double x, double y) const {
  const double tol = 1e-12;
  for (int t = 0; t < mesh->num_triangles(); ++t) {
    const auto& [a, b, c] = mesh->triangles[t];
    const auto& pa = mesh->vertices[a];
    const auto& pb = mesh->vertices[b];
    const auto& pc = mesh->vertices[c];
    const double area2 = (pb[0] - pa[0]) * (pc[1] - pa[1]) -
                         (pc[0] - pa[0]) * (pb[1] - pa[1]);
    const double la = ((pb[0] - x) * (pc[1] - y) - (pc[0] - x) * (pb[1] - y)) / area2;
    const double lb = ((pc[0] - x) * (pa[1] - y) - (pa[0] - x) * (pc[1] - y)) / area2;
    const double lc = 1.0 - la - lb;
    if (la >= -tol && lb >= -tol && lc >= -tol) {
      return la * coefficients[a] + lb * coefficients[b] + lc * coefficients[c];
    }
  }
  throw std::domain_error("FeFunction::evaluate: point outside mesh");
}

const QuadratureRule& quadrature_degree2() {
  static const QuadratureRule rule{
      {{{0.5, 0.5, 0.0}, 1.0 / 3.0},
       {{0.0, 0.5, 0.5}, 1.0 / 3.0},
       {{0.5, 0.0, 0.5}, 1.0 / 3.0}},
      2};
  return rule;
}

const QuadratureRule& quadrature_degree5() {
  const double s = std::sqrt(15.0);
  const double a1 = (6.0 - s) / 21.0, w1 = (155.0 - s) / 1200.0;
  const double a2 = (6.0 + s) / 21.0, w2 = (155.0 + s) / 1200.0;
  static const QuadratureRule rule{
      {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 40.0},
       {{a1, a1, 1.0 - 2.0 * a1}, w1},
       {{a1, 1.0 - 2.0 * a1, a1}, w1},
       {{1.0 - 2.0 * a1, a1, a1}, w1},
       {{a2, a2, 1.0 - 2.0 * a2}, w2},
       {{a2, 1.0 - 2.0 * a2, a2}, w2},
       {{1.0 - 2.0 * a2, a2, a2}, w2}},
      5};
  return rule;
}

const QuadratureRule& quadrature_for_degree(int degree) {
  switch (degree) {
    case 2: return quadrature_degree2();
    case 5: return quadrature_degree5();
    default:
      throw std::invalid_argument("quadrature degree must be 2 or 5");
  }
}

namespace {

double signed_area(const Point2& v0, const Point2& v1, const Point2& v2) {
  return 0.5 * ((v1[0] - v0[0]) * (v2[1] - v0[1]) -
                (v2[0] - v0[0]) * (v1[1] - v0[1]));
}

void require_nondegenerate(double area) {
  if (!(area > 0.0)) {
    throw std::invalid_argument("element matrix: degenerate triangle");
  }
}

}  // namespace

std::array<std::array<double, 3>, 3> element_stiffness(const Point2& v0,
                                                       const Point2& v1,
                                                       const Point2& v2) {
  const double area = signed_area(v0, v1, v2);
  require_nondegenerate(area);
  // grad(lambda_i) = perp(opposite edge) / (2|K|)
  const double gx[3] = {v1[1] - v2[1], v2[1] - v0[1], v0[1] - v1[1]};
  const double gy[3] = {v2[0] - v1[0], v0[0] - v2[0], v1[0] - v0[0]};
  std::array<std::array<double, 3>, 3> K{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      K[i][j] = (gx[i] * gx[j] + gy[i] * gy[j]) / (4.0 * area);
    }
  }
  return K;
}

std::array<std::array<double, 3>, 3> element_mass(const Point2& v0,
                                                  const Point2& v1,
                                                  const Point2& v2) {
  const double area = signed_area(v0, v1, v2);
  require_nondegenerate(area);
  std::array<std::array<double, 3>, 3> M{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      M[i][j] = (area / 12.0) * (i == j ? 2.0 : 1.0);
    }
  }
  return M;
}

namespace {

template <typename ElementMatrix>
SparseMatrix assemble_global(const Mesh& mesh, ElementMatrix&& local) {
  TripletBuffer buf;
  buf.reserve(9 * mesh.num_triangles());
  for (const auto& tri : mesh.triangles) {
    const auto Ke = local(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                          mesh.vertices[tri[2]]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        buf.add(tri[i], tri[j], Ke[i][j]);
      }
    }
  }
  return assemble_from_triplets(buf, mesh.num_vertices(), mesh.num_vertices());
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& mesh) {
  return assemble_global(mesh, [](const Point2& a, const Point2& b,
                                  const Point2& c) {
    return element_stiffness(a, b, c);
  });
}

SparseMatrix assemble_mass(const Mesh& mesh) {
  return assemble_global(mesh, [](const Point2& a, const Point2& b,
                                  const Point2& c) {
    return element_mass(a, b, c);
  });
}

SparseMatrix assemble_boundary_mass(const Mesh& mesh) {
  TripletBuffer buf;
  for (const auto& [a, b] : mesh.boundary_edges) {
    const auto& pa = mesh.vertices[a];
    const auto& pb = mesh.vertices[b];
    const double len = std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    buf.add(a, a, len / 3.0);
    buf.add(b, b, len / 3.0);
    buf.add(a, b, len / 6.0);
    buf.add(b, a, len / 6.0);
  }
  return assemble_from_triplets(buf, mesh.num_vertices(), mesh.num_vertices());
}

Vector assemble_load(const Mesh& mesh, const ScalarField& g,
                     const QuadratureRule& rule) {
  Vector b = Vector::Zero(mesh.num_vertices());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    const double area = mesh.triangle_area(t);
    for (const auto& node : rule.nodes) {
      const auto& l = node.barycentric;
      const double x = l[0] * p0[0] + l[1] * p1[0] + l[2] * p2[0];
      const double y = l[0] * p0[1] + l[1] * p1[1] + l[2] * p2[1];
      const double gval = g(x, y) * node.weight * area;
      for (int i = 0; i < 3; ++i) {
        b[tri[i]] += gval * l[i];
      }
    }
  }
  return b;
}

}  // namespace dbc
