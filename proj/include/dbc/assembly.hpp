#ifndef DBC_ASSEMBLY_HPP
#define DBC_ASSEMBLY_HPP

#include <array>
#include <functional>
#include <memory>

#include "dbc/linalg.hpp"
#include "dbc/mesh.hpp"

namespace dbc {

/// Piecewise-linear, globally continuous function given by one nodal value
/// per mesh vertex.
struct FeFunction {
  std::shared_ptr<const Mesh> mesh;
  Vector coefficients;

  FeFunction() = default;
  FeFunction(std::shared_ptr<const Mesh> m, Vector c);

  /// Barycentric-linear interpolation inside the triangle containing (x, y).
  double evaluate(double x, double y) const;
};

/// Quadrature rule on the reference triangle, points in barycentric
/// coordinates, weights normalized to sum to 1.
struct QuadratureRule {
  struct Node {
    std::array<double, 3> barycentric;
    double weight;
  };
  std::vector<Node> nodes;
  int exactness_degree;
};

/// 3-point edge-midpoint rule, exact for degree 2.
const QuadratureRule& quadrature_degree2();
/// 7-point rule, exact for degree 5.
const QuadratureRule& quadrature_degree5();
const QuadratureRule& quadrature_for_degree(int degree);

using ScalarField = std::function<double(double, double)>;

/// Local stiffness matrix: integral of grad(lambda_i) . grad(lambda_j) over
/// the triangle, by closed-form gradients. Degenerate triangles throw.
std::array<std::array<double, 3>, 3> element_stiffness(const Point2& v0,
                                                       const Point2& v1,
                                                       const Point2& v2);

/// Local mass matrix (|K|/12) [[2,1,1],[1,2,1],[1,1,2]].
std::array<std::array<double, 3>, 3> element_mass(const Point2& v0,
                                                  const Point2& v1,
                                                  const Point2& v2);

SparseMatrix assemble_stiffness(const Mesh& mesh);
SparseMatrix assemble_mass(const Mesh& mesh);

/// Boundary mass matrix over the edges of Gamma, full vertex dimension with
/// entries only at boundary nodes. Per edge (|E|/6) [[2,1],[1,2]].
SparseMatrix assemble_boundary_mass(const Mesh& mesh);

/// Load vector b_i = integral of g * lambda_i, triangle-wise with the rule.
Vector assemble_load(const Mesh& mesh, const ScalarField& g,
                     const QuadratureRule& rule);

}  // namespace dbc

#endif
