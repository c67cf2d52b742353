#ifndef DBC_MESH_HPP
#define DBC_MESH_HPP

#include <array>
#include <memory>
#include <vector>

namespace dbc {

using Point2 = std::array<double, 2>;

/// Nested uniform triangulation of the unit square. Immutable after
/// construction; refinement produces a new mesh holding a pointer to its
/// parent so that prolongation between levels is exact.
class Mesh {
public:
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<std::array<int, 2>> boundary_edges;
  std::vector<int> boundary_node_ids;  // counterclockwise from (0,0)
  std::vector<int> interior_node_ids;
  int level = 0;
  std::shared_ptr<const Mesh> parent;
  // For each vertex appended during refinement (index >= parent vertex
  // count), the parent edge whose midpoint it is.
  std::vector<std::array<int, 2>> midpoint_edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }

  double triangle_area(int t) const;
  double triangle_diameter(int t) const;

  bool is_boundary_node(int v) const;
};

/// n x n grid of squares, each split along the lower-left to upper-right
/// diagonal. Throws std::invalid_argument for n < 1.
std::shared_ptr<const Mesh> unit_square_mesh(int n);

/// Red refinement: every triangle split into 4 congruent children via edge
/// midpoints. Parent vertices keep their indices.
std::shared_ptr<const Mesh> refine_uniform(std::shared_ptr<const Mesh> mesh);

/// Indices of vertices on the boundary, counterclockwise starting at (0,0).
const std::vector<int>& boundary_nodes(const Mesh& mesh);

/// Maximum triangle diameter h.
double mesh_size(const Mesh& mesh);

/// Debug export: "V T" header, V lines "x y", T lines "i j k".
void export_mesh(const Mesh& mesh, const std::string& path);

}  // namespace dbc

#endif
