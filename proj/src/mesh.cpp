#include "dbc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace dbc {

namespace {

constexpr double kBoundaryTol = 1e-12;

bool on_unit_square_boundary(const Point2& p) {
  return std::abs(p[0]) < kBoundaryTol || std::abs(p[0] - 1.0) < kBoundaryTol ||
         std::abs(p[1]) < kBoundaryTol || std::abs(p[1] - 1.0) < kBoundaryTol;
}

// Perimeter parameter in [0,4), counterclockwise from (0,0).
double perimeter_coordinate(const Point2& p) {
  const double x = p[0];
  const double y = p[1];
  if (std::abs(y) < kBoundaryTol && x < 1.0 - kBoundaryTol) return x;
  if (std::abs(x - 1.0) < kBoundaryTol && y < 1.0 - kBoundaryTol) return 1.0 + y;
  if (std::abs(y - 1.0) < kBoundaryTol && x > kBoundaryTol) return 2.0 + (1.0 - x);
  return 3.0 + (1.0 - y);
}

// Boundary topology from edge incidence: an edge is on the boundary iff it
// belongs to exactly one triangle. Cross-checked against the coordinate test.
void build_boundary(Mesh& mesh) {
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = tri[e], b = tri[(e + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  std::vector<char> on_boundary(mesh.vertices.size(), 0);
  mesh.boundary_edges.clear();
  for (const auto& [edge, count] : edge_count) {
    if (count == 1) {
      mesh.boundary_edges.push_back({edge.first, edge.second});
      on_boundary[edge.first] = 1;
      on_boundary[edge.second] = 1;
    } else if (count != 2) {
      throw std::logic_error("mesh edge incident to " + std::to_string(count) +
                             " triangles");
    }
  }
  mesh.boundary_node_ids.clear();
  mesh.interior_node_ids.clear();
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const bool by_coord = on_unit_square_boundary(mesh.vertices[v]);
    if (by_coord != static_cast<bool>(on_boundary[v])) {
      throw std::logic_error("boundary detection mismatch at vertex " +
                             std::to_string(v));
    }
    if (on_boundary[v]) {
      mesh.boundary_node_ids.push_back(v);
    } else {
      mesh.interior_node_ids.push_back(v);
    }
  }
  std::sort(mesh.boundary_node_ids.begin(), mesh.boundary_node_ids.end(),
            [&](int a, int b) {
              return perimeter_coordinate(mesh.vertices[a]) <
                     perimeter_coordinate(mesh.vertices[b]);
            });
}

}  // namespace

double Mesh::triangle_area(int t) const {
  const auto& [a, b, c] = triangles[t];
  const auto& pa = vertices[a];
  const auto& pb = vertices[b];
  const auto& pc = vertices[c];
  return 0.5 * ((pb[0] - pa[0]) * (pc[1] - pa[1]) -
                (pc[0] - pa[0]) * (pb[1] - pa[1]));
}

double Mesh::triangle_diameter(int t) const {
  const auto& tri = triangles[t];
  double d = 0.0;
  for (int e = 0; e < 3; ++e) {
    const auto& p = vertices[tri[e]];
    const auto& q = vertices[tri[(e + 1) % 3]];
    d = std::max(d, std::hypot(q[0] - p[0], q[1] - p[1]));
  }
  return d;
}

bool Mesh::is_boundary_node(int v) const {
  return on_unit_square_boundary(vertices[v]);
}

std::shared_ptr<const Mesh> unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("unit_square_mesh: n must be >= 1");
  auto mesh = std::make_shared<Mesh>();
  mesh->vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh->vertices.push_back({static_cast<double>(i) / n,
                                static_cast<double>(j) / n});
    }
  }
  auto idx = [n](int i, int j) { return j * (n + 1) + i; };
  mesh->triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Split along the lower-left to upper-right diagonal.
      int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1),
          d = idx(i, j + 1);
      mesh->triangles.push_back({a, b, c});
      mesh->triangles.push_back({a, c, d});
    }
  }
  build_boundary(*mesh);
  return mesh;
}

std::shared_ptr<const Mesh> refine_uniform(std::shared_ptr<const Mesh> mesh) {
  auto fine = std::make_shared<Mesh>();
  fine->vertices = mesh->vertices;
  fine->level = mesh->level + 1;
  fine->parent = mesh;

  std::map<std::pair<int, int>, int> midpoint_of;
  auto midpoint = [&](int a, int b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = midpoint_of.find(key);
    if (it != midpoint_of.end()) return it->second;
    const auto& pa = mesh->vertices[a];
    const auto& pb = mesh->vertices[b];
    int id = fine->num_vertices();
    fine->vertices.push_back({0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])});
    fine->midpoint_edges.push_back({key.first, key.second});
    midpoint_of.emplace(key, id);
    return id;
  };

  fine->triangles.reserve(4 * mesh->num_triangles());
  for (const auto& [a, b, c] : mesh->triangles) {
    int mab = midpoint(a, b), mbc = midpoint(b, c), mca = midpoint(c, a);
    fine->triangles.push_back({a, mab, mca});
    fine->triangles.push_back({mab, b, mbc});
    fine->triangles.push_back({mca, mbc, c});
    fine->triangles.push_back({mab, mbc, mca});
  }
  build_boundary(*fine);
  return fine;
}

const std::vector<int>& boundary_nodes(const Mesh& mesh) {
  return mesh.boundary_node_ids;
}

double mesh_size(const Mesh& mesh) {
  double h = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    h = std::max(h, mesh.triangle_diameter(t));
  }
  return h;
}

void export_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  out << mesh.num_vertices() << " " << mesh.num_triangles() << "\n";
  for (const auto& p : mesh.vertices) out << p[0] << " " << p[1] << "\n";
  for (const auto& [a, b, c] : mesh.triangles)
    out << a << " " << b << " " << c << "\n";
}

}  // namespace dbc
