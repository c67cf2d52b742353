#include "dbc/harmonic_ext.hpp"

#include <stdexcept>

namespace dbc {

TraceVector::TraceVector(std::shared_ptr<const Mesh> m, Vector v)
    : mesh(std::move(m)), values(std::move(v)) {
  if (values.size() != static_cast<Eigen::Index>(mesh->boundary_node_ids.size())) {
    throw std::invalid_argument("TraceVector: length mismatch");
  }
}

TraceVector boundary_trace(const FeFunction& u) {
  const auto& ids = u.mesh->boundary_node_ids;
  Vector v(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) v[i] = u.coefficients[ids[i]];
  return TraceVector(u.mesh, std::move(v));
}

FeFunction discrete_harmonic_extension(std::shared_ptr<const Mesh> mesh,
                                       const TraceVector& q) {
  return discrete_harmonic_extension(std::move(mesh), q,
                                     assemble_stiffness(*q.mesh));
}

FeFunction discrete_harmonic_extension(std::shared_ptr<const Mesh> mesh,
                                       const TraceVector& q,
                                       const SparseMatrix& stiffness) {
  const auto& interior = mesh->interior_node_ids;
  const auto& boundary = mesh->boundary_node_ids;

  Vector u = Vector::Zero(mesh->num_vertices());
  for (std::size_t i = 0; i < boundary.size(); ++i) u[boundary[i]] = q.values[i];

  if (!interior.empty()) {
    // K_II u_I = -K_IB q
    SparseMatrix K_II = stiffness.submatrix(interior, interior);
    SparseMatrix K_IB = stiffness.submatrix(interior, boundary);
    Vector u_I = solve_spd(K_II, -K_IB.multiply(q.values));
    for (std::size_t i = 0; i < interior.size(); ++i) u[interior[i]] = u_I[i];
  }
  return FeFunction(std::move(mesh), std::move(u));
}

}  // namespace dbc
