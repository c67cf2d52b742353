#ifndef DBC_HARMONIC_EXT_HPP
#define DBC_HARMONIC_EXT_HPP

#include "dbc/assembly.hpp"

namespace dbc {

/// Boundary nodal data, ordered as mesh.boundary_node_ids.
struct TraceVector {
  std::shared_ptr<const Mesh> mesh;
  Vector values;

  TraceVector() = default;
  TraceVector(std::shared_ptr<const Mesh> m, Vector v);
};

/// Boundary trace of an FE function, ordered as boundary_node_ids.
TraceVector boundary_trace(const FeFunction& u);

/// The discrete harmonic extension: boundary coefficients equal q, interior
/// coefficients solve the homogeneous Galerkin condition against all
/// zero-trace test functions. The trace identity holds exactly.
FeFunction discrete_harmonic_extension(std::shared_ptr<const Mesh> mesh,
                                       const TraceVector& q);

/// Same, reusing a preassembled stiffness matrix.
FeFunction discrete_harmonic_extension(std::shared_ptr<const Mesh> mesh,
                                       const TraceVector& q,
                                       const SparseMatrix& stiffness);

}  // namespace dbc

#endif
