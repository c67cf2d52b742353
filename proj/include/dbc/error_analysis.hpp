#ifndef DBC_ERROR_ANALYSIS_HPP
#define DBC_ERROR_ANALYSIS_HPP

#include <string>

#include "dbc/assembly.hpp"

namespace dbc {

struct ConvergenceRecord {
  int level = 0;
  int num_elements = 0;
  double mesh_size = 0.0;
  double err_h1_sq = 0.0;
  double err_l2_sq = 0.0;
  double err_l2_boundary_sq = 0.0;
};

struct ErrorNorms {
  double l2_sq = 0.0;
  double h1_sq = 0.0;          // full H1 norm squared: L2 part + gradient part
  double l2_boundary_sq = 0.0;
};

/// Represent a coarse-mesh function exactly on a nested finer mesh: parent
/// vertices copy their value, midpoints average their edge endpoints.
/// Throws std::invalid_argument if fine does not refine the coarse mesh.
FeFunction prolongate(const FeFunction& u_coarse,
                      std::shared_ptr<const Mesh> fine);

/// Squared error norms of u_ref - u; both on the same mesh.
ErrorNorms energy_errors(const FeFunction& u_ref, const FeFunction& u);
ErrorNorms energy_errors(const FeFunction& u_ref, const FeFunction& u,
                         const SparseMatrix& mass, const SparseMatrix& stiffness,
                         const SparseMatrix& boundary_mass);

enum class ErrorField { H1Sq, L2Sq, L2BoundarySq };

/// Least-squares slope of log(err^2) vs log(N) over the last
/// min(3, usable) records. Records with error below 1e-14 are excluded.
/// Throws std::invalid_argument with fewer than 3 usable records.
double fit_rate(const std::vector<ConvergenceRecord>& records, ErrorField field);

std::string field_name(ErrorField field);

}  // namespace dbc

#endif
