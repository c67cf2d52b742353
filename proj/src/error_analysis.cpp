#include "dbc/error_analysis.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace dbc {

FeFunction prolongate(const FeFunction& u_coarse,
                      std::shared_ptr<const Mesh> fine) {
  // Walk the parent chain down to the coarse mesh.
  std::vector<std::shared_ptr<const Mesh>> chain;
  for (auto m = fine; m; m = m->parent) {
    chain.push_back(m);
    if (m.get() == u_coarse.mesh.get()) break;
  }
  if (chain.empty() || chain.back().get() != u_coarse.mesh.get()) {
    throw std::invalid_argument("prolongate: meshes are not nested");
  }

  Vector coeffs = u_coarse.coefficients;
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    const Mesh& m = **it;
    const int n_parent = m.parent->num_vertices();
    Vector next(m.num_vertices());
    next.head(n_parent) = coeffs;
    for (std::size_t k = 0; k < m.midpoint_edges.size(); ++k) {
      const auto& [a, b] = m.midpoint_edges[k];
      next[n_parent + static_cast<int>(k)] = 0.5 * (coeffs[a] + coeffs[b]);
    }
    coeffs = std::move(next);
  }
  return FeFunction(std::move(fine), std::move(coeffs));
}

ErrorNorms energy_errors(const FeFunction& u_ref, const FeFunction& u) {
  if (u_ref.mesh.get() != u.mesh.get()) {
    throw std::invalid_argument("energy_errors: functions on different meshes");
  }
  const Mesh& mesh = *u_ref.mesh;
  return energy_errors(u_ref, u, assemble_mass(mesh), assemble_stiffness(mesh),
                       assemble_boundary_mass(mesh));
}

ErrorNorms energy_errors(const FeFunction& u_ref, const FeFunction& u,
                         const SparseMatrix& mass, const SparseMatrix& stiffness,
                         const SparseMatrix& boundary_mass) {
  if (u_ref.mesh.get() != u.mesh.get()) {
    throw std::invalid_argument("energy_errors: functions on different meshes");
  }
  const Vector e = u_ref.coefficients - u.coefficients;
  ErrorNorms norms;
  norms.l2_sq = e.dot(mass.multiply(e));
  norms.h1_sq = norms.l2_sq + e.dot(stiffness.multiply(e));
  norms.l2_boundary_sq = e.dot(boundary_mass.multiply(e));
  return norms;
}

std::string field_name(ErrorField field) {
  switch (field) {
    case ErrorField::H1Sq: return "err_h1_sq";
    case ErrorField::L2Sq: return "err_l2_sq";
    case ErrorField::L2BoundarySq: return "err_l2_boundary_sq";
  }
  return "?";
}

double fit_rate(const std::vector<ConvergenceRecord>& records, ErrorField field) {
  auto value = [field](const ConvergenceRecord& r) {
    switch (field) {
      case ErrorField::H1Sq: return r.err_h1_sq;
      case ErrorField::L2Sq: return r.err_l2_sq;
      case ErrorField::L2BoundarySq: return r.err_l2_boundary_sq;
    }
    return 0.0;
  };

  std::vector<std::pair<double, double>> points;  // (log N, log err^2)
  for (const auto& r : records) {
    const double v = value(r);
    if (v < 1e-14) {
      std::cerr << "fit_rate: excluding level " << r.level << " ("
                << field_name(field) << " = " << v << " below floor)\n";
      continue;
    }
    points.emplace_back(std::log(static_cast<double>(r.num_elements)), std::log(v));
  }
  if (points.size() < 3) {
    throw std::invalid_argument("fit_rate: need at least 3 usable records");
  }

  const std::size_t take = std::min<std::size_t>(3, points.size());
  const std::size_t first = points.size() - take;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < points.size(); ++i) {
    sx += points[i].first;
    sy += points[i].second;
    sxx += points[i].first * points[i].first;
    sxy += points[i].first * points[i].second;
  }
  const double m = static_cast<double>(take);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace dbc
