#include "dbc/control_solver.hpp"

#include <stdexcept>

namespace dbc {

void ControlProblem::validate() const {
  if (!mesh) throw std::invalid_argument("ControlProblem: mesh missing");
  if (!(lambda > 0.0)) throw std::invalid_argument("ControlProblem: lambda must be positive");
  if (lower_bound && upper_bound && *lower_bound > *upper_bound) {
    throw std::invalid_argument("ControlProblem: infeasible bounds a > b");
  }
  if (!load_override && !desired_state) {
    throw std::invalid_argument("ControlProblem: desired state missing");
  }
}

Vector ControlProblem::load_vector() const {
  if (load_override) return *load_override;
  return assemble_load(*mesh, desired_state, quadrature_for_degree(quadrature_degree));
}

AssembledProblem AssembledProblem::build(const ControlProblem& problem) {
  problem.validate();
  AssembledProblem a;
  a.mesh = problem.mesh;
  a.mass = assemble_mass(*problem.mesh);
  a.stiffness = assemble_stiffness(*problem.mesh);
  const double lam = problem.lambda;
  Eigen::SparseMatrix<double, Eigen::RowMajor> b =
      (lam + 1.0) * a.mass.eigen() + lam * a.stiffness.eigen();
  a.b_form = SparseMatrix(std::move(b));
  a.load = problem.load_vector();
  return a;
}

Vector homogenize(const std::shared_ptr<const Mesh>& mesh, const ScalarField& f,
                  const ScalarField& u_d_tilde, const QuadratureRule& rule) {
  const auto& interior = mesh->interior_node_ids;
  Vector u_f = Vector::Zero(mesh->num_vertices());
  if (!interior.empty()) {
    SparseMatrix K = assemble_stiffness(*mesh);
    Vector b_f = assemble_load(*mesh, f, rule);
    Vector b_I(interior.size());
    for (std::size_t i = 0; i < interior.size(); ++i) b_I[i] = b_f[interior[i]];
    Vector u_I = solve_spd(K.submatrix(interior, interior), b_I);
    for (std::size_t i = 0; i < interior.size(); ++i) u_f[interior[i]] = u_I[i];
  }
  SparseMatrix M = assemble_mass(*mesh);
  return assemble_load(*mesh, u_d_tilde, rule) - M.multiply(u_f);
}

namespace {

// Symmetric saddle system of size n + n_interior:
//   [ B       K(:,I) ] [u  ]   [b]
//   [ K(I,:)  0      ] [phi] = [0]
// The multiplier lives on interior nodes only; boundary rows of the
// constraint block are omitted.
SparseMatrix build_saddle_matrix(const AssembledProblem& a) {
  const auto& interior = a.mesh->interior_node_ids;
  const int n = a.mesh->num_vertices();
  const int ni = static_cast<int>(interior.size());

  std::vector<int> col_of_interior(n, -1);
  for (int i = 0; i < ni; ++i) col_of_interior[interior[i]] = i;

  TripletBuffer buf;
  buf.reserve(a.b_form.nonzeros() + 2 * a.stiffness.nonzeros());
  const auto& B = a.b_form.eigen();
  for (int r = 0; r < B.outerSize(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(B, r); it; ++it) {
      buf.add(r, static_cast<int>(it.col()), it.value());
    }
  }
  const auto& K = a.stiffness.eigen();
  for (int r = 0; r < K.outerSize(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(K, r); it; ++it) {
      const int c = static_cast<int>(it.col());
      if (col_of_interior[c] >= 0) {
        buf.add(r, n + col_of_interior[c], it.value());
        buf.add(n + col_of_interior[c], r, it.value());
      }
    }
  }
  return assemble_from_triplets(buf, n + ni, n + ni);
}

}  // namespace

ControlSolution solve_unconstrained(const ControlProblem& problem) {
  problem.validate();
  if (problem.has_bounds()) {
    throw std::invalid_argument("solve_unconstrained: problem has bounds; use solve_constrained");
  }
  return solve_unconstrained(AssembledProblem::build(problem));
}

ControlSolution solve_unconstrained(const AssembledProblem& a) {
  const auto& interior = a.mesh->interior_node_ids;
  const int n = a.mesh->num_vertices();
  const int ni = static_cast<int>(interior.size());

  SparseMatrix A = build_saddle_matrix(a);
  Vector rhs = Vector::Zero(n + ni);
  rhs.head(n) = a.load;
  Vector x = solve_symmetric_indefinite(A, rhs);

  Vector phi = Vector::Zero(n);
  for (int i = 0; i < ni; ++i) phi[interior[i]] = x[n + i];

  ControlSolution sol;
  sol.u = FeFunction(a.mesh, x.head(n));
  sol.phi = FeFunction(a.mesh, std::move(phi));
  const double bn = rhs.norm();
  sol.diagnostics.saddle_residual =
      bn > 0 ? (A.multiply(x) - rhs).norm() / bn : (A.multiply(x) - rhs).norm();
  return sol;
}

FeFunction solve_reduced(const ControlProblem& problem) {
  problem.validate();
  const auto& mesh = problem.mesh;
  const auto& boundary = mesh->boundary_node_ids;
  const int n = mesh->num_vertices();
  const int nb = static_cast<int>(boundary.size());

  SparseMatrix K = assemble_stiffness(*mesh);

  // Discrete harmonic basis, one extension per boundary node.
  Eigen::MatrixXd basis(n, nb);
  for (int j = 0; j < nb; ++j) {
    Vector e = Vector::Zero(nb);
    e[j] = 1.0;
    basis.col(j) =
        discrete_harmonic_extension(mesh, TraceVector(mesh, std::move(e)), K)
            .coefficients;
  }

  SparseMatrix M = assemble_mass(*mesh);
  const double lam = problem.lambda;
  Eigen::MatrixXd Bdense =
      (lam + 1.0) * (M.eigen() * basis) + lam * (K.eigen() * basis);
  Eigen::MatrixXd reduced = basis.transpose() * Bdense;
  Vector rhs = basis.transpose() * problem.load_vector();

  Eigen::LLT<Eigen::MatrixXd> llt(reduced);
  if (llt.info() != Eigen::Success) {
    throw SolverFailure("solve_reduced: reduced operator not positive definite", -1.0);
  }
  Vector g = llt.solve(rhs);
  return FeFunction(mesh, basis * g);
}

}  // namespace dbc
