#ifndef DBC_CONTROL_SOLVER_HPP
#define DBC_CONTROL_SOLVER_HPP

#include <optional>

#include "dbc/harmonic_ext.hpp"

namespace dbc {

/// Discrete optimal control problem on a fixed mesh: minimize
///   1/2 ||u - u_d||_{L2}^2 + lambda/2 ||u||_{H1}^2
/// over discrete harmonic functions, optionally with bounds on the
/// boundary trace.
struct ControlProblem {
  std::shared_ptr<const Mesh> mesh;
  double lambda = 1.0;
  ScalarField desired_state;        // u_d, ignored if load_override set
  int quadrature_degree = 2;
  std::optional<Vector> load_override;  // precomputed <u_d, v_i>
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;

  void validate() const;
  bool has_bounds() const { return lower_bound || upper_bound; }
  Vector load_vector() const;
};

struct SolverDiagnostics {
  double saddle_residual = 0.0;
  int pdas_iterations = 0;
};

/// State u_h (discrete harmonic, the control is its boundary trace) and
/// adjoint multiplier phi_h with exactly zero boundary coefficients.
struct ControlSolution {
  FeFunction u;
  FeFunction phi;
  SolverDiagnostics diagnostics;
};

/// Assembled operators shared by the unconstrained and constrained solvers.
struct AssembledProblem {
  std::shared_ptr<const Mesh> mesh;
  SparseMatrix mass;
  SparseMatrix stiffness;
  SparseMatrix b_form;  // (lambda+1) M + lambda K
  Vector load;

  static AssembledProblem build(const ControlProblem& problem);
};

/// Reduce an inhomogeneous problem (-Delta u_f = f) to the homogeneous one:
/// returns the load vector of u_d = u_d_tilde - u_f.
Vector homogenize(const std::shared_ptr<const Mesh>& mesh, const ScalarField& f,
                  const ScalarField& u_d_tilde, const QuadratureRule& rule);

/// Mixed saddle-point solve: state plus a Lagrange multiplier enforcing
/// discrete harmonicity. Rejects problems with bounds set.
ControlSolution solve_unconstrained(const ControlProblem& problem);
ControlSolution solve_unconstrained(const AssembledProblem& assembled);

/// Equivalent reduced formulation over the discrete harmonic subspace,
/// built column-by-column from harmonic extensions of the boundary nodal
/// basis. Dense in the boundary dimension; intended as a cross-check on
/// small meshes.
FeFunction solve_reduced(const ControlProblem& problem);

}  // namespace dbc

#endif
