#ifndef DBC_PDAS_SOLVER_HPP
#define DBC_PDAS_SOLVER_HPP

#include "dbc/control_solver.hpp"

namespace dbc {

enum class NodeStatus { Inactive, ActiveLower, ActiveUpper };

/// Active-set partition of the boundary nodes together with the
/// constraint multiplier, one entry per boundary node in
/// boundary_node_ids order.
struct ActiveSetState {
  std::vector<NodeStatus> status;
  Vector multiplier;
  int iterations = 0;

  int count(NodeStatus s) const;
};

struct KktResidual {
  double stationarity = 0.0;
  double complementarity = 0.0;
  double feasibility = 0.0;
  double sign = 0.0;

  double max() const;
};

struct PdasOptions {
  double scaling = 1.0;  // the c in the active-set update
  int max_iterations = 100;
  // Initial guess for the partition; empty means start inactive.
  std::vector<NodeStatus> initial_status;
};

/// Primal-dual active set iteration for the trace-constrained problem.
/// Pins active boundary nodes to their bound, solves the remaining
/// symmetric saddle system, reads the multiplier off the pinned rows, and
/// stops when the partition repeats. Throws SolverFailure when the
/// iteration cap is hit.
std::pair<ControlSolution, ActiveSetState> solve_constrained(
    const ControlProblem& problem, const PdasOptions& options = {});
std::pair<ControlSolution, ActiveSetState> solve_constrained(
    const AssembledProblem& assembled, const ControlProblem& problem,
    const PdasOptions& options = {});

/// Max-norm KKT residuals of a candidate solution: stationarity,
/// complementarity, primal feasibility, multiplier sign.
KktResidual kkt_residual(const ControlProblem& problem,
                         const ControlSolution& sol,
                         const ActiveSetState& state);

}  // namespace dbc

#endif
