#include "dbc/pdas_solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbc {

int ActiveSetState::count(NodeStatus s) const {
  return static_cast<int>(std::count(status.begin(), status.end(), s));
}

double KktResidual::max() const {
  return std::max({stationarity, complementarity, feasibility, sign});
}

namespace {

// Full saddle operator and right-hand side, identical to the unconstrained
// system; the PDAS iteration pins rows of this system.
struct SaddleSystem {
  SparseMatrix A;
  Vector rhs;
  int n;   // vertex count
  int ni;  // interior count
};

SaddleSystem build_saddle(const AssembledProblem& a) {
  const auto& interior = a.mesh->interior_node_ids;
  const int n = a.mesh->num_vertices();
  const int ni = static_cast<int>(interior.size());
  std::vector<int> col_of_interior(n, -1);
  for (int i = 0; i < ni; ++i) col_of_interior[interior[i]] = i;

  TripletBuffer buf;
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
  Vector rhs = Vector::Zero(n + ni);
  rhs.head(n) = a.load;
  return {assemble_from_triplets(buf, n + ni, n + ni), std::move(rhs), n, ni};
}

// Solve the saddle system with the listed unknowns pinned to fixed values,
// by symmetric elimination of the pinned block. Returns the full solution.
Vector solve_pinned(const SaddleSystem& sys, const std::vector<int>& pinned,
                    const Vector& pinned_values) {
  const int N = sys.n + sys.ni;
  std::vector<char> is_pinned(N, 0);
  for (int p : pinned) is_pinned[p] = 1;

  std::vector<int> free_ids;
  free_ids.reserve(N - pinned.size());
  for (int i = 0; i < N; ++i) {
    if (!is_pinned[i]) free_ids.push_back(i);
  }

  Vector x = Vector::Zero(N);
  for (std::size_t i = 0; i < pinned.size(); ++i) x[pinned[i]] = pinned_values[i];

  if (!free_ids.empty()) {
    SparseMatrix A_ff = sys.A.submatrix(free_ids, free_ids);
    Vector rhs_f(free_ids.size());
    for (std::size_t i = 0; i < free_ids.size(); ++i) rhs_f[i] = sys.rhs[free_ids[i]];
    if (!pinned.empty()) {
      SparseMatrix A_fp = sys.A.submatrix(free_ids, pinned);
      rhs_f -= A_fp.multiply(pinned_values);
    }
    Vector x_f = solve_symmetric_indefinite(A_ff, rhs_f);
    for (std::size_t i = 0; i < free_ids.size(); ++i) x[free_ids[i]] = x_f[i];
  }
  return x;
}

}  // namespace

std::pair<ControlSolution, ActiveSetState> solve_constrained(
    const ControlProblem& problem, const PdasOptions& options) {
  problem.validate();
  return solve_constrained(AssembledProblem::build(problem), problem, options);
}

std::pair<ControlSolution, ActiveSetState> solve_constrained(
    const AssembledProblem& a, const ControlProblem& problem,
    const PdasOptions& options) {
  const auto& boundary = a.mesh->boundary_node_ids;
  const int nb = static_cast<int>(boundary.size());
  const int n = a.mesh->num_vertices();
  const double c = options.scaling;

  SaddleSystem sys = build_saddle(a);

  std::vector<NodeStatus> status(nb, NodeStatus::Inactive);
  if (!options.initial_status.empty()) {
    if (static_cast<int>(options.initial_status.size()) != nb) {
      throw std::invalid_argument("solve_constrained: initial status size mismatch");
    }
    status = options.initial_status;
    if (!problem.lower_bound) {
      std::replace(status.begin(), status.end(), NodeStatus::ActiveLower,
                   NodeStatus::Inactive);
    }
    if (!problem.upper_bound) {
      std::replace(status.begin(), status.end(), NodeStatus::ActiveUpper,
                   NodeStatus::Inactive);
    }
  }

  Vector x;
  Vector mu = Vector::Zero(nb);
  int iter = 0;
  for (;; ++iter) {
    if (iter >= options.max_iterations) {
      ControlSolution last;
      Vector phi = Vector::Zero(n);
      for (int i = 0; i < sys.ni; ++i) phi[a.mesh->interior_node_ids[i]] = x[n + i];
      last.u = FeFunction(a.mesh, x.head(n));
      last.phi = FeFunction(a.mesh, phi);
      last.diagnostics.pdas_iterations = iter;
      ActiveSetState st{status, mu, iter};
      const KktResidual r = kkt_residual(problem, last, st);
      throw SolverFailure(
          "solve_constrained: iteration cap exceeded, max KKT residual " +
              std::to_string(r.max()),
          r.max());
    }

    std::vector<int> pinned;
    std::vector<double> pinned_vals;
    for (int i = 0; i < nb; ++i) {
      if (status[i] == NodeStatus::ActiveLower) {
        pinned.push_back(boundary[i]);
        pinned_vals.push_back(*problem.lower_bound);
      } else if (status[i] == NodeStatus::ActiveUpper) {
        pinned.push_back(boundary[i]);
        pinned_vals.push_back(*problem.upper_bound);
      }
    }
    Vector pv = Eigen::Map<Vector>(pinned_vals.data(), pinned_vals.size());
    x = solve_pinned(sys, pinned, pv);

    // Multiplier: residual of the pinned stationarity rows.
    Vector residual = sys.A.multiply(x) - sys.rhs;
    mu.setZero();
    for (int i = 0; i < nb; ++i) {
      if (status[i] != NodeStatus::Inactive) mu[i] = residual[boundary[i]];
    }

    std::vector<NodeStatus> next(nb, NodeStatus::Inactive);
    for (int i = 0; i < nb; ++i) {
      const double ui = x[boundary[i]];
      // mu is the stationarity-row residual: positive where the lower bound
      // binds, negative where the upper bound binds.
      if (problem.lower_bound && mu[i] + c * (*problem.lower_bound - ui) > 0.0) {
        next[i] = NodeStatus::ActiveLower;
      } else if (problem.upper_bound && -mu[i] + c * (ui - *problem.upper_bound) > 0.0) {
        next[i] = NodeStatus::ActiveUpper;
      }
    }
    if (next == status) {
      ++iter;
      break;
    }
    status = std::move(next);
  }

  ControlSolution sol;
  Vector phi = Vector::Zero(n);
  for (int i = 0; i < sys.ni; ++i) phi[a.mesh->interior_node_ids[i]] = x[n + i];
  sol.u = FeFunction(a.mesh, x.head(n));
  sol.phi = FeFunction(a.mesh, std::move(phi));
  const double bn = sys.rhs.norm();
  Vector full_res = sys.A.multiply(x) - sys.rhs;
  for (int i = 0; i < nb; ++i) full_res[boundary[i]] -= mu[i];
  sol.diagnostics.saddle_residual = bn > 0 ? full_res.norm() / bn : full_res.norm();
  sol.diagnostics.pdas_iterations = iter;

  return {std::move(sol), ActiveSetState{std::move(status), std::move(mu), iter}};
}

KktResidual kkt_residual(const ControlProblem& problem,
                         const ControlSolution& sol,
                         const ActiveSetState& state) {
  const auto& mesh = problem.mesh;
  const auto& boundary = mesh->boundary_node_ids;
  const int nb = static_cast<int>(boundary.size());
  if (static_cast<int>(state.status.size()) != nb ||
      state.multiplier.size() != nb ||
      sol.u.coefficients.size() != mesh->num_vertices()) {
    throw std::invalid_argument("kkt_residual: dimension mismatch");
  }

  AssembledProblem a = AssembledProblem::build(problem);
  SaddleSystem sys = build_saddle(a);
  const int n = sys.n;
  Vector x(n + sys.ni);
  x.head(n) = sol.u.coefficients;
  for (int i = 0; i < sys.ni; ++i)
    x[n + i] = sol.phi.coefficients[mesh->interior_node_ids[i]];

  Vector residual = sys.A.multiply(x) - sys.rhs;
  for (int i = 0; i < nb; ++i) residual[boundary[i]] -= state.multiplier[i];

  KktResidual r;
  r.stationarity = residual.lpNorm<Eigen::Infinity>();
  for (int i = 0; i < nb; ++i) {
    const double ui = sol.u.coefficients[boundary[i]];
    const double mui = state.multiplier[i];
    if (problem.lower_bound) {
      r.feasibility = std::max(r.feasibility, *problem.lower_bound - ui);
      if (mui > 0.0) {
        r.complementarity = std::max(r.complementarity, mui * (ui - *problem.lower_bound));
      }
    }
    if (problem.upper_bound) {
      r.feasibility = std::max(r.feasibility, ui - *problem.upper_bound);
      if (mui < 0.0) {
        r.complementarity = std::max(r.complementarity, -mui * (*problem.upper_bound - ui));
      }
    }
    switch (state.status[i]) {
      case NodeStatus::ActiveLower:
        r.sign = std::max(r.sign, -mui);
        break;
      case NodeStatus::ActiveUpper:
        r.sign = std::max(r.sign, mui);
        break;
      case NodeStatus::Inactive:
        r.sign = std::max(r.sign, std::abs(mui));
        break;
    }
    if (!problem.lower_bound && mui > 0.0) r.sign = std::max(r.sign, mui);
    if (!problem.upper_bound && mui < 0.0) r.sign = std::max(r.sign, -mui);
  }
  r.feasibility = std::max(r.feasibility, 0.0);
  return r;
}

}  // namespace dbc
