#include "dbc/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace dbc {

double experiment12_desired_state(double x, double y) {
  return x * (1.0 - y) - 0.35;
}

double experiment3_desired_state(double x, double y) {
  const double pi = std::numbers::pi;
  const double sx = std::sin(pi * x), sy = std::sin(pi * y);
  return 2.0 * pi * pi *
         (std::cos(2.0 * pi * x) * sy * sy + sx * sx * std::cos(2.0 * pi * y));
}

void ExperimentConfig::validate() const {
  if (experiment < 1 || experiment > 3) {
    throw std::invalid_argument("experiment must be 1, 2 or 3");
  }
  if (levels < 3 || levels > 8) {
    throw std::invalid_argument("levels must be between 3 and 8");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (quadrature_degree != 2 && quadrature_degree != 5) {
    throw std::invalid_argument("quadrature degree must be 2 or 5");
  }
  if (experiment != 2 && (lower_bound || upper_bound)) {
    throw std::invalid_argument("bounds apply to experiment 2 only");
  }
  if (lower_bound && upper_bound && *lower_bound > *upper_bound) {
    throw std::invalid_argument("infeasible bounds a > b");
  }
}

namespace {

// Carry a coarse active-set partition to the refined boundary: parent
// vertices copy their status, edge midpoints take an endpoint's active
// status if either endpoint is active.
std::vector<NodeStatus> prolongate_active_set(
    const Mesh& coarse, const std::vector<NodeStatus>& coarse_status,
    const Mesh& fine) {
  std::vector<NodeStatus> by_node(fine.num_vertices(), NodeStatus::Inactive);
  const int n_coarse = coarse.num_vertices();
  const auto& cb = coarse.boundary_node_ids;
  std::vector<NodeStatus> coarse_by_node(n_coarse, NodeStatus::Inactive);
  for (std::size_t i = 0; i < cb.size(); ++i) coarse_by_node[cb[i]] = coarse_status[i];

  for (int v : fine.boundary_node_ids) {
    if (v < n_coarse) {
      by_node[v] = coarse_by_node[v];
    } else {
      const auto& [a, b] = fine.midpoint_edges[v - n_coarse];
      if (coarse_by_node[a] != NodeStatus::Inactive) {
        by_node[v] = coarse_by_node[a];
      } else {
        by_node[v] = coarse_by_node[b];
      }
    }
  }
  std::vector<NodeStatus> status(fine.boundary_node_ids.size());
  for (std::size_t i = 0; i < fine.boundary_node_ids.size(); ++i) {
    status[i] = by_node[fine.boundary_node_ids[i]];
  }
  return status;
}

ConvergenceRecord make_record(const Mesh& mesh, const ErrorNorms& norms) {
  ConvergenceRecord r;
  r.level = mesh.level;
  r.num_elements = mesh.num_triangles();
  r.mesh_size = mesh_size(mesh);
  r.err_h1_sq = norms.h1_sq;
  r.err_l2_sq = norms.l2_sq;
  r.err_l2_boundary_sq = norms.l2_boundary_sq;
  return r;
}

}  // namespace

std::vector<ConvergenceRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();

  const bool constrained = config.experiment == 2;
  const bool exact_reference = config.experiment == 3;
  ScalarField u_d = config.experiment == 3
                        ? ScalarField(experiment3_desired_state)
                        : ScalarField(experiment12_desired_state);

  // Meshes 0..levels-1 are measured; experiments 1-2 solve one more level
  // as the reference solution.
  const int num_meshes = config.levels + (exact_reference ? 0 : 1);
  std::vector<std::shared_ptr<const Mesh>> meshes;
  meshes.push_back(unit_square_mesh(2));
  for (int j = 1; j < num_meshes; ++j) meshes.push_back(refine_uniform(meshes.back()));

  std::vector<FeFunction> solutions;
  std::vector<NodeStatus> prev_status;
  for (int j = 0; j < num_meshes; ++j) {
    ControlProblem problem;
    problem.mesh = meshes[j];
    problem.lambda = config.lambda;
    problem.desired_state = u_d;
    problem.quadrature_degree = config.quadrature_degree;
    if (constrained) {
      problem.lower_bound = config.lower_bound ? config.lower_bound : std::optional<double>(0.0);
      problem.upper_bound = config.upper_bound;
    }

    try {
      if (constrained) {
        PdasOptions options;
        if (j > 0) {
          options.initial_status =
              prolongate_active_set(*meshes[j - 1], prev_status, *meshes[j]);
        }
        auto [sol, state] = solve_constrained(problem, options);
        prev_status = state.status;
        solutions.push_back(std::move(sol.u));
      } else {
        solutions.push_back(solve_unconstrained(problem).u);
      }
    } catch (const SolverFailure& e) {
      throw SolverFailure("level " + std::to_string(j) + ": " + e.what(),
                          e.achieved_residual);
    }
  }

  std::vector<ConvergenceRecord> records;
  if (exact_reference) {
    for (int j = 0; j < config.levels; ++j) {
      const Mesh& mesh = *meshes[j];
      FeFunction zero(meshes[j], Vector::Zero(mesh.num_vertices()));
      records.push_back(make_record(mesh, energy_errors(zero, solutions[j])));
    }
  } else {
    const auto& ref_mesh = meshes.back();
    const SparseMatrix M = assemble_mass(*ref_mesh);
    const SparseMatrix K = assemble_stiffness(*ref_mesh);
    const SparseMatrix Mb = assemble_boundary_mass(*ref_mesh);
    const FeFunction& u_ref = solutions.back();
    for (int j = 0; j < config.levels; ++j) {
      FeFunction u_j = prolongate(solutions[j], ref_mesh);
      records.push_back(
          make_record(*meshes[j], energy_errors(u_ref, u_j, M, K, Mb)));
    }
  }

  if (!config.output_path.empty()) write_csv(records, config.output_path);
  return records;
}

void write_csv(const std::vector<ConvergenceRecord>& records,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);

  char buf[512];
  out << "level,num_elements,mesh_size,err_h1_sq,err_l2_sq,err_l2_boundary_sq\n";
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.16g,%.16g,%.16g,%.16g\n", r.level,
                  r.num_elements, r.mesh_size, r.err_h1_sq, r.err_l2_sq,
                  r.err_l2_boundary_sq);
    out << buf;
  }
  auto rate_or_nan = [&](ErrorField f) {
    try {
      return fit_rate(records, f);
    } catch (const std::invalid_argument&) {
      return std::nan("");
    }
  };
  std::snprintf(buf, sizeof(buf),
                "# rate_h1_sq=%.16g rate_l2_sq=%.16g rate_l2_boundary_sq=%.16g\n",
                rate_or_nan(ErrorField::H1Sq), rate_or_nan(ErrorField::L2Sq),
                rate_or_nan(ErrorField::L2BoundarySq));
  out << buf;
}

}  // namespace dbc
