#ifndef DBC_EXPERIMENTS_HPP
#define DBC_EXPERIMENTS_HPP

#include <optional>
#include <string>

#include "dbc/error_analysis.hpp"
#include "dbc/pdas_solver.hpp"

namespace dbc {

/// Desired-state data of the three convergence experiments.
double experiment12_desired_state(double x, double y);  // x(1-y) - 0.35
double experiment3_desired_state(double x, double y);

struct ExperimentConfig {
  int experiment = 1;  // 1: unconstrained, 2: constrained trace, 3: known solution
  int levels = 6;      // measured refinement levels above the coarsest mesh
  double lambda = 1.0;
  int quadrature_degree = 2;
  std::string output_path;  // empty: no CSV written
  std::optional<double> lower_bound;  // experiment 2; defaults to 0
  std::optional<double> upper_bound;

  void validate() const;
};

/// Solve the experiment on a nested hierarchy starting from a 2x2 grid and
/// report per-level squared errors. Experiments 1 and 2 measure against the
/// solution one level finer than the last reported one; experiment 3
/// measures against the exact zero solution.
std::vector<ConvergenceRecord> run_experiment(const ExperimentConfig& config);

void write_csv(const std::vector<ConvergenceRecord>& records,
               const std::string& path);

}  // namespace dbc

#endif
