#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "dbc/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Energy-space FEM for Dirichlet boundary control on the unit square"};
  app.require_subcommand(1);

  dbc::ExperimentConfig config;
  double lower = 0.0, upper = 0.0;

  auto* run = app.add_subcommand("run", "Run a convergence experiment and write a CSV table");
  run->add_option("--experiment", config.experiment, "Experiment id (1, 2 or 3)")
      ->required()
      ->check(CLI::Range(1, 3));
  run->add_option("--levels", config.levels, "Number of measured refinement levels")
      ->default_val(6);
  run->add_option("--lambda", config.lambda, "Regularization weight")->default_val(1.0);
  run->add_option("--quad-degree", config.quadrature_degree,
                  "Quadrature degree for the data term (2 or 5)")
      ->default_val(2);
  run->add_option("--out", config.output_path, "Output CSV path")->required();
  auto* lower_opt = run->add_option("--lower", lower, "Lower trace bound (experiment 2)");
  auto* upper_opt = run->add_option("--upper", upper, "Upper trace bound (experiment 2)");

  int export_n = 2, export_refine = 0;
  std::string export_path;
  auto* exp = app.add_subcommand("export-mesh", "Write a mesh as plain text");
  exp->add_option("--n", export_n, "Grid resolution of the coarsest mesh")->default_val(2);
  exp->add_option("--refine", export_refine, "Uniform refinements to apply")->default_val(0);
  exp->add_option("--out", export_path, "Output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (*lower_opt) config.lower_bound = lower;
      if (*upper_opt) config.upper_bound = upper;
      config.validate();
      auto records = dbc::run_experiment(config);
      for (const auto& r : records) {
        std::printf("level %d  N=%-6d  h=%.4g  H1^2=%.6e  L2^2=%.6e  L2(Gamma)^2=%.6e\n",
                    r.level, r.num_elements, r.mesh_size, r.err_h1_sq, r.err_l2_sq,
                    r.err_l2_boundary_sq);
      }
      std::printf("wrote %s\n", config.output_path.c_str());
    } else if (exp->parsed()) {
      if (export_n < 1 || export_refine < 0) {
        std::cerr << "error: invalid mesh parameters\n";
        return 2;
      }
      auto mesh = dbc::unit_square_mesh(export_n);
      for (int i = 0; i < export_refine; ++i) mesh = dbc::refine_uniform(mesh);
      dbc::export_mesh(*mesh, export_path);
      std::printf("wrote %s (%d vertices, %d triangles)\n", export_path.c_str(),
                  mesh->num_vertices(), mesh->num_triangles());
    }
  } catch (const dbc::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
