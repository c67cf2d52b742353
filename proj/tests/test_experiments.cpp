#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dbc/experiments.hpp"

using namespace dbc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig config;
  config.experiment = 4;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.experiment = 1;
  config.levels = 2;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.levels = 9;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.levels = 6;
  config.quadrature_degree = 3;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.quadrature_degree = 2;
  config.lower_bound = 0.0;  // bounds only make sense for experiment 2
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.experiment = 2;
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("experiment 3 smoke run and CSV format") {
  ExperimentConfig config;
  config.experiment = 3;
  config.levels = 3;
  config.output_path = "exp3_smoke.csv";
  auto records = run_experiment(config);
  REQUIRE(records.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(records[j].level == j);
    CHECK(records[j].num_elements == 8 << (2 * j));
    CHECK(records[j].mesh_size ==
          doctest::Approx(std::sqrt(2.0) / (2 << j)).epsilon(1e-14));
    CHECK(records[j].err_h1_sq >= 0.0);
  }
  // Errors decay.
  CHECK(records[2].err_l2_sq < records[0].err_l2_sq);

  std::string csv = read_file("exp3_smoke.csv");
  CHECK(csv.rfind("level,num_elements,mesh_size,err_h1_sq,err_l2_sq,err_l2_boundary_sq\n",
                  0) == 0);
  CHECK(csv.find("# rate_h1_sq=") != std::string::npos);
  std::remove("exp3_smoke.csv");
}

TEST_CASE("experiment 1 reports levels below the reference solve") {
  ExperimentConfig config;
  config.experiment = 1;
  config.levels = 3;
  auto records = run_experiment(config);
  REQUIRE(records.size() == 3);
  // Errors against the level-3 reference decrease monotonically here.
  CHECK(records[1].err_h1_sq < records[0].err_h1_sq);
  CHECK(records[2].err_h1_sq < records[1].err_h1_sq);
}

TEST_CASE("identical configs give bitwise-identical CSV output") {
  ExperimentConfig config;
  config.experiment = 2;
  config.levels = 3;
  config.output_path = "exp2_a.csv";
  run_experiment(config);
  config.output_path = "exp2_b.csv";
  run_experiment(config);
  CHECK(read_file("exp2_a.csv") == read_file("exp2_b.csv"));
  std::remove("exp2_a.csv");
  std::remove("exp2_b.csv");
}

TEST_CASE("experiment 2 with vacuous bounds matches experiment 1") {
  ExperimentConfig e1;
  e1.experiment = 1;
  e1.levels = 3;
  auto r1 = run_experiment(e1);

  ExperimentConfig e2;
  e2.experiment = 2;
  e2.levels = 3;
  e2.lower_bound = -1e6;
  auto r2 = run_experiment(e2);

  REQUIRE(r1.size() == r2.size());
  for (std::size_t j = 0; j < r1.size(); ++j) {
    CHECK(std::abs(r1[j].err_h1_sq - r2[j].err_h1_sq) <= 1e-9);
    CHECK(std::abs(r1[j].err_l2_sq - r2[j].err_l2_sq) <= 1e-9);
    CHECK(std::abs(r1[j].err_l2_boundary_sq - r2[j].err_l2_boundary_sq) <= 1e-9);
  }
}
