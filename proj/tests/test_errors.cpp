#include <doctest.h>

#include <cmath>
#include <random>

#include "dbc/error_analysis.hpp"

using namespace dbc;

TEST_CASE("prolongation of constants and linears is exact") {
  auto coarse = unit_square_mesh(2);
  auto fine = refine_uniform(refine_uniform(coarse));

  FeFunction c(coarse, Vector::Constant(coarse->num_vertices(), 4.2));
  auto cp = prolongate(c, fine);
  for (int v = 0; v < fine->num_vertices(); ++v) {
    CHECK(cp.coefficients[v] == doctest::Approx(4.2).epsilon(1e-15));
  }

  Vector xs(coarse->num_vertices());
  for (int v = 0; v < coarse->num_vertices(); ++v) xs[v] = coarse->vertices[v][0];
  auto xp = prolongate(FeFunction(coarse, xs), fine);
  for (int v = 0; v < fine->num_vertices(); ++v) {
    CHECK(xp.coefficients[v] == doctest::Approx(fine->vertices[v][0]).epsilon(1e-15));
  }
}

TEST_CASE("prolongation preserves point values of random functions") {
  auto coarse = unit_square_mesh(3);
  auto fine = refine_uniform(coarse);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  Vector c(coarse->num_vertices());
  for (int v = 0; v < coarse->num_vertices(); ++v) c[v] = val(rng);
  FeFunction u(coarse, c);
  auto up = prolongate(u, fine);

  std::uniform_real_distribution<double> pt(0.01, 0.99);
  for (int k = 0; k < 50; ++k) {
    const double x = pt(rng), y = pt(rng);
    CHECK(up.evaluate(x, y) == doctest::Approx(u.evaluate(x, y)).epsilon(1e-13));
  }
}

TEST_CASE("prolongation rejects non-nested meshes") {
  auto a = unit_square_mesh(2);
  auto b = unit_square_mesh(4);  // same vertices but not a refinement of a
  FeFunction u(a, Vector::Zero(a->num_vertices()));
  CHECK_THROWS_AS(prolongate(u, b), std::invalid_argument);
}

TEST_CASE("energy errors of simple functions") {
  auto mesh = refine_uniform(unit_square_mesh(2));
  const int n = mesh->num_vertices();

  FeFunction zero(mesh, Vector::Zero(n));
  auto e0 = energy_errors(zero, zero);
  CHECK(e0.l2_sq == 0.0);
  CHECK(e0.h1_sq == 0.0);
  CHECK(e0.l2_boundary_sq == 0.0);

  FeFunction one(mesh, Vector::Ones(n));
  auto e1 = energy_errors(one, zero);
  CHECK(e1.l2_sq == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e1.h1_sq == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e1.l2_boundary_sq == doctest::Approx(4.0).epsilon(1e-13));

  Vector xs(n);
  for (int v = 0; v < n; ++v) xs[v] = mesh->vertices[v][0];
  auto ex = energy_errors(FeFunction(mesh, xs), zero);
  CHECK(ex.l2_sq == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(ex.h1_sq == doctest::Approx(1.0 / 3.0 + 1.0).epsilon(1e-13));
  // bottom 1/3 + right 1 + top 1/3 + left 0
  CHECK(ex.l2_boundary_sq == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("energy errors are symmetric in the argument order") {
  auto mesh = unit_square_mesh(3);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  Vector a(mesh->num_vertices()), b(mesh->num_vertices());
  for (int v = 0; v < mesh->num_vertices(); ++v) {
    a[v] = val(rng);
    b[v] = val(rng);
  }
  auto e1 = energy_errors(FeFunction(mesh, a), FeFunction(mesh, b));
  auto e2 = energy_errors(FeFunction(mesh, b), FeFunction(mesh, a));
  CHECK(e1.l2_sq == doctest::Approx(e2.l2_sq).epsilon(1e-15));
  CHECK(e1.h1_sq == doctest::Approx(e2.h1_sq).epsilon(1e-15));
  CHECK(e1.l2_boundary_sq == doctest::Approx(e2.l2_boundary_sq).epsilon(1e-15));
}

TEST_CASE("L2 distance satisfies the triangle inequality") {
  auto mesh = unit_square_mesh(2);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector a(mesh->num_vertices()), b(mesh->num_vertices()), c(mesh->num_vertices());
    for (int v = 0; v < mesh->num_vertices(); ++v) {
      a[v] = val(rng);
      b[v] = val(rng);
      c[v] = val(rng);
    }
    FeFunction u(mesh, a), v(mesh, b), w(mesh, c);
    const double uw = std::sqrt(energy_errors(u, w).l2_sq);
    const double uv = std::sqrt(energy_errors(u, v).l2_sq);
    const double vw = std::sqrt(energy_errors(v, w).l2_sq);
    CHECK(uw <= uv + vw + 1e-12);
  }
}

TEST_CASE("prolongation preserves the L2 norm exactly") {
  auto coarse = unit_square_mesh(2);
  auto fine = refine_uniform(refine_uniform(coarse));
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  Vector c(coarse->num_vertices());
  for (int v = 0; v < coarse->num_vertices(); ++v) c[v] = val(rng);
  FeFunction u(coarse, c);
  auto up = prolongate(u, fine);

  FeFunction zc(coarse, Vector::Zero(coarse->num_vertices()));
  FeFunction zf(fine, Vector::Zero(fine->num_vertices()));
  auto ec = energy_errors(u, zc);
  auto ef = energy_errors(up, zf);
  CHECK(ef.l2_sq == doctest::Approx(ec.l2_sq).epsilon(1e-12));
  CHECK(ef.h1_sq == doctest::Approx(ec.h1_sq).epsilon(1e-12));
}

TEST_CASE("mesh mismatch rejected") {
  auto a = unit_square_mesh(2);
  auto b = unit_square_mesh(2);
  FeFunction u(a, Vector::Zero(a->num_vertices()));
  FeFunction v(b, Vector::Zero(b->num_vertices()));
  CHECK_THROWS_AS(energy_errors(u, v), std::invalid_argument);
}

namespace {

std::vector<ConvergenceRecord> synthetic_records(double rate, double c) {
  std::vector<ConvergenceRecord> records;
  for (int j = 0; j < 5; ++j) {
    ConvergenceRecord r;
    r.level = j;
    r.num_elements = 8 << (2 * j);
    const double e = c * std::pow(static_cast<double>(r.num_elements), rate);
    r.err_h1_sq = e;
    r.err_l2_sq = e;
    r.err_l2_boundary_sq = e;
    records.push_back(r);
  }
  return records;
}

}  // namespace

TEST_CASE("fit_rate recovers exact log-linear slopes") {
  CHECK(fit_rate(synthetic_records(-1.0, 3.0), ErrorField::H1Sq) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fit_rate(synthetic_records(-2.0, 0.7), ErrorField::L2Sq) ==
        doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit_rate(synthetic_records(-1.5, 5.0), ErrorField::L2BoundarySq) ==
        doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("fit_rate rejects short or degenerate inputs") {
  auto records = synthetic_records(-1.0, 1.0);
  records.resize(2);
  CHECK_THROWS_AS(fit_rate(records, ErrorField::H1Sq), std::invalid_argument);

  auto zeros = synthetic_records(-1.0, 1.0);
  for (auto& r : zeros) r.err_l2_sq = 0.0;
  CHECK_THROWS_AS(fit_rate(zeros, ErrorField::L2Sq), std::invalid_argument);
}
