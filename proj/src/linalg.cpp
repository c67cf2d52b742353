#include "dbc/linalg.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <unordered_map>

namespace dbc {

namespace {

double relative_residual(const SparseMatrix& A, const Vector& x,
                         const Vector& b) {
  const double bnorm = b.norm();
  const double rnorm = (A.multiply(x) - b).norm();
  return bnorm > 0.0 ? rnorm / bnorm : rnorm;
}

}  // namespace

bool SparseMatrix::is_symmetric(double tol) const {
  if (m_.rows() != m_.cols()) return false;
  Eigen::SparseMatrix<double, Eigen::RowMajor> d = m_ - Eigen::SparseMatrix<double, Eigen::RowMajor>(m_.transpose());
  for (int k = 0; k < d.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(d, k); it; ++it) {
      if (std::abs(it.value()) > tol) return false;
    }
  }
  return true;
}

SparseMatrix SparseMatrix::submatrix(const std::vector<int>& rows,
                                     const std::vector<int>& cols) const {
  std::unordered_map<int, int> col_pos;
  col_pos.reserve(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = static_cast<int>(j);

  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m_, rows[i]); it; ++it) {
      auto pos = col_pos.find(static_cast<int>(it.col()));
      if (pos != col_pos.end()) {
        trips.emplace_back(static_cast<int>(i), pos->second, it.value());
      }
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> sub(
      static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  sub.setFromTriplets(trips.begin(), trips.end());
  return SparseMatrix(std::move(sub));
}

SparseMatrix assemble_from_triplets(const TripletBuffer& buf, int n, int m) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(buf.entries().size());
  for (const auto& t : buf.entries()) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= m) {
      throw std::out_of_range("assemble_from_triplets: index out of bounds");
    }
    trips.emplace_back(t.row, t.col, t.value);
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> mat(n, m);
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.makeCompressed();
  return SparseMatrix(std::move(mat));
}

Vector solve_spd(const SparseMatrix& A, const Vector& b) {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  Eigen::SparseMatrix<double> col_major(A.eigen());
  llt.compute(col_major);
  if (llt.info() != Eigen::Success) {
    throw SolverFailure("solve_spd: Cholesky factorization failed", -1.0);
  }
  Vector x = llt.solve(b);
  const double res = relative_residual(A, x, b);
  if (res > 1e-12) {
    throw SolverFailure("solve_spd: residual contract violated", res);
  }
  return x;
}

Vector solve_symmetric_indefinite(const SparseMatrix& A, const Vector& b) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  Eigen::SparseMatrix<double> col_major(A.eigen());
  lu.compute(col_major);
  if (lu.info() != Eigen::Success) {
    throw SolverFailure("solve_symmetric_indefinite: factorization failed", -1.0);
  }
  Vector x = lu.solve(b);
  const double res = relative_residual(A, x, b);
  if (res > 1e-10) {
    throw SolverFailure("solve_symmetric_indefinite: residual contract violated",
                        res);
  }
  return x;
}

}  // namespace dbc
