#ifndef DBC_LINALG_HPP
#define DBC_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <vector>

namespace dbc {

using Vector = Eigen::VectorXd;

/// Thrown when a linear solve misses its residual contract.
struct SolverFailure : std::runtime_error {
  double achieved_residual;
  SolverFailure(const std::string& what, double res)
      : std::runtime_error(what), achieved_residual(res) {}
};

struct Triplet {
  int row;
  int col;
  double value;
};

/// Accumulates element contributions; duplicate (row, col) pairs are summed
/// on compression.
class TripletBuffer {
public:
  void add(int row, int col, double value) { entries_.push_back({row, col, value}); }
  const std::vector<Triplet>& entries() const { return entries_; }
  void reserve(std::size_t n) { entries_.reserve(n); }

private:
  std::vector<Triplet> entries_;
};

/// Compressed-row sparse matrix. Immutable after assembly.
class SparseMatrix {
public:
  SparseMatrix() = default;
  explicit SparseMatrix(Eigen::SparseMatrix<double, Eigen::RowMajor> m)
      : m_(std::move(m)) {}

  int rows() const { return static_cast<int>(m_.rows()); }
  int cols() const { return static_cast<int>(m_.cols()); }
  int nonzeros() const { return static_cast<int>(m_.nonZeros()); }

  Vector multiply(const Vector& x) const { return m_ * x; }
  double coeff(int i, int j) const { return m_.coeff(i, j); }

  bool is_symmetric(double tol = 1e-14) const;

  /// Submatrix with the given (ordered) row and column index sets.
  SparseMatrix submatrix(const std::vector<int>& rows,
                         const std::vector<int>& cols) const;

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(m_); }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& eigen() const { return m_; }

private:
  Eigen::SparseMatrix<double, Eigen::RowMajor> m_;
};

/// Compress a triplet buffer into an n x m sparse matrix, summing duplicates.
/// Out-of-bounds indices throw std::out_of_range.
SparseMatrix assemble_from_triplets(const TripletBuffer& buf, int n, int m);

/// Solve A x = b for symmetric positive definite A. Relative residual
/// <= 1e-12, verified post-hoc with an independent matrix-vector product.
Vector solve_spd(const SparseMatrix& A, const Vector& b);

/// Solve A x = b for symmetric (possibly indefinite) nonsingular A.
/// Relative residual <= 1e-10, verified post-hoc.
Vector solve_symmetric_indefinite(const SparseMatrix& A, const Vector& b);

}  // namespace dbc

#endif
