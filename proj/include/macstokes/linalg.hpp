#ifndef MACSTOKES_LINALG_HPP
#define MACSTOKES_LINALG_HPP

/// \file linalg.hpp
/// \brief Direct SPD solves with constant null spaces, full GMRES and dense
/// eigenvalue kernels.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "macstokes/types.hpp"

namespace macstokes {

class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, Index pivot) : std::runtime_error(what), pivot_(pivot) {}
  /// Row/column (original ordering) of the offending pivot, -1 if unknown.
  Index pivot() const { return pivot_; }

 private:
  Index pivot_;
};

class SolveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A contiguous block of unknowns whose constant vector lies in the null space
/// of the matrix being factorized (e.g. the pressure, or one velocity
/// component of the fully periodic steady problem).
struct ConstantMode {
  Index begin = 0;
  Index end = 0;
};

/// Sparse LDL^T factorization of a symmetric positive (semi)definite matrix.
///
/// When constant modes are given the factorized matrix is made definite by a
/// rank-1 anchor on one diagonal entry per mode. Right-hand sides must then be
/// mean-zero on every mode and solutions are returned mean-zero, which gives
/// the same result as factorizing A + (1/n) e e^T.
class SpdFactorization {
 public:
  SpdFactorization() = default;

  Index size() const { return size_; }
  bool regularized() const { return !modes_.empty(); }
  const std::vector<ConstantMode>& modes() const { return modes_; }

  /// Throws SolveError when b is not mean-zero on a constant mode.
  Vector solve(const Vector& b) const;
  /// Projects b onto the range first, so it never rejects its input.
  Vector solve_projected(const Vector& b) const;

  /// Removes the mean of x on every constant mode.
  void project(Vector& x) const;

 private:
  friend SpdFactorization spd_factorize(const SparseMatrix&, std::span<const ConstantMode>);
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  std::vector<ConstantMode> modes_;
  Index size_ = 0;
};

SpdFactorization spd_factorize(const SparseMatrix& a, std::span<const ConstantMode> modes = {});
SpdFactorization spd_factorize(const SparseMatrix& a, bool regularize_nullspace);

/// x with mean(x) = 0 and (-Lc) x = b - mean(b); `fac` must be a regularized
/// factorization of -Lc.
Vector poisson_solve(const SpdFactorization& fac, const Vector& b);

/// Mean-zero projection of a whole vector.
void remove_mean(Eigen::Ref<Vector> x);

// ---------------------------------------------------------------------------
// GMRES

enum class PreconditionSide { Left, Right };

struct GmresConfig {
  double rel_tol = 1e-10;
  int max_iters = 500;
  PreconditionSide side = PreconditionSide::Left;
  bool record_residuals = true;

  void validate() const;
};

struct IterationReport {
  int iterations = 0;
  bool converged = false;
  /// ||r_k|| / ||r_0|| in the convention of the side: ||P^{-1}(b - Mx)|| for
  /// left, ||b - Mx|| for right. Entry 0 is 1.
  std::vector<double> residual_history;
  /// ||b - M x_k|| / ||b|| for every iterate (identical to the above for right).
  std::vector<double> true_residual_history;
  double final_relative_residual = 0.0;
  double final_true_relative_residual = 0.0;
  PreconditionSide side = PreconditionSide::Left;
};

using LinearMap = std::function<Vector(const Vector&)>;

struct GmresResult {
  Vector x;
  IterationReport report;
};

/// Full (unrestarted) GMRES with modified Gram-Schmidt Arnoldi from a zero
/// initial guess. `precond` applies P^{-1}; an empty function means none.
GmresResult gmres(const LinearMap& op, const LinearMap& precond, const Vector& b, const GmresConfig& cfg);

// ---------------------------------------------------------------------------
// Dense kernels

/// All eigenvalues of a general real matrix (Hessenberg reduction followed by
/// shifted QR). Throws std::runtime_error when the iteration does not converge.
std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& a);

/// Eigenvalues of a symmetric matrix in ascending order.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& a);

/// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const DenseMatrix& a, double rel_tol = 1e-8);

/// Dense LL^T of a symmetric positive semidefinite matrix whose null space is
/// the constant vector. Solves act on the mean-zero subspace.
class DenseSpdSolver {
 public:
  explicit DenseSpdSolver(const DenseMatrix& a);
  Vector solve_projected(const Vector& b) const;
  Index size() const { return size_; }

 private:
  Eigen::LLT<DenseMatrix> llt_;
  Index size_ = 0;
};

}  // namespace macstokes

#endif  // MACSTOKES_LINALG_HPP
