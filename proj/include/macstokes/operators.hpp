#ifndef MACSTOKES_OPERATORS_HPP
#define MACSTOKES_OPERATORS_HPP

/// \file operators.hpp
/// \brief Stencil assembly of the MAC operators and the saddle-point matrix
///
///     M = [ A   G ]      A = (rho/dt) I - mu L
///         [ -D  0 ]
///
/// with D = -G^T and D G = Lc holding exactly for every boundary kind.

#include <memory>

#include "macstokes/grid.hpp"
#include "macstokes/types.hpp"

namespace macstokes {

/// Physical parameters of one backward-Euler step. A steady problem drops the
/// rho/dt reaction term entirely.
struct ProblemParams {
  double rho = 1.0;
  double mu = 1.0;
  double dt = 0.5;
  bool steady = false;

  static ProblemParams steady_stokes(double mu = 1.0) { return {0.0, mu, 1.0, true}; }
  static ProblemParams unsteady(double rho, double mu, double dt) { return {rho, mu, dt, false}; }
  /// System multiplied through by dt/rho: A = I - eps2 L.
  static ProblemParams scaled(double eps2) { return {1.0, eps2, 1.0, false}; }

  /// Coefficient of the identity in A.
  double reaction() const { return steady ? 0.0 : rho / dt; }
  /// Throws std::invalid_argument when the parameters do not define a system.
  void validate() const;

  bool operator==(const ProblemParams&) const = default;
};

SparseMatrix assemble_gradient(const GridSpec& spec);
SparseMatrix assemble_divergence(const GridSpec& spec);
/// Vector Laplacian L (negative semidefinite); Dirichlet walls enter through
/// ghost reflection, periodic directions through wraparound.
SparseMatrix assemble_velocity_laplacian(const GridSpec& spec);
/// Cell-centered Laplacian with the Neumann/periodic closure induced by the
/// velocity boundary conditions.
SparseMatrix assemble_pressure_laplacian(const GridSpec& spec);

struct MomentumMatrix {
  SparseMatrix matrix;
  /// Constant velocities are in the null space (steady, fully periodic).
  /// Such a matrix must not be factorized as SPD without regularization.
  bool singular = false;
};
MomentumMatrix assemble_momentum(const GridSpec& spec, const ProblemParams& params);

/// Assembled blocks of one saddle-point problem. Immutable once built.
struct StokesOperators {
  GridSpec spec;
  ProblemParams params;
  DofLayout layout;
  SparseMatrix L;
  SparseMatrix G;
  SparseMatrix D;
  SparseMatrix Lc;
  SparseMatrix A;
  bool momentum_singular = false;
};

StokesOperators build_operators(const GridSpec& spec, const ProblemParams& params);

/// Block operator [[A, G], [-D, 0]] acting on stacked (u, v, p) vectors.
class SaddleOperator {
 public:
  explicit SaddleOperator(std::shared_ptr<const StokesOperators> ops);

  const StokesOperators& ops() const { return *ops_; }
  std::shared_ptr<const StokesOperators> shared_ops() const { return ops_; }
  Index size() const { return ops_->layout.total; }

  Vector apply(const Vector& x) const;
  BlockVector apply(const BlockVector& x) const;

  SparseMatrix to_sparse() const;
  DenseMatrix to_dense() const;

 private:
  std::shared_ptr<const StokesOperators> ops_;
};

SaddleOperator assemble_saddle(const GridSpec& spec, const ProblemParams& params);

/// (A - G G^T) G = (A + G D) G: the mismatch between A G and G Lc.
SparseMatrix commutator_matrix(const GridSpec& spec, const ProblemParams& params);

}  // namespace macstokes

#endif  // MACSTOKES_OPERATORS_HPP
