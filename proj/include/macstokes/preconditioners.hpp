#ifndef MACSTOKES_PRECONDITIONERS_HPP
#define MACSTOKES_PRECONDITIONERS_HPP

/// \file preconditioners.hpp
/// \brief Projection-method based block preconditioners for the MAC Stokes
/// saddle-point system.
///
/// Every preconditioner is the product of block factors built from A^{-1},
/// (-Lc)^{-1} and an approximate Schur inverse
///
///     Sapprox^{-1} = (rho/dt) (-Lc)^{-1} + mu I     (mu I when steady)
///
/// of the exact Schur complement S = -D A^{-1} G. In factor form:
///
///   P1^{-1}  = [I, G Lc^{-1}; 0, Sapprox^{-1}] [I, 0; -D, -I] [A^{-1}, 0; 0, I]
///   P1e^{-1} = same with Sapprox^{-1} replaced by S^{-1}
///   P2^{-1}  = [I, 0; 0, -Sapprox^{-1}] [I, 0; D, I] [A^{-1}, 0; 0, I]
///   P3^{-1}  = [A^{-1}, 0; 0, I] [I, -G; 0, I] [I, 0; 0, -Sapprox^{-1}]
///   P4^{-1}  = [I, -G; 0, (rho/dt) I + mu (-Lc)^{-1} D L G] [I, 0; 0, (-Lc)^{-1}]
///              [I, 0; -D, -I] [A^{-1}, 0; 0, I]
///
/// Inverses of the singular Laplacian act on mean-zero vectors and return
/// mean-zero vectors.

#include <memory>
#include <optional>
#include <string_view>

#include "macstokes/linalg.hpp"
#include "macstokes/operators.hpp"

namespace macstokes {

enum class PrecondKind { None, P1, P1Exact, P2, P3, P4 };

std::string_view to_string(PrecondKind kind);
PrecondKind parse_precond_kind(std::string_view name);

/// Right preconditioning for the upper triangular P3, left otherwise.
PreconditionSide default_side(PrecondKind kind);

/// Largest pressure space for which the dense exact Schur complement is formed.
inline constexpr Index kExactSchurMaxPressureDofs = 4096;

/// Factorized operators shared by all preconditioners of one problem.
class PreconditionerContext {
 public:
  /// `with_exact_schur` forms S densely (n_p solves with A) and factorizes it.
  PreconditionerContext(std::shared_ptr<const StokesOperators> ops, bool with_exact_schur);

  const StokesOperators& ops() const { return *ops_; }
  std::shared_ptr<const StokesOperators> shared_ops() const { return ops_; }
  const SpdFactorization& momentum_factor() const { return a_fac_; }
  const SpdFactorization& poisson_factor() const { return lc_fac_; }
  bool has_exact_schur() const { return schur_solver_.has_value(); }

  /// A^{-1} b (pseudo-inverse when A has constant velocity modes).
  Vector solve_momentum(const Vector& b) const;
  /// (-Lc)^{-1} b on the mean-zero subspace.
  Vector solve_poisson(const Vector& b) const;
  /// Sapprox^{-1} s.
  Vector approx_schur_inverse(const Vector& s) const;
  /// S^{-1} s on the mean-zero subspace; throws when S was not formed.
  Vector exact_schur_inverse(const Vector& s) const;

 private:
  std::shared_ptr<const StokesOperators> ops_;
  SpdFactorization a_fac_;
  SpdFactorization lc_fac_;
  std::optional<DenseSpdSolver> schur_solver_;
};

/// Momentum-block factorization, with the constant velocity modes of the
/// steady periodic problem handled as null space.
SpdFactorization factorize_momentum(const StokesOperators& ops);
/// Regularized factorization of -Lc.
SpdFactorization factorize_poisson(const StokesOperators& ops);

/// S = -D A^{-1} G formed column by column.
DenseMatrix schur_complement(const StokesOperators& ops, const SpdFactorization& a_fac);

Vector apply_p1(const PreconditionerContext& ctx, const Vector& r);
Vector apply_p1_exact(const PreconditionerContext& ctx, const Vector& r);
Vector apply_p2(const PreconditionerContext& ctx, const Vector& r);
Vector apply_p3(const PreconditionerContext& ctx, const Vector& r);
Vector apply_p4(const PreconditionerContext& ctx, const Vector& r);

/// A tagged application rule over a shared context.
class Preconditioner {
 public:
  Preconditioner(PrecondKind kind, std::shared_ptr<const PreconditionerContext> ctx);

  PrecondKind kind() const { return kind_; }
  const PreconditionerContext& context() const { return *ctx_; }

  Vector apply(const Vector& r) const;
  BlockVector apply(const BlockVector& r) const;
  /// Empty for PrecondKind::None so that GMRES skips the application.
  LinearMap as_map() const;

 private:
  PrecondKind kind_;
  std::shared_ptr<const PreconditionerContext> ctx_;
};

Preconditioner make_preconditioner(std::shared_ptr<const StokesOperators> ops, PrecondKind kind);

}  // namespace macstokes

#endif  // MACSTOKES_PRECONDITIONERS_HPP
