#ifndef MACSTOKES_SPECTRAL_HPP
#define MACSTOKES_SPECTRAL_HPP

/// \file spectral.hpp
/// \brief Dense spectral studies of the pressure Schur complement and of the
/// preconditioned saddle-point operators.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "macstokes/operators.hpp"
#include "macstokes/preconditioners.hpp"

namespace macstokes {

/// Unit tolerances over which eigenvalue counts are tabulated.
inline constexpr double kCountTolerances[] = {1e-6, 1e-8, 1e-10};

struct ToleranceCount {
  double unit_tol = 0.0;
  int n_nonunitary = 0;
};

/// Summary of a real spectrum (Schur complement or its preconditioned form).
///
/// `n_nonunitary` counts every eigenvalue with |lambda - 1| > unit_tol *
/// max(1, |lambda|), the zero eigenvalue of the pressure null space included,
/// so that n_unit + n_nonunitary equals the eigenvalue count.
/// `n_nonunitary_nonzero` excludes the n_zero eigenvalues.
struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  double max_abs_imag = 0.0;
  Index dof_total = 0;
  double unit_tol = 1e-8;
  double zero_tol = 0.0;  // absolute, 1e-10 * lambda_max
  int n_zero = 0;
  int n_unit = 0;
  int n_nonunitary = 0;
  int n_nonunitary_nonzero = 0;
  std::vector<ToleranceCount> counts_by_tol;
  /// True when the count is identical for every tolerance in kCountTolerances.
  bool count_plateau = false;
  double lambda_min_nonzero = 0.0;
  double lambda_max = 0.0;
  double beta_est = 0.0;
};

/// Builds the report from a real spectrum.
SpectralReport summarize_spectrum(std::vector<double> eigenvalues, Index dof_total, double max_abs_imag = 0.0,
                                  double unit_tol = 1e-8);

/// S = -D A^{-1} G for the given problem; throws when n_p > kExactSchurMaxPressureDofs.
DenseMatrix schur_complement_dense(const GridSpec& spec, const ProblemParams& params);

/// Spectrum of S for the steady problem with mu = 1 (A = -L).
SpectralReport analyze_steady(const GridSpec& spec);

/// Sapprox^{-1} S formed by applying Sapprox^{-1} to the columns of S.
DenseMatrix preconditioned_schur_dense(const GridSpec& spec, const ProblemParams& params);

struct UnsteadyBoundReport {
  double eps2 = 0.0;
  SpectralReport spectrum;
  /// Steady beta_est^2 of the same grid.
  double steady_beta_sq = 0.0;
  /// Every nonzero eigenvalue in [steady_beta_sq * (1 - 1e-6), 1 + 1e-8].
  bool within_bounds = false;
  /// Largest distance between the spectrum of Sapprox^{-1} S and the values
  /// sigma (1 - sigma) from the generalized problem M x = sigma diag(A, -Sapprox) x.
  /// Negative when the check was not run (grids larger than 8 x 8).
  double sigma_route_max_diff = -1.0;
};

/// Unsteady spectra of the scaled system A = I - eps2 L for each eps2.
std::vector<UnsteadyBoundReport> verify_unsteady_bounds(const GridSpec& spec, std::span<const double> eps2_list);

struct CommutatorReport {
  int rank = 0;
  /// 4(n-1) for square DirichletAll grids, 2(nx-1) for PeriodicXDirichletY, 0 for PeriodicAll.
  int stated_rank = 0;
  /// max |(A - G G^T) G - closed form| / max |closed form| (absolute when the form is zero).
  double formula_rel_diff = 0.0;
  double max_abs_entry = 0.0;
};

/// Commutator (A - G G^T) G of the steady mu = 1 problem.
CommutatorReport verify_commutator_rank(const GridSpec& spec);

/// Dense P^{-1} M with columns P^{-1} M e_j from the streaming preconditioner.
DenseMatrix preconditioned_operator_dense(const GridSpec& spec, const ProblemParams& params, PrecondKind kind);

struct StructureReport {
  PrecondKind kind = PrecondKind::None;
  /// max |(2,1) block| of P^{-1} M.
  double block21_max = 0.0;
  /// max ||D (I - G Lc^{-1} D) w|| / ||w|| over random probes w.
  double projector_divergence = 0.0;
  /// Eigenvalues of P^{-1} M restricted to mean-zero pressures (the constant
  /// pressure mode, mapped to 0, is removed).
  std::vector<std::complex<double>> eigenvalues;
  double max_eig_dist_from_one = 0.0;
  /// max ||(P^{-1} M - I)^2 x|| / ||x|| over random probes with mean-zero pressure.
  double nilpotency_residual = 0.0;
};

StructureReport verify_preconditioned_structure(const GridSpec& spec, const ProblemParams& params, PrecondKind kind,
                                                std::uint64_t seed = 0, int probes = 20);

/// Eigenvalues of P^{-1} M on the mean-zero pressure subspace, computed in
/// extended precision from the dense block factors. Sorted by (real, imag).
std::vector<std::complex<double>> preconditioned_spectrum(const GridSpec& spec, const ProblemParams& params,
                                                          PrecondKind kind);

/// Largest distance between two equally sized eigenvalue multisets under the
/// best greedy pairing of sorted values.
double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b);

}  // namespace macstokes

#endif  // MACSTOKES_SPECTRAL_HPP
