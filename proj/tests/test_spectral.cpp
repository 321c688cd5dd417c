#include <gtest/gtest.h>

#include <cmath>

#include "macstokes/spectral.hpp"
#include "test_support.hpp"

using namespace macstokes;

namespace {
const BoundaryKind kAll[] = {BoundaryKind::DirichletAll, BoundaryKind::PeriodicXDirichletY, BoundaryKind::PeriodicAll};
}

TEST(Summary, CountsZeroUnitAndOtherEigenvalues) {
  const SpectralReport r = summarize_spectrum({1.0, 0.0, 0.5, 1.0 + 1e-12, 0.25, 1.0}, 6);
  EXPECT_EQ(r.n_zero, 1);
  EXPECT_EQ(r.n_unit, 3);
  EXPECT_EQ(r.n_nonunitary, 3);
  EXPECT_EQ(r.n_nonunitary_nonzero, 2);
  EXPECT_EQ(r.n_unit + r.n_nonunitary, 6);
  EXPECT_DOUBLE_EQ(r.lambda_min_nonzero, 0.25);
  EXPECT_DOUBLE_EQ(r.beta_est, 0.5);
  EXPECT_NEAR(r.lambda_max, 1.0, 1e-11);
  EXPECT_TRUE(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
  EXPECT_TRUE(r.count_plateau);
  ASSERT_EQ(r.counts_by_tol.size(), 3u);
}

TEST(Summary, DetectsToleranceSensitiveCounts) {
  const SpectralReport r = summarize_spectrum({0.0, 0.5, 1.0 + 1e-9, 1.0}, 4);
  EXPECT_FALSE(r.count_plateau);
  EXPECT_EQ(r.counts_by_tol[0].n_nonunitary, 2);
  EXPECT_EQ(r.counts_by_tol[2].n_nonunitary, 3);
}

TEST(Schur, IsSymmetricWithConstantNullSpace) {
  for (auto bc : kAll) {
    const GridSpec s(4, 5, bc);
    const DenseMatrix sc = schur_complement_dense(s, ProblemParams::unsteady(1, 1, 0.5));
    EXPECT_LE((sc - sc.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((sc * Vector::Ones(sc.cols())).norm(), 1e-12);
  }
}

TEST(Schur, PeriodicSteadySpectrumIsOneApartFromTheNullSpace) {
  const SpectralReport r = analyze_steady(GridSpec(6, 6, BoundaryKind::PeriodicAll));
  EXPECT_EQ(r.n_zero, 1);
  EXPECT_EQ(r.n_nonunitary_nonzero, 0);
  for (double l : r.eigenvalues) {
    if (std::abs(l) > 1e-10) EXPECT_NEAR(l, 1.0, 1e-9);
  }
}

TEST(Schur, DirichletSpectrumLiesInTheSteadyBounds) {
  for (int n : {4, 6}) {
    const SpectralReport r = analyze_steady(GridSpec(n, n, BoundaryKind::DirichletAll));
    EXPECT_EQ(r.n_zero, 1);
    EXPECT_LE(r.lambda_max, 1.0 + 1e-9);
    EXPECT_GT(r.beta_est, 0.0);
    EXPECT_LE(r.n_nonunitary_nonzero, 4 * (n - 1));
    EXPECT_LE(r.max_abs_imag, 1e-10);
    EXPECT_EQ(r.dof_total, dof_counts(GridSpec(n, n, BoundaryKind::DirichletAll)).total);
  }
}

TEST(Schur, SizeCapIsEnforced) {
  EXPECT_THROW(schur_complement_dense(GridSpec(65, 64, BoundaryKind::DirichletAll), ProblemParams::steady_stokes()),
               std::invalid_argument);
}

TEST(Commutator, RankFollowsTheWallFaceCount) {
  for (int n : {2, 3, 4, 8}) {
    const CommutatorReport d = verify_commutator_rank(GridSpec(n, n, BoundaryKind::DirichletAll));
    EXPECT_EQ(d.rank, 4 * n - 5) << "n=" << n;
    EXPECT_EQ(d.stated_rank, 4 * (n - 1));
    EXPECT_LE(d.formula_rel_diff, 1e-12);
    const CommutatorReport x = verify_commutator_rank(GridSpec(n, n, BoundaryKind::PeriodicXDirichletY));
    EXPECT_EQ(x.rank, 2 * (n - 1));
    EXPECT_LE(x.formula_rel_diff, 1e-12);
    const CommutatorReport p = verify_commutator_rank(GridSpec(n, n, BoundaryKind::PeriodicAll));
    EXPECT_EQ(p.rank, 0);
    EXPECT_LE(p.max_abs_entry, 1e-12);
  }
}

TEST(Unsteady, BoundsAndSigmaRoute) {
  const std::vector<double> eps2 = {1e-2, 1.0, 1e2};
  const auto reports = verify_unsteady_bounds(GridSpec(4, 4, BoundaryKind::DirichletAll), eps2);
  ASSERT_EQ(reports.size(), 3u);
  double prev = 2.0;
  for (const auto& r : reports) {
    EXPECT_TRUE(r.within_bounds);
    EXPECT_GE(r.sigma_route_max_diff, 0.0);
    EXPECT_LE(r.sigma_route_max_diff, 1e-8);
    EXPECT_LE(r.spectrum.lambda_min_nonzero, prev + 1e-12);
    prev = r.spectrum.lambda_min_nonzero;
  }
  for (const auto& r : verify_unsteady_bounds(GridSpec(4, 4, BoundaryKind::PeriodicAll), eps2)) {
    for (double l : r.spectrum.eigenvalues) {
      if (std::abs(l) > r.spectrum.zero_tol) EXPECT_NEAR(l, 1.0, 1e-9);
    }
  }
}

TEST(Structure, BlockFormsOfThePreconditionedSystems) {
  for (auto bc : kAll) {
    const GridSpec s(4, 4, bc);
    const ProblemParams pp = ProblemParams::unsteady(1, 1, 0.5);
    const StructureReport p1 = verify_preconditioned_structure(s, pp, PrecondKind::P1);
    EXPECT_LE(p1.block21_max, 1e-10);
    EXPECT_LE(p1.projector_divergence, 1e-12);
    const StructureReport p2 = verify_preconditioned_structure(s, pp, PrecondKind::P2);
    EXPECT_LE(p2.block21_max, 1e-10);
    const StructureReport ex = verify_preconditioned_structure(s, pp, PrecondKind::P1Exact);
    EXPECT_LE(ex.nilpotency_residual, 1e-8);
    EXPECT_LE(ex.max_eig_dist_from_one, 1e-6);
  }
}

TEST(Structure, InviscidScaledSystemHasUnitSpectrum) {
  for (auto bc : kAll) {
    const GridSpec s(4, 4, bc);
    const StructureReport p1 = verify_preconditioned_structure(s, ProblemParams::scaled(0.0), PrecondKind::P1);
    EXPECT_LE(p1.max_eig_dist_from_one, 1e-8);
    const StructureReport p2 = verify_preconditioned_structure(s, ProblemParams::scaled(0.0), PrecondKind::P2);
    EXPECT_LE(p2.nilpotency_residual, 1e-10);
  }
}

TEST(Structure, P1EigenvaluesAreOneOrThoseOfTheApproximateSchurProduct) {
  const GridSpec s(3, 3, BoundaryKind::DirichletAll);
  const ProblemParams pp = ProblemParams::unsteady(1, 1, 0.5);
  const auto ev = preconditioned_spectrum(s, pp, PrecondKind::P1);
  const auto schur = dense_eigenvalues(preconditioned_schur_dense(s, pp));
  for (auto z : ev) {
    double best = std::abs(z - 1.0);
    for (auto w : schur) best = std::min(best, std::abs(z - w));
    EXPECT_LE(best, 1e-8);
  }
}

TEST(Multiset, DistanceUnderPermutation) {
  using C = std::complex<double>;
  EXPECT_EQ(multiset_distance({C(1, 0), C(2, 1), C(2, -1)}, {C(2, -1), C(1, 0), C(2, 1)}), 0.0);
  EXPECT_NEAR(multiset_distance({C(1, 0), C(3, 0)}, {C(1, 0), C(3.5, 0)}), 0.5, 1e-15);
  EXPECT_TRUE(std::isinf(multiset_distance({C(1, 0)}, {})));
}
