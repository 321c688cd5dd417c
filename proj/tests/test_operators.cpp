#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "macstokes/kronecker.hpp"
#include "macstokes/operators.hpp"
#include "test_support.hpp"

using namespace macstokes;

namespace {

const BoundaryKind kAll[] = {BoundaryKind::DirichletAll, BoundaryKind::PeriodicXDirichletY, BoundaryKind::PeriodicAll};

std::vector<GridSpec> small_grids() {
  std::vector<GridSpec> out;
  for (auto bc : kAll) {
    for (int nx : {2, 3, 5}) {
      for (int ny : {2, 4}) out.emplace_back(nx, ny, bc, 0.5);
    }
  }
  return out;
}

}  // namespace

TEST(Operators, StencilsMatchDirectlyIndexedOracles) {
  for (const auto& s : small_grids()) {
    SCOPED_TRACE(std::string(to_string(s.bc())) + " " + std::to_string(s.nx()) + "x" + std::to_string(s.ny()));
    EXPECT_EQ(oracle::rel_diff(DenseMatrix(assemble_gradient(s)), oracle::gradient(s)), 0.0);
    EXPECT_EQ(oracle::rel_diff(DenseMatrix(assemble_velocity_laplacian(s)), oracle::velocity_laplacian(s)), 0.0);
    EXPECT_EQ(oracle::rel_diff(DenseMatrix(assemble_pressure_laplacian(s)), oracle::pressure_laplacian(s)), 0.0);
  }
}

TEST(Operators, DivergenceIsMinusGradientTransposeAndComposesToLc) {
  for (const auto& s : small_grids()) {
    const StokesOperators ops = build_operators(s, ProblemParams::steady_stokes());
    const DenseMatrix g(ops.G), d(ops.D), lc(ops.Lc);
    EXPECT_EQ((d + g.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE(oracle::rel_diff(d * g, lc), 1e-14);
  }
}

TEST(Operators, KroneckerAssemblyAgreesWithStencils) {
  for (const auto& s : small_grids()) {
    EXPECT_LE(oracle::rel_diff(DenseMatrix(kronecker::gradient(s)), DenseMatrix(assemble_gradient(s))), 1e-14);
    EXPECT_LE(oracle::rel_diff(DenseMatrix(kronecker::velocity_laplacian(s)),
                               DenseMatrix(assemble_velocity_laplacian(s))),
              1e-14);
    EXPECT_LE(oracle::rel_diff(DenseMatrix(kronecker::pressure_laplacian(s)),
                               DenseMatrix(assemble_pressure_laplacian(s))),
              1e-14);
  }
}

TEST(Operators, GradientDifferencesPeriodicModesExactly) {
  const int n = 8;
  const double h = 1.0 / n;
  const GridSpec s(n, n, BoundaryKind::PeriodicAll, h);
  const DofLayout l = dof_counts(s);
  const double k = 2.0 * std::numbers::pi;
  Vector p(l.n_p);
  for (Index c = 0; c < l.n_p; ++c) {
    const Point q = dof_position(s, Field::P, c);
    p[c] = std::sin(k * q.x) + std::cos(2 * k * q.y);
  }
  const Vector gp = assemble_gradient(s) * p;
  for (Index f = 0; f < l.n_u; ++f) {
    const Point q = dof_position(s, Field::U, f);
    EXPECT_NEAR(gp[f], 2.0 * std::sin(k * h / 2) / h * std::cos(k * q.x), 1e-12);
  }
  for (Index f = 0; f < l.n_v; ++f) {
    const Point q = dof_position(s, Field::V, f);
    EXPECT_NEAR(gp[l.n_u + f], -2.0 * std::sin(k * h) / h * std::sin(2 * k * q.y), 1e-12);
  }
}

TEST(Operators, LaplaciansAreSymmetricNegativeSemidefinite) {
  for (const auto& s : small_grids()) {
    const DenseMatrix l(assemble_velocity_laplacian(s)), lc(assemble_pressure_laplacian(s));
    EXPECT_EQ((l - l.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((lc - lc.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE(Eigen::SelfAdjointEigenSolver<DenseMatrix>(l).eigenvalues().maxCoeff(), 1e-12);
    EXPECT_LE((lc * Vector::Ones(lc.cols())).norm(), 1e-12);
    const double top = Eigen::SelfAdjointEigenSolver<DenseMatrix>(l).eigenvalues().maxCoeff();
    if (s.bc() == BoundaryKind::PeriodicAll) EXPECT_NEAR(top, 0.0, 1e-12);
    else EXPECT_LT(top, -1e-6);
  }
}

TEST(Operators, MomentumMatrixAndSingularity) {
  const GridSpec per(4, 4, BoundaryKind::PeriodicAll);
  EXPECT_TRUE(assemble_momentum(per, ProblemParams::steady_stokes()).singular);
  EXPECT_FALSE(assemble_momentum(per, ProblemParams::unsteady(1, 1, 0.5)).singular);
  EXPECT_FALSE(assemble_momentum(GridSpec(4, 4, BoundaryKind::DirichletAll), ProblemParams::steady_stokes()).singular);
  const GridSpec s(3, 4, BoundaryKind::PeriodicXDirichletY);
  const ProblemParams pp = ProblemParams::unsteady(2.0, 0.3, 0.25);
  const DenseMatrix a(assemble_momentum(s, pp).matrix);
  const DenseMatrix expect = 8.0 * DenseMatrix::Identity(a.rows(), a.cols()) - 0.3 * oracle::velocity_laplacian(s);
  EXPECT_LE(oracle::rel_diff(a, expect), 1e-15);
}

TEST(Operators, ProblemParamsValidation) {
  EXPECT_NO_THROW(ProblemParams::unsteady(1, 0, 1).validate());
  EXPECT_THROW(ProblemParams::steady_stokes(0.0).validate(), std::invalid_argument);
  EXPECT_THROW(ProblemParams::unsteady(1, -1, 1).validate(), std::invalid_argument);
  EXPECT_THROW(ProblemParams::unsteady(1, 1, 0).validate(), std::invalid_argument);
  EXPECT_THROW(ProblemParams::unsteady(0, 0, 1).validate(), std::invalid_argument);
  EXPECT_EQ(ProblemParams::scaled(0.1).reaction(), 1.0);
  EXPECT_EQ(ProblemParams::steady_stokes().reaction(), 0.0);
}

TEST(Operators, SaddleOperatorApplyMatchesAssembledBlocks) {
  for (auto bc : kAll) {
    const GridSpec s(4, 3, bc);
    const SaddleOperator m = assemble_saddle(s, ProblemParams::unsteady(1, 1, 0.5));
    const auto& o = m.ops();
    const Vector x = oracle::random_vector(m.size(), 7);
    const Vector y = m.apply(x);
    const Index nv = o.layout.n_velocity();
    const Vector yu = o.A * x.head(nv) + o.G * x.tail(o.layout.n_p);
    const Vector yp = -(o.D * x.head(nv));
    EXPECT_LE((y.head(nv) - yu).norm(), 1e-13);
    EXPECT_LE((y.tail(o.layout.n_p) - yp).norm(), 1e-13);
    EXPECT_LE((m.to_sparse() * x - y).norm(), 1e-13);
    EXPECT_LE((m.to_dense() * x - y).norm(), 1e-13);
    EXPECT_THROW(m.apply(Vector(Vector::Zero(3))), std::invalid_argument);
  }
}

TEST(Operators, CommutatorMatchesClosedFormAndVanishesWhenPeriodic) {
  for (auto bc : kAll) {
    for (int n : {2, 3, 4, 6}) {
      const GridSpec s(n, n, bc, 0.5);
      const DenseMatrix c(commutator_matrix(s, ProblemParams::steady_stokes()));
      const DenseMatrix closed(kronecker::steady_commutator(s));
      EXPECT_LE((c - closed).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, closed.cwiseAbs().maxCoeff()));
      if (bc == BoundaryKind::PeriodicAll) EXPECT_LE(c.cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Kronecker, OneDimensionalIdentities) {
  for (int n = 2; n <= 8; ++n) {
    const OneDBlocks d = build_1d_blocks(n, BlockFamily::Dirichlet);
    const DenseMatrix b(d.difference), td(d.dirichlet_laplacian), tn(d.neumann_laplacian), te(d.reflected_laplacian),
        e0(d.corner_selector);
    EXPECT_EQ(b.rows(), n);
    EXPECT_EQ(b.cols(), n - 1);
    EXPECT_EQ((b * b.transpose() - tn).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((b.transpose() * b - td).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((te - tn - 2.0 * e0).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((b * td * b.transpose() - tn * tn).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(te(0, 0), 3.0);
    EXPECT_EQ(tn(n - 1, n - 1), 1.0);
    const OneDBlocks p = build_1d_blocks(n, BlockFamily::Periodic);
    const DenseMatrix bp(p.difference), tp(p.periodic_laplacian);
    EXPECT_EQ((bp * bp.transpose() - tp).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((tp * Vector::Ones(n)).norm(), 0.0);
  }
}

TEST(Kronecker, KronProductMatchesDenseDefinition) {
  DenseMatrix a(2, 2), b(2, 3);
  a << 1, 2, 0, -1;
  b << 0, 1, 2, 3, 0, -2;
  const DenseMatrix k(kron(SparseMatrix(a.sparseView()), SparseMatrix(b.sparseView())));
  ASSERT_EQ(k.rows(), 4);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ((k.block(2 * i, 3 * j, 2, 3) - a(i, j) * b).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(DenseMatrix(sparse_identity(3)), DenseMatrix::Identity(3, 3));
}
