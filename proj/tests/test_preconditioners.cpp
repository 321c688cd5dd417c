#include <gtest/gtest.h>

#include "macstokes/preconditioners.hpp"
#include "macstokes/spectral.hpp"
#include "test_support.hpp"

using namespace macstokes;

namespace {

const BoundaryKind kAll[] = {BoundaryKind::DirichletAll, BoundaryKind::PeriodicXDirichletY, BoundaryKind::PeriodicAll};

// Dense products of the block factors of each preconditioner inverse.
struct DenseFactors {
  DenseMatrix ainv, g, d, l, lcinv, sapprox_inv, sexact_inv;
  Index nv, np;
  double reaction, mu;

  explicit DenseFactors(const StokesOperators& o) {
    nv = o.layout.n_velocity();
    np = o.layout.n_p;
    g = oracle::gradient(o.spec);
    d = -g.transpose();
    l = oracle::velocity_laplacian(o.spec);
    reaction = o.params.reaction();
    mu = o.params.mu;
    const DenseMatrix a = reaction * DenseMatrix::Identity(nv, nv) - mu * l;
    ainv = o.momentum_singular ? DenseMatrix(oracle::constant_mode_pinv(a)) : DenseMatrix(a.inverse());
    if (o.momentum_singular) {
      // two constant modes, one per velocity component
      const Index nu = o.layout.n_u;
      ainv.setZero();
      ainv.topLeftCorner(nu, nu) = oracle::constant_mode_pinv(a.topLeftCorner(nu, nu));
      ainv.bottomRightCorner(nv - nu, nv - nu) = oracle::constant_mode_pinv(a.bottomRightCorner(nv - nu, nv - nu));
    }
    lcinv = oracle::constant_mode_pinv(-oracle::pressure_laplacian(o.spec));
    sapprox_inv = reaction * lcinv + mu * DenseMatrix::Identity(np, np);
    const DenseMatrix s = -d * ainv * g;
    sexact_inv = oracle::constant_mode_pinv(0.5 * (s + s.transpose()));
  }

  DenseMatrix block(const DenseMatrix& a11, const DenseMatrix& a12, const DenseMatrix& a21,
                    const DenseMatrix& a22) const {
    DenseMatrix m(nv + np, nv + np);
    m << a11, a12, a21, a22;
    return m;
  }
  DenseMatrix iv() const { return DenseMatrix::Identity(nv, nv); }
  DenseMatrix ip() const { return DenseMatrix::Identity(np, np); }
  DenseMatrix zvp() const { return DenseMatrix::Zero(nv, np); }
  DenseMatrix zpv() const { return DenseMatrix::Zero(np, nv); }

  DenseMatrix inverse(PrecondKind k) const {
    const DenseMatrix first = block(ainv, zvp(), zpv(), ip());
    const DenseMatrix proj = block(iv(), zvp(), -d, -ip());
    switch (k) {
      case PrecondKind::P1:
        return block(iv(), -g * lcinv, zpv(), sapprox_inv) * proj * first;
      case PrecondKind::P1Exact:
        return block(iv(), -g * lcinv, zpv(), sexact_inv) * proj * first;
      case PrecondKind::P2:
        return block(iv(), zvp(), zpv(), -sapprox_inv) * block(iv(), zvp(), d, ip()) * first;
      case PrecondKind::P3:
        return first * block(iv(), -g, zpv(), ip()) * block(iv(), zvp(), zpv(), -sapprox_inv);
      case PrecondKind::P4:
        return block(iv(), -g, zpv(), reaction * ip() + mu * lcinv * d * l * g) *
               block(iv(), zvp(), zpv(), lcinv) * proj * first;
      case PrecondKind::None:
        break;
    }
    return DenseMatrix::Identity(nv + np, nv + np);
  }
};

DenseMatrix streamed(const Preconditioner& pc, const DenseMatrix& probes) {
  DenseMatrix out(probes.rows(), probes.cols());
  for (Index j = 0; j < probes.cols(); ++j) out.col(j) = pc.apply(Vector(probes.col(j)));
  return out;
}

}  // namespace

TEST(Preconditioners, NamesRoundTrip) {
  for (auto k : {PrecondKind::None, PrecondKind::P1, PrecondKind::P1Exact, PrecondKind::P2, PrecondKind::P3,
                 PrecondKind::P4}) {
    EXPECT_EQ(parse_precond_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_precond_kind("p5"), std::invalid_argument);
  EXPECT_EQ(default_side(PrecondKind::P3), PreconditionSide::Right);
  EXPECT_EQ(default_side(PrecondKind::P2), PreconditionSide::Left);
  EXPECT_EQ(default_side(PrecondKind::P1), PreconditionSide::Left);
}

TEST(Preconditioners, StreamingApplicationMatchesDenseFactorProducts) {
  const std::vector<ProblemParams> params = {ProblemParams::unsteady(1.0, 1.0, 0.5), ProblemParams::steady_stokes(1.5),
                                             ProblemParams::unsteady(3.0, 0.2, 0.1)};
  for (auto bc : kAll) {
    for (int n : {2, 3, 4}) {
      for (const auto& pp : params) {
        const GridSpec s(n, n, bc, 0.5);
        auto ops = std::make_shared<const StokesOperators>(build_operators(s, pp));
        const DenseFactors f(*ops);
        DenseMatrix probes(ops->layout.total, 6);
        for (int j = 0; j < 6; ++j) probes.col(j) = oracle::random_saddle_vector(ops->layout, 10 + j);
        if (ops->momentum_singular) {
          for (int j = 0; j < 6; ++j) {
            auto c = probes.col(j);
            c.segment(0, ops->layout.n_u).array() -= c.segment(0, ops->layout.n_u).mean();
            c.segment(ops->layout.n_u, ops->layout.n_v).array() -= c.segment(ops->layout.n_u, ops->layout.n_v).mean();
          }
        }
        for (auto k : {PrecondKind::P1, PrecondKind::P1Exact, PrecondKind::P2, PrecondKind::P3, PrecondKind::P4}) {
          SCOPED_TRACE(std::string(to_string(bc)) + " n=" + std::to_string(n) + " " + std::string(to_string(k)) +
                       " rho=" + std::to_string(pp.rho));
          const DenseMatrix ref = f.inverse(k) * probes;
          const DenseMatrix got = streamed(make_preconditioner(ops, k), probes);
          EXPECT_LE((got - ref).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
        }
      }
    }
  }
}

TEST(Preconditioners, ApplicationsAreLinear) {
  for (auto bc : kAll) {
    const GridSpec s(4, 4, bc);
    auto ops = std::make_shared<const StokesOperators>(build_operators(s, ProblemParams::unsteady(1, 1, 0.5)));
    const Vector r = oracle::random_saddle_vector(ops->layout, 1), q = oracle::random_saddle_vector(ops->layout, 2);
    for (auto k : {PrecondKind::P1, PrecondKind::P1Exact, PrecondKind::P2, PrecondKind::P3, PrecondKind::P4}) {
      const Preconditioner pc = make_preconditioner(ops, k);
      const Vector lhs = pc.apply(Vector(2.5 * r - 0.75 * q));
      const Vector rhs = 2.5 * pc.apply(r) - 0.75 * pc.apply(q);
      EXPECT_LE((lhs - rhs).norm(), 1e-12 * rhs.norm());
      EXPECT_EQ(pc.apply(Vector(Vector::Zero(ops->layout.total))).norm(), 0.0);
      const BlockVector bv = pc.apply(BlockVector(ops->layout, r));
      EXPECT_LE((bv.data() - pc.apply(r)).norm(), 1e-15 * rhs.norm());
    }
    EXPECT_FALSE(make_preconditioner(ops, PrecondKind::None).as_map());
    EXPECT_TRUE(make_preconditioner(ops, PrecondKind::P1).as_map());
  }
}

TEST(Preconditioners, P4EqualsP1WhenOperatorsCommute) {
  const GridSpec s(6, 6, BoundaryKind::PeriodicAll);
  auto ops = std::make_shared<const StokesOperators>(build_operators(s, ProblemParams::unsteady(1, 1, 0.5)));
  const Vector r = oracle::random_saddle_vector(ops->layout, 3);
  const Vector a = make_preconditioner(ops, PrecondKind::P1).apply(r);
  const Vector b = make_preconditioner(ops, PrecondKind::P4).apply(r);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Preconditioners, P4DegeneratesToP1WithoutViscosity) {
  for (auto bc : kAll) {
    const GridSpec s(5, 5, bc);
    auto ops = std::make_shared<const StokesOperators>(build_operators(s, ProblemParams::scaled(0.0)));
    const Vector r = oracle::random_saddle_vector(ops->layout, 4);
    const Vector a = make_preconditioner(ops, PrecondKind::P1).apply(r);
    const Vector b = make_preconditioner(ops, PrecondKind::P4).apply(r);
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
  }
}

TEST(Preconditioners, ContextSolvesAndSchurInverses) {
  const GridSpec s(4, 4, BoundaryKind::DirichletAll);
  auto ops = std::make_shared<const StokesOperators>(build_operators(s, ProblemParams::unsteady(2, 0.5, 0.25)));
  const PreconditionerContext ctx(ops, true);
  ASSERT_TRUE(ctx.has_exact_schur());
  const Vector b = oracle::random_vector(ops->layout.n_velocity(), 5);
  EXPECT_LE((ops->A * ctx.solve_momentum(b) - b).norm(), 1e-12 * b.norm());
  Vector q = oracle::random_vector(ops->layout.n_p, 6);
  q.array() -= q.mean();
  const DenseMatrix s_dense = schur_complement(*ops, ctx.momentum_factor());
  EXPECT_LE((s_dense * ctx.exact_schur_inverse(q) - q).norm(), 1e-10 * q.norm());
  const Vector phi = ctx.solve_poisson(q);
  EXPECT_LE((ctx.approx_schur_inverse(q) - (8.0 * phi + 0.5 * q)).norm(), 1e-13 * q.norm());
  const PreconditionerContext cheap(ops, false);
  EXPECT_FALSE(cheap.has_exact_schur());
  EXPECT_THROW(cheap.exact_schur_inverse(q), std::logic_error);
  EXPECT_THROW(Preconditioner(PrecondKind::P1Exact, std::make_shared<const PreconditionerContext>(ops, false)),
               std::invalid_argument);
}

TEST(Preconditioners, ScaledAndUnscaledApproximationsGiveTheSameSpectrum) {
  // rho = 2, mu = 0.3, dt = 0.5 has eps^2 = mu dt / rho = 0.075
  for (auto bc : kAll) {
    const GridSpec s(3, 3, bc);
    const auto a = preconditioned_spectrum(s, ProblemParams::unsteady(2.0, 0.3, 0.5), PrecondKind::P1);
    const auto b = preconditioned_spectrum(s, ProblemParams::scaled(0.075), PrecondKind::P1);
    EXPECT_LE(multiset_distance(a, b), 1e-10);
  }
}
