#include <gtest/gtest.h>

#include <set>

#include "macstokes/grid.hpp"

using namespace macstokes;

TEST(Grid, DofCountsOfTheSpectralStudyConfigurations) {
  EXPECT_EQ(dof_counts(GridSpec(16, 16, BoundaryKind::DirichletAll)).total, 736);
  EXPECT_EQ(dof_counts(GridSpec(32, 32, BoundaryKind::DirichletAll)).total, 3008);
  EXPECT_EQ(dof_counts(GridSpec(16, 32, BoundaryKind::PeriodicXDirichletY)).total, 1520);
  EXPECT_EQ(dof_counts(GridSpec(32, 64, BoundaryKind::PeriodicXDirichletY)).total, 6112);
}

TEST(Grid, FieldSizesPerBoundaryKind) {
  const DofLayout d = dof_counts(GridSpec(5, 3, BoundaryKind::DirichletAll));
  EXPECT_EQ(d.n_u, 4 * 3);
  EXPECT_EQ(d.n_v, 5 * 2);
  EXPECT_EQ(d.n_p, 15);
  const DofLayout x = dof_counts(GridSpec(5, 3, BoundaryKind::PeriodicXDirichletY));
  EXPECT_EQ(x.n_u, 15);
  EXPECT_EQ(x.n_v, 10);
  const DofLayout p = dof_counts(GridSpec(5, 3, BoundaryKind::PeriodicAll));
  EXPECT_EQ(p.n_u, 15);
  EXPECT_EQ(p.n_v, 15);
  EXPECT_EQ(p.total, 45);
  EXPECT_EQ(p.offset(Field::P), 30);
  EXPECT_EQ(p.size(Field::V), 15);
}

TEST(Grid, RejectsBadGeometry) {
  EXPECT_THROW(GridSpec(1, 4, BoundaryKind::DirichletAll), std::invalid_argument);
  EXPECT_THROW(GridSpec(4, 4, BoundaryKind::DirichletAll, 0.0), std::invalid_argument);
  EXPECT_THROW(GridSpec(4, 4, 1.0, 0.5, BoundaryKind::DirichletAll), std::invalid_argument);
}

TEST(Grid, ParsesBoundaryNames) {
  EXPECT_EQ(parse_boundary_kind("dirichlet"), BoundaryKind::DirichletAll);
  EXPECT_EQ(parse_boundary_kind("xperiodic"), BoundaryKind::PeriodicXDirichletY);
  EXPECT_EQ(parse_boundary_kind("periodic"), BoundaryKind::PeriodicAll);
  EXPECT_THROW(parse_boundary_kind("neumann"), std::invalid_argument);
  for (auto bc : {BoundaryKind::DirichletAll, BoundaryKind::PeriodicXDirichletY, BoundaryKind::PeriodicAll}) {
    EXPECT_EQ(parse_boundary_kind(to_string(bc)), bc);
  }
}

TEST(Grid, LinearIndexIsLexicographicAndBijective) {
  for (auto bc : {BoundaryKind::DirichletAll, BoundaryKind::PeriodicXDirichletY, BoundaryKind::PeriodicAll}) {
    const GridSpec s(4, 3, bc);
    for (Field f : {Field::U, Field::V, Field::P}) {
      const FieldShape sh = field_shape(s, f);
      const int i0 = (f == Field::U && periodic_x(bc)) ? 0 : 1;
      const int j0 = (f == Field::V && periodic_y(bc)) ? 0 : 1;
      std::set<Index> seen;
      for (int j = j0; j < j0 + sh.count_y; ++j) {
        for (int i = i0; i < i0 + sh.count_x; ++i) {
          const Index k = linear_index(s, f, i, j);
          EXPECT_EQ(k, Index(i - i0) + Index(sh.count_x) * (j - j0));
          seen.insert(k);
        }
      }
      EXPECT_EQ(Index(seen.size()), dof_counts(s).size(f));
    }
  }
}

TEST(Grid, PeriodicIndicesWrapAndWallsThrow) {
  const GridSpec per(4, 4, BoundaryKind::PeriodicAll);
  EXPECT_EQ(linear_index(per, Field::U, 4, 2), linear_index(per, Field::U, 0, 2));
  EXPECT_EQ(linear_index(per, Field::P, 5, 1), linear_index(per, Field::P, 1, 1));
  EXPECT_EQ(linear_index(per, Field::V, 2, -1), linear_index(per, Field::V, 2, 3));
  const GridSpec dir(4, 4, BoundaryKind::DirichletAll);
  EXPECT_THROW(linear_index(dir, Field::U, 0, 1), IndexError);
  EXPECT_THROW(linear_index(dir, Field::U, 4, 1), IndexError);
  EXPECT_THROW(linear_index(dir, Field::V, 1, 4), IndexError);
  EXPECT_THROW(linear_index(dir, Field::P, 0, 1), IndexError);
}

TEST(Grid, DofPositionsFollowTheStaggering) {
  const GridSpec s(4, 4, BoundaryKind::DirichletAll, 0.25);
  const Point u = dof_position(s, Field::U, linear_index(s, Field::U, 2, 3));
  EXPECT_DOUBLE_EQ(u.x, 0.5);
  EXPECT_DOUBLE_EQ(u.y, 0.625);
  const Point v = dof_position(s, Field::V, linear_index(s, Field::V, 2, 3));
  EXPECT_DOUBLE_EQ(v.x, 0.375);
  EXPECT_DOUBLE_EQ(v.y, 0.75);
  const Point p = dof_position(s, Field::P, linear_index(s, Field::P, 1, 1));
  EXPECT_DOUBLE_EQ(p.x, 0.125);
  EXPECT_DOUBLE_EQ(p.y, 0.125);
  const GridSpec per(4, 4, BoundaryKind::PeriodicAll, 0.25);
  EXPECT_DOUBLE_EQ(dof_position(per, Field::U, 0).x, 0.0);
}

TEST(Grid, BlockVectorViewsMatchTheLayout) {
  const DofLayout l = dof_counts(GridSpec(3, 3, BoundaryKind::DirichletAll));
  BlockVector b(l);
  EXPECT_EQ(b.data().size(), l.total);
  b.v().setConstant(2.0);
  EXPECT_EQ(b.data()[l.n_u], 2.0);
  EXPECT_EQ(b.u().sum(), 0.0);
  EXPECT_THROW(BlockVector(l, Vector::Zero(l.total + 1)), std::invalid_argument);
}
