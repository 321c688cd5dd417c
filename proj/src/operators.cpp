#include "macstokes/operators.hpp"

#include <stdexcept>
#include <vector>

namespace macstokes {

void ProblemParams::validate() const {
  if (!(mu >= 0.0)) throw std::invalid_argument("ProblemParams: mu must be non-negative");
  if (steady) {
    if (!(mu > 0.0)) throw std::invalid_argument("ProblemParams: steady problems need mu > 0");
    return;
  }
  if (!(dt > 0.0)) throw std::invalid_argument("ProblemParams: dt must be positive");
  if (!(rho >= 0.0)) throw std::invalid_argument("ProblemParams: rho must be non-negative");
  if (!(reaction() > 0.0) && !(mu > 0.0)) {
    throw std::invalid_argument("ProblemParams: rho/dt and mu cannot both vanish");
  }
}

namespace {

SparseMatrix from_triplets(Index rows, Index cols, const std::vector<Triplet>& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(0.0);
  return m;
}

}  // namespace

SparseMatrix assemble_gradient(const GridSpec& spec) {
  const auto layout = dof_counts(spec);
  const double inv_h = 1.0 / spec.h();
  const bool px = periodic_x(spec.bc());
  const bool py = periodic_y(spec.bc());
  std::vector<Triplet> t;
  t.reserve(2 * std::size_t(layout.n_velocity()));

  const auto su = field_shape(spec, Field::U);
  for (int ky = 0; ky < su.count_y; ++ky) {
    for (int kx = 0; kx < su.count_x; ++kx) {
      const int face = px ? kx : kx + 1;
      const int j = ky + 1;
      const Index row = linear_index(spec, Field::U, face, j);
      t.emplace_back(row, linear_index(spec, Field::P, face + 1, j), inv_h);
      t.emplace_back(row, linear_index(spec, Field::P, face, j), -inv_h);
    }
  }
  const auto sv = field_shape(spec, Field::V);
  for (int ky = 0; ky < sv.count_y; ++ky) {
    for (int kx = 0; kx < sv.count_x; ++kx) {
      const int face = py ? ky : ky + 1;
      const int i = kx + 1;
      const Index row = layout.n_u + linear_index(spec, Field::V, i, face);
      t.emplace_back(row, linear_index(spec, Field::P, i, face + 1), inv_h);
      t.emplace_back(row, linear_index(spec, Field::P, i, face), -inv_h);
    }
  }
  return from_triplets(layout.n_velocity(), layout.n_p, t);
}

SparseMatrix assemble_divergence(const GridSpec& spec) {
  const auto layout = dof_counts(spec);
  const double inv_h = 1.0 / spec.h();
  const int nx = spec.nx();
  const int ny = spec.ny();
  const bool px = periodic_x(spec.bc());
  const bool py = periodic_y(spec.bc());
  std::vector<Triplet> t;
  t.reserve(4 * std::size_t(layout.n_p));

  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      const Index row = linear_index(spec, Field::P, i, j);
      // east face x = i h, west face x = (i-1) h; walls carry no unknown
      if (px || i < nx) t.emplace_back(row, linear_index(spec, Field::U, i, j), inv_h);
      if (px || i > 1) t.emplace_back(row, linear_index(spec, Field::U, i - 1, j), -inv_h);
      if (py || j < ny) t.emplace_back(row, layout.n_u + linear_index(spec, Field::V, i, j), inv_h);
      if (py || j > 1) t.emplace_back(row, layout.n_u + linear_index(spec, Field::V, i, j - 1), -inv_h);
    }
  }
  return from_triplets(layout.n_p, layout.n_velocity(), t);
}

SparseMatrix assemble_velocity_laplacian(const GridSpec& spec) {
  const auto layout = dof_counts(spec);
  const double inv_h2 = 1.0 / (spec.h() * spec.h());
  const int nx = spec.nx();
  const int ny = spec.ny();
  const bool px = periodic_x(spec.bc());
  const bool py = periodic_y(spec.bc());
  std::vector<Triplet> t;
  t.reserve(5 * std::size_t(layout.n_velocity()));

  // u: normal direction x (wall faces hold known data), tangential y (reflection)
  const auto su = field_shape(spec, Field::U);
  for (int ky = 0; ky < su.count_y; ++ky) {
    for (int kx = 0; kx < su.count_x; ++kx) {
      const int i = px ? kx : kx + 1;
      const int j = ky + 1;
      const Index row = linear_index(spec, Field::U, i, j);
      double diag = -4.0;
      for (int di : {-1, 1}) {
        const int ii = i + di;
        if (px || (ii >= 1 && ii <= nx - 1)) t.emplace_back(row, linear_index(spec, Field::U, ii, j), inv_h2);
      }
      for (int dj : {-1, 1}) {
        const int jj = j + dj;
        if (py || (jj >= 1 && jj <= ny)) {
          t.emplace_back(row, linear_index(spec, Field::U, i, jj), inv_h2);
        } else {
          diag -= 1.0;  // ghost = -interior
        }
      }
      t.emplace_back(row, row, diag * inv_h2);
    }
  }

  // v: normal direction y, tangential x
  const auto sv = field_shape(spec, Field::V);
  for (int ky = 0; ky < sv.count_y; ++ky) {
    for (int kx = 0; kx < sv.count_x; ++kx) {
      const int i = kx + 1;
      const int j = py ? ky : ky + 1;
      const Index row = layout.n_u + linear_index(spec, Field::V, i, j);
      double diag = -4.0;
      for (int di : {-1, 1}) {
        const int ii = i + di;
        if (px || (ii >= 1 && ii <= nx)) {
          t.emplace_back(row, layout.n_u + linear_index(spec, Field::V, ii, j), inv_h2);
        } else {
          diag -= 1.0;
        }
      }
      for (int dj : {-1, 1}) {
        const int jj = j + dj;
        if (py || (jj >= 1 && jj <= ny - 1)) {
          t.emplace_back(row, layout.n_u + linear_index(spec, Field::V, i, jj), inv_h2);
        }
      }
      t.emplace_back(row, row, diag * inv_h2);
    }
  }
  return from_triplets(layout.n_velocity(), layout.n_velocity(), t);
}

SparseMatrix assemble_pressure_laplacian(const GridSpec& spec) {
  const auto layout = dof_counts(spec);
  const double inv_h2 = 1.0 / (spec.h() * spec.h());
  const int nx = spec.nx();
  const int ny = spec.ny();
  const bool px = periodic_x(spec.bc());
  const bool py = periodic_y(spec.bc());
  std::vector<Triplet> t;
  t.reserve(5 * std::size_t(layout.n_p));

  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      const Index row = linear_index(spec, Field::P, i, j);
      double diag = 0.0;
      auto couple = [&](int ii, int jj) {
        t.emplace_back(row, linear_index(spec, Field::P, ii, jj), inv_h2);
        diag -= 1.0;
      };
      if (px || i > 1) couple(i - 1, j);
      if (px || i < nx) couple(i + 1, j);
      if (py || j > 1) couple(i, j - 1);
      if (py || j < ny) couple(i, j + 1);
      t.emplace_back(row, row, diag * inv_h2);
    }
  }
  return from_triplets(layout.n_p, layout.n_p, t);
}

MomentumMatrix assemble_momentum(const GridSpec& spec, const ProblemParams& params) {
  params.validate();
  const SparseMatrix L = assemble_velocity_laplacian(spec);
  SparseMatrix identity(L.rows(), L.cols());
  identity.setIdentity();
  MomentumMatrix out;
  out.matrix = params.reaction() * identity - params.mu * L;
  out.matrix.prune(0.0);
  out.singular = params.reaction() == 0.0 && spec.bc() == BoundaryKind::PeriodicAll;
  return out;
}

StokesOperators build_operators(const GridSpec& spec, const ProblemParams& params) {
  params.validate();
  StokesOperators ops{spec, params, dof_counts(spec), {}, {}, {}, {}, {}, false};
  ops.L = assemble_velocity_laplacian(spec);
  ops.G = assemble_gradient(spec);
  ops.D = assemble_divergence(spec);
  ops.Lc = assemble_pressure_laplacian(spec);
  auto momentum = assemble_momentum(spec, params);
  ops.A = std::move(momentum.matrix);
  ops.momentum_singular = momentum.singular;
  return ops;
}

SaddleOperator::SaddleOperator(std::shared_ptr<const StokesOperators> ops) : ops_(std::move(ops)) {
  if (!ops_) throw std::invalid_argument("SaddleOperator: null operator set");
}

Vector SaddleOperator::apply(const Vector& x) const {
  const auto& o = *ops_;
  if (x.size() != o.layout.total) throw std::invalid_argument("SaddleOperator: dimension mismatch");
  const Index nv = o.layout.n_velocity();
  Vector y(o.layout.total);
  y.head(nv) = o.A * x.head(nv) + o.G * x.tail(o.layout.n_p);
  y.tail(o.layout.n_p) = -(o.D * x.head(nv));
  return y;
}

BlockVector SaddleOperator::apply(const BlockVector& x) const {
  return BlockVector(ops_->layout, apply(x.data()));
}

SparseMatrix SaddleOperator::to_sparse() const {
  const auto& o = *ops_;
  const Index nv = o.layout.n_velocity();
  std::vector<Triplet> t;
  t.reserve(std::size_t(o.A.nonZeros() + o.G.nonZeros() + o.D.nonZeros()));
  for (Index r = 0; r < o.A.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(o.A, r); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    for (SparseMatrix::InnerIterator it(o.G, r); it; ++it) t.emplace_back(it.row(), nv + it.col(), it.value());
  }
  for (Index r = 0; r < o.D.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(o.D, r); it; ++it) t.emplace_back(nv + it.row(), it.col(), -it.value());
  }
  SparseMatrix m(o.layout.total, o.layout.total);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

DenseMatrix SaddleOperator::to_dense() const { return DenseMatrix(to_sparse()); }

SaddleOperator assemble_saddle(const GridSpec& spec, const ProblemParams& params) {
  return SaddleOperator(std::make_shared<const StokesOperators>(build_operators(spec, params)));
}

SparseMatrix commutator_matrix(const GridSpec& spec, const ProblemParams& params) {
  const auto ops = build_operators(spec, params);
  SparseMatrix AplusGD = ops.A + SparseMatrix(ops.G * ops.D);
  SparseMatrix c = AplusGD * ops.G;
  c.prune(0.0);
  return c;
}

}  // namespace macstokes
