#include "macstokes/kronecker.hpp"

#include <stdexcept>
#include <vector>

namespace macstokes {

namespace {

SparseMatrix build(Index rows, Index cols, const std::vector<Triplet>& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(0.0);
  return m;
}

SparseMatrix tridiagonal(int size, double first, double interior, double last) {
  std::vector<Triplet> t;
  for (int k = 0; k < size; ++k) {
    double d = interior;
    if (k == 0) d = first;
    if (k == size - 1) d = last;
    t.emplace_back(k, k, d);
    if (k + 1 < size) {
      t.emplace_back(k, k + 1, -1.0);
      t.emplace_back(k + 1, k, -1.0);
    }
  }
  return build(size, size, t);
}

void append(std::vector<Triplet>& t, const SparseMatrix& m, Index row0, Index col0, double scale) {
  for (Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      t.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
    }
  }
}

/// The pieces of one coordinate direction that the 2-D operators need.
struct Direction {
  SparseMatrix diff;        // cells x faces
  SparseMatrix normal;      // Laplacian of the velocity component normal to the walls
  SparseMatrix tangential;  // Laplacian of the tangential component (size n)
  SparseMatrix cell;        // diff * diff^T
  SparseMatrix corners;     // wall selector (zero when periodic)
  int cells = 0;
  int faces = 0;
};

Direction direction(int n, bool periodic) {
  const auto b = build_1d_blocks(n, periodic ? BlockFamily::Periodic : BlockFamily::Dirichlet);
  Direction d;
  d.cells = n;
  d.diff = b.difference;
  if (periodic) {
    d.normal = b.periodic_laplacian;
    d.tangential = b.periodic_laplacian;
    d.cell = b.periodic_laplacian;
    d.corners = SparseMatrix(n, n);
    d.faces = n;
  } else {
    d.normal = b.dirichlet_laplacian;
    d.tangential = b.reflected_laplacian;
    d.cell = b.neumann_laplacian;
    d.corners = b.corner_selector;
    d.faces = n - 1;
  }
  return d;
}

}  // namespace

SparseMatrix sparse_identity(Index n) {
  SparseMatrix m(n, n);
  m.setIdentity();
  return m;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> t;
  t.reserve(std::size_t(a.nonZeros() * b.nonZeros()));
  for (Index ra = 0; ra < a.outerSize(); ++ra) {
    for (SparseMatrix::InnerIterator ia(a, ra); ia; ++ia) {
      for (Index rb = 0; rb < b.outerSize(); ++rb) {
        for (SparseMatrix::InnerIterator ib(b, rb); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(), ia.value() * ib.value());
        }
      }
    }
  }
  return build(a.rows() * b.rows(), a.cols() * b.cols(), t);
}

OneDBlocks build_1d_blocks(int n, BlockFamily family) {
  if (n < 2) throw std::invalid_argument("build_1d_blocks: n must be at least 2");
  OneDBlocks b;
  b.family = family;
  b.n = n;
  std::vector<Triplet> t;
  if (family == BlockFamily::Dirichlet) {
    b.dirichlet_laplacian = tridiagonal(n - 1, 2.0, 2.0, 2.0);
    b.reflected_laplacian = tridiagonal(n, 3.0, 2.0, 3.0);
    b.neumann_laplacian = tridiagonal(n, 1.0, 2.0, 1.0);
    t = {{0, 0, 1.0}, {n - 1, n - 1, 1.0}};
    b.corner_selector = build(n, n, t);
    t.clear();
    for (int k = 0; k < n - 1; ++k) {
      t.emplace_back(k, k, -1.0);
      t.emplace_back(k + 1, k, 1.0);
    }
    b.difference = build(n, n - 1, t);
  } else {
    for (int k = 0; k < n; ++k) {
      t.emplace_back(k, k, 2.0);
      t.emplace_back(k, (k + 1) % n, -1.0);
      t.emplace_back(k, (k + n - 1) % n, -1.0);
    }
    b.periodic_laplacian = build(n, n, t);
    t.clear();
    for (int k = 0; k < n; ++k) {
      t.emplace_back(k, k, 1.0);
      t.emplace_back(k, (k + 1) % n, -1.0);
    }
    b.difference = build(n, n, t);
  }
  return b;
}

namespace kronecker {

SparseMatrix gradient(const GridSpec& spec) {
  const auto x = direction(spec.nx(), periodic_x(spec.bc()));
  const auto y = direction(spec.ny(), periodic_y(spec.bc()));
  const SparseMatrix gu = kron(sparse_identity(y.cells), SparseMatrix(x.diff.transpose()));
  const SparseMatrix gv = kron(SparseMatrix(y.diff.transpose()), sparse_identity(x.cells));
  std::vector<Triplet> t;
  append(t, gu, 0, 0, 1.0 / spec.h());
  append(t, gv, gu.rows(), 0, 1.0 / spec.h());
  return build(gu.rows() + gv.rows(), gu.cols(), t);
}

SparseMatrix velocity_laplacian(const GridSpec& spec) {
  const auto x = direction(spec.nx(), periodic_x(spec.bc()));
  const auto y = direction(spec.ny(), periodic_y(spec.bc()));
  const SparseMatrix luu = kron(sparse_identity(y.cells), x.normal) + kron(y.tangential, sparse_identity(x.faces));
  const SparseMatrix lvv = kron(sparse_identity(y.faces), x.tangential) + kron(y.normal, sparse_identity(x.cells));
  const double s = -1.0 / (spec.h() * spec.h());
  std::vector<Triplet> t;
  append(t, luu, 0, 0, s);
  append(t, lvv, luu.rows(), luu.cols(), s);
  const Index n = luu.rows() + lvv.rows();
  return build(n, n, t);
}

SparseMatrix pressure_laplacian(const GridSpec& spec) {
  const auto x = direction(spec.nx(), periodic_x(spec.bc()));
  const auto y = direction(spec.ny(), periodic_y(spec.bc()));
  SparseMatrix lc = kron(sparse_identity(y.cells), x.cell) + kron(y.cell, sparse_identity(x.cells));
  lc *= -1.0 / (spec.h() * spec.h());
  lc.prune(0.0);
  return lc;
}

SparseMatrix steady_commutator(const GridSpec& spec) {
  const auto x = direction(spec.nx(), periodic_x(spec.bc()));
  const auto y = direction(spec.ny(), periodic_y(spec.bc()));
  const SparseMatrix cu = kron(y.corners, SparseMatrix(x.diff.transpose()));
  const SparseMatrix cv = kron(SparseMatrix(y.diff.transpose()), x.corners);
  const double h = spec.h();
  std::vector<Triplet> t;
  append(t, cu, 0, 0, 2.0 / (h * h * h));
  append(t, cv, cu.rows(), 0, 2.0 / (h * h * h));
  return build(cu.rows() + cv.rows(), cu.cols(), t);
}

}  // namespace kronecker

}  // namespace macstokes
