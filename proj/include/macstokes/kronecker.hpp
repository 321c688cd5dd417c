#ifndef MACSTOKES_KRONECKER_HPP
#define MACSTOKES_KRONECKER_HPP

/// \file kronecker.hpp
/// \brief One-dimensional difference blocks and the Kronecker-product form
/// of the MAC operators. This is an assembly path independent of the stencil
/// walk in operators.cpp; the two are compared entrywise in the tests.

#include "macstokes/grid.hpp"
#include "macstokes/types.hpp"

namespace macstokes {

enum class BlockFamily { Dirichlet, Periodic };

/// Integer-entried 1-D blocks for n cells (before any 1/h scaling).
///
/// Dirichlet family (usual names in brackets):
///   dirichlet_laplacian  [T_D]  tridiag(-1, 2, -1), size n-1
///   reflected_laplacian  [T_E]  as T_D but size n with corner entries 3
///   neumann_laplacian    [T_N]  size n with corner entries 1
///   corner_selector      [E_0]  diag(1, 0, ..., 0, 1), size n
///   difference           [B_D]  n x (n-1), -1 on the diagonal, 1 below
/// Periodic family:
///   periodic_laplacian   [T_P]  circulant (-1, 2, -1), size n
///   difference           [B_P]  circulant, 1 on the diagonal, -1 above
struct OneDBlocks {
  BlockFamily family = BlockFamily::Dirichlet;
  int n = 0;
  SparseMatrix dirichlet_laplacian;
  SparseMatrix reflected_laplacian;
  SparseMatrix neumann_laplacian;
  SparseMatrix corner_selector;
  SparseMatrix periodic_laplacian;
  SparseMatrix difference;
};

OneDBlocks build_1d_blocks(int n, BlockFamily family);

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sparse_identity(Index n);

namespace kronecker {

SparseMatrix gradient(const GridSpec& spec);
SparseMatrix velocity_laplacian(const GridSpec& spec);
SparseMatrix pressure_laplacian(const GridSpec& spec);

/// Closed form of (A - G G^T) G for the steady problem with mu = 1:
///   DirichletAll:          (2/h^3) [E_0 (x) B_D^T ; B_D^T (x) E_0]
///   PeriodicXDirichletY:   (2/h^3) [E_0 (x) B_P^T ; 0]
///   PeriodicAll:           0
SparseMatrix steady_commutator(const GridSpec& spec);

}  // namespace kronecker

}  // namespace macstokes

#endif  // MACSTOKES_KRONECKER_HPP
