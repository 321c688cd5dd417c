#ifndef MACSTOKES_TYPES_HPP
#define MACSTOKES_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace macstokes {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Compressed sparse row storage. setFromTriplets sorts column indices and
/// sums duplicates, which fixes the nonzero structure at assembly.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

}  // namespace macstokes

#endif  // MACSTOKES_TYPES_HPP
