#include "macstokes/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace macstokes {

struct SpdFactorization::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

namespace {

double mode_sum(const Vector& x, const ConstantMode& m) { return x.segment(m.begin, m.end - m.begin).sum(); }

}  // namespace

void remove_mean(Eigen::Ref<Vector> x) {
  if (x.size() > 0) x.array() -= x.mean();
}

void SpdFactorization::project(Vector& x) const {
  for (const auto& m : modes_) remove_mean(x.segment(m.begin, m.end - m.begin));
}

Vector SpdFactorization::solve(const Vector& b) const {
  if (!impl_) throw SolveError("SpdFactorization: not factorized");
  if (b.size() != size_) throw SolveError("SpdFactorization: right-hand side has the wrong length");
  for (const auto& m : modes_) {
    const double scale = b.segment(m.begin, m.end - m.begin).cwiseAbs().sum();
    if (std::abs(mode_sum(b, m)) > 1e-10 * scale + 1e-300) {
      std::ostringstream os;
      os << "SpdFactorization: right-hand side is not mean-zero on unknowns [" << m.begin << ", " << m.end << ")";
      throw SolveError(os.str());
    }
  }
  Vector x = impl_->ldlt.solve(b);
  project(x);
  return x;
}

Vector SpdFactorization::solve_projected(const Vector& b) const {
  Vector rhs = b;
  project(rhs);
  return solve(rhs);
}

SpdFactorization spd_factorize(const SparseMatrix& a, std::span<const ConstantMode> modes) {
  if (a.rows() != a.cols()) throw FactorizationError("spd_factorize: matrix is not square", -1);
  Eigen::SparseMatrix<double> anchored = a;
  for (const auto& m : modes) {
    if (m.begin < 0 || m.end > a.rows() || m.begin >= m.end) {
      throw FactorizationError("spd_factorize: constant mode outside the matrix", -1);
    }
    const Index k = m.end - 1;
    const double d = a.coeff(k, k);
    anchored.coeffRef(k, k) += d > 0.0 ? d : 1.0;
  }
  auto impl = std::make_shared<SpdFactorization::Impl>();
  impl->ldlt.compute(anchored);
  if (impl->ldlt.info() != Eigen::Success) {
    throw FactorizationError("spd_factorize: factorization failed (zero pivot)", -1);
  }
  const Vector& d = impl->ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  for (Index k = 0; k < d.size(); ++k) {
    if (!(d[k] > 1e-12 * dmax)) {
      const Index original = impl->ldlt.permutationPinv().indices()(k);
      std::ostringstream os;
      os << "spd_factorize: matrix is not positive definite (pivot " << d[k] << " at index " << original << ")";
      throw FactorizationError(os.str(), original);
    }
  }
  SpdFactorization f;
  f.impl_ = std::move(impl);
  f.modes_.assign(modes.begin(), modes.end());
  f.size_ = a.rows();
  return f;
}

SpdFactorization spd_factorize(const SparseMatrix& a, bool regularize_nullspace) {
  if (!regularize_nullspace) return spd_factorize(a, std::span<const ConstantMode>{});
  const ConstantMode whole{0, a.rows()};
  return spd_factorize(a, std::span<const ConstantMode>(&whole, 1));
}

Vector poisson_solve(const SpdFactorization& fac, const Vector& b) {
  if (!fac.regularized()) throw SolveError("poisson_solve: factorization has no constant mode");
  return fac.solve_projected(b);
}

std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_eigenvalues: matrix is not square");
  if (a.rows() == 0) return {};
  Eigen::EigenSolver<DenseMatrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("dense_eigenvalues: QR iteration did not converge");
  }
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigenvalues: matrix is not square");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric_eigenvalues: tridiagonal QR did not converge");
  }
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

int numerical_rank(const DenseMatrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<DenseMatrix> svd(a);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  return int((s.array() > rel_tol * s[0]).count());
}

DenseSpdSolver::DenseSpdSolver(const DenseMatrix& a) : size_(a.rows()) {
  if (a.rows() != a.cols() || a.rows() == 0) throw FactorizationError("DenseSpdSolver: bad matrix shape", -1);
  const double n = double(a.rows());
  const double scale = std::max(a.trace() / n, 1e-300);
  DenseMatrix reg = a;
  reg.array() += scale / n;
  llt_.compute(reg);
  if (llt_.info() != Eigen::Success) {
    throw FactorizationError("DenseSpdSolver: matrix is not positive semidefinite", -1);
  }
}

Vector DenseSpdSolver::solve_projected(const Vector& b) const {
  Vector rhs = b;
  remove_mean(rhs);
  Vector x = llt_.solve(rhs);
  remove_mean(x);
  return x;
}

}  // namespace macstokes
