#include <cmath>
#include <stdexcept>
#include <vector>

#include "macstokes/linalg.hpp"

namespace macstokes {

void GmresConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("GmresConfig: rel_tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("GmresConfig: max_iters must be at least 1");
}

namespace {

/// Back substitution on the leading k x k block of the rotated Hessenberg matrix.
Vector solve_upper(const DenseMatrix& r, const Vector& g, int k) {
  Vector y(k);
  for (int i = k - 1; i >= 0; --i) {
    double s = g[i];
    for (int j = i + 1; j < k; ++j) s -= r(i, j) * y[j];
    y[i] = s / r(i, i);
  }
  return y;
}

}  // namespace

GmresResult gmres(const LinearMap& op, const LinearMap& precond, const Vector& b, const GmresConfig& cfg) {
  cfg.validate();
  if (!b.allFinite()) throw std::invalid_argument("gmres: right-hand side has non-finite entries");
  const bool left = cfg.side == PreconditionSide::Left;
  auto apply_p = [&](const Vector& v) -> Vector { return precond ? precond(v) : v; };

  GmresResult out;
  out.x = Vector::Zero(b.size());
  auto& rep = out.report;
  rep.side = cfg.side;

  const double b_norm = b.norm();
  const Vector r0 = left ? apply_p(b) : b;
  const double beta = r0.norm();
  if (cfg.record_residuals) {
    rep.residual_history.push_back(1.0);
    rep.true_residual_history.push_back(1.0);
  }
  if (beta == 0.0 || b_norm == 0.0) {
    rep.converged = true;
    rep.final_relative_residual = 0.0;
    rep.final_true_relative_residual = 0.0;
    return out;
  }

  const int m = cfg.max_iters;
  std::vector<Vector> basis;
  basis.reserve(std::size_t(std::min(m, 1024)) + 1);
  basis.push_back(r0 / beta);
  DenseMatrix hess = DenseMatrix::Zero(m + 1, m);
  Vector cs = Vector::Zero(m);
  Vector sn = Vector::Zero(m);
  Vector g = Vector::Zero(m + 1);
  g[0] = beta;

  auto combine = [&](int k) {
    const Vector y = solve_upper(hess, g, k);
    Vector z = Vector::Zero(b.size());
    for (int i = 0; i < k; ++i) z += y[i] * basis[std::size_t(i)];
    return left ? z : apply_p(z);
  };

  int k = 0;
  double res = 1.0;
  while (k < m) {
    Vector w = left ? apply_p(op(basis[std::size_t(k)])) : op(apply_p(basis[std::size_t(k)]));
    const double w_norm0 = w.norm();
    for (int i = 0; i <= k; ++i) {
      hess(i, k) = w.dot(basis[std::size_t(i)]);
      w -= hess(i, k) * basis[std::size_t(i)];
    }
    const double h_next = w.norm();
    hess(k + 1, k) = h_next;

    for (int i = 0; i < k; ++i) {
      const double t = cs[i] * hess(i, k) + sn[i] * hess(i + 1, k);
      hess(i + 1, k) = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
      hess(i, k) = t;
    }
    const double denom = std::hypot(hess(k, k), hess(k + 1, k));
    if (!std::isfinite(denom) || !std::isfinite(h_next)) break;
    if (denom == 0.0) {
      // The operator annihilated the Krylov vector; the system is singular here.
      break;
    }
    cs[k] = hess(k, k) / denom;
    sn[k] = hess(k + 1, k) / denom;
    hess(k, k) = denom;
    hess(k + 1, k) = 0.0;
    g[k + 1] = -sn[k] * g[k];
    g[k] = cs[k] * g[k];
    ++k;

    res = std::abs(g[k]) / beta;
    if (cfg.record_residuals) {
      rep.residual_history.push_back(res);
      if (left) {
        const Vector xk = combine(k);
        rep.true_residual_history.push_back((b - op(xk)).norm() / b_norm);
      } else {
        rep.true_residual_history.push_back(res * beta / b_norm);
      }
    }
    const bool breakdown = h_next <= 1e-14 * w_norm0;
    if (res < cfg.rel_tol || breakdown) break;
    basis.push_back(w / h_next);
  }

  rep.iterations = k;
  rep.final_relative_residual = res;
  rep.converged = k > 0 && res < cfg.rel_tol;
  if (k > 0) out.x = combine(k);
  rep.final_true_relative_residual = (b - op(out.x)).norm() / b_norm;
  return out;
}

}  // namespace macstokes
