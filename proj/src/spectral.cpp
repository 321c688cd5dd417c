#include "macstokes/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "macstokes/kronecker.hpp"

namespace macstokes {

SpectralReport summarize_spectrum(std::vector<double> eigenvalues, Index dof_total, double max_abs_imag,
                                  double unit_tol) {
  SpectralReport r;
  std::sort(eigenvalues.begin(), eigenvalues.end());
  r.eigenvalues = std::move(eigenvalues);
  r.max_abs_imag = max_abs_imag;
  r.dof_total = dof_total;
  r.unit_tol = unit_tol;
  if (r.eigenvalues.empty()) return r;

  double abs_max = 0.0;
  for (double l : r.eigenvalues) abs_max = std::max(abs_max, std::abs(l));
  r.lambda_max = r.eigenvalues.back();
  r.zero_tol = 1e-10 * abs_max;

  auto nonunitary = [&](double tol) {
    int c = 0;
    for (double l : r.eigenvalues) c += std::abs(l - 1.0) > tol * std::max(1.0, std::abs(l)) ? 1 : 0;
    return c;
  };
  r.n_nonunitary = nonunitary(unit_tol);
  r.n_unit = int(r.eigenvalues.size()) - r.n_nonunitary;
  r.lambda_min_nonzero = std::numeric_limits<double>::infinity();
  for (double l : r.eigenvalues) {
    if (std::abs(l) <= r.zero_tol) {
      ++r.n_zero;
    } else {
      r.lambda_min_nonzero = std::min(r.lambda_min_nonzero, l);
    }
  }
  r.n_nonunitary_nonzero = r.n_nonunitary - r.n_zero;
  if (!std::isfinite(r.lambda_min_nonzero)) r.lambda_min_nonzero = 0.0;
  r.beta_est = std::sqrt(std::max(r.lambda_min_nonzero, 0.0));

  r.count_plateau = true;
  for (double tol : kCountTolerances) {
    r.counts_by_tol.push_back({tol, nonunitary(tol)});
    r.count_plateau = r.count_plateau && r.counts_by_tol.back().n_nonunitary == r.counts_by_tol.front().n_nonunitary;
  }
  return r;
}

namespace {

void require_desk_scale(const GridSpec& spec, const char* who) {
  const auto layout = dof_counts(spec);
  if (layout.n_p > kExactSchurMaxPressureDofs) {
    throw std::invalid_argument(std::string(who) + ": pressure space exceeds the dense limit of " +
                                std::to_string(kExactSchurMaxPressureDofs));
  }
}

DenseMatrix symmetric_part(const DenseMatrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace

DenseMatrix schur_complement_dense(const GridSpec& spec, const ProblemParams& params) {
  require_desk_scale(spec, "schur_complement_dense");
  const StokesOperators ops = build_operators(spec, params);
  return schur_complement(ops, factorize_momentum(ops));
}

SpectralReport analyze_steady(const GridSpec& spec) {
  const DenseMatrix s = schur_complement_dense(spec, ProblemParams::steady_stokes(1.0));
  return summarize_spectrum(symmetric_eigenvalues(symmetric_part(s)), dof_counts(spec).total);
}

DenseMatrix preconditioned_schur_dense(const GridSpec& spec, const ProblemParams& params) {
  require_desk_scale(spec, "preconditioned_schur_dense");
  auto ops = std::make_shared<const StokesOperators>(build_operators(spec, params));
  const PreconditionerContext ctx(ops, false);
  const DenseMatrix s = schur_complement(*ops, ctx.momentum_factor());
  DenseMatrix out(s.rows(), s.cols());
  for (Index j = 0; j < s.cols(); ++j) out.col(j) = ctx.approx_schur_inverse(s.col(j));
  return out;
}

namespace {

std::vector<double> real_parts(const std::vector<std::complex<double>>& ev, double& max_imag) {
  std::vector<double> re;
  re.reserve(ev.size());
  max_imag = 0.0;
  for (const auto& z : ev) {
    re.push_back(z.real());
    max_imag = std::max(max_imag, std::abs(z.imag()));
  }
  return re;
}

/// sigma(1 - sigma) over the eigenvalues of [I, A^{-1} G; Sapprox^{-1} D, 0],
/// each nonzero value appearing once per root pair.
std::vector<double> sigma_route(const StokesOperators& ops, const PreconditionerContext& ctx, double zero_tol) {
  const Index nv = ops.layout.n_velocity();
  const Index np = ops.layout.n_p;
  const DenseMatrix g = DenseMatrix(ops.G);
  const DenseMatrix d = DenseMatrix(ops.D);
  DenseMatrix k = DenseMatrix::Zero(nv + np, nv + np);
  k.topLeftCorner(nv, nv).setIdentity();
  for (Index j = 0; j < np; ++j) k.block(0, nv + j, nv, 1) = ctx.solve_momentum(g.col(j));
  for (Index j = 0; j < nv; ++j) k.block(nv, j, np, 1) = ctx.approx_schur_inverse(d.col(j));

  std::vector<double> lambdas;
  for (const auto& s : dense_eigenvalues(k)) {
    const std::complex<double> l = s * (1.0 - s);
    if (std::abs(l) > zero_tol) lambdas.push_back(l.real());
  }
  std::sort(lambdas.begin(), lambdas.end());
  std::vector<double> once;
  for (std::size_t i = 0; i < lambdas.size(); i += 2) once.push_back(lambdas[i]);
  return once;
}

}  // namespace

std::vector<UnsteadyBoundReport> verify_unsteady_bounds(const GridSpec& spec, std::span<const double> eps2_list) {
  const SpectralReport steady = analyze_steady(spec);
  const double beta_sq = steady.lambda_min_nonzero;
  std::vector<UnsteadyBoundReport> out;
  for (double eps2 : eps2_list) {
    if (!(eps2 > 0.0)) throw std::invalid_argument("verify_unsteady_bounds: eps2 must be positive");
    const ProblemParams params = ProblemParams::scaled(eps2);
    auto ops = std::make_shared<const StokesOperators>(build_operators(spec, params));
    const PreconditionerContext ctx(ops, false);
    const DenseMatrix s = schur_complement(*ops, ctx.momentum_factor());
    DenseMatrix ss(s.rows(), s.cols());
    for (Index j = 0; j < s.cols(); ++j) ss.col(j) = ctx.approx_schur_inverse(s.col(j));

    double max_imag = 0.0;
    auto re = real_parts(dense_eigenvalues(ss), max_imag);
    UnsteadyBoundReport rep;
    rep.eps2 = eps2;
    rep.steady_beta_sq = beta_sq;
    rep.spectrum = summarize_spectrum(std::move(re), ops->layout.total, max_imag);
    rep.within_bounds = true;
    for (double l : rep.spectrum.eigenvalues) {
      if (std::abs(l) <= rep.spectrum.zero_tol) continue;
      if (l < beta_sq * (1.0 - 1e-6) || l > 1.0 + 1e-8) rep.within_bounds = false;
    }

    if (spec.nx() <= 8 && spec.ny() <= 8) {
      // Velocity kernel modes give sigma = 1 up to rounding amplified by the
      // conditioning of A, so they are filtered with a looser threshold.
      const double filter = std::max(rep.spectrum.zero_tol, 1e-6 * std::abs(rep.spectrum.lambda_max));
      const auto sigma_lambdas = sigma_route(*ops, ctx, filter);
      std::vector<double> direct;
      for (double l : rep.spectrum.eigenvalues) {
        if (std::abs(l) > rep.spectrum.zero_tol) direct.push_back(l);
      }
      if (direct.size() != sigma_lambdas.size()) {
        rep.sigma_route_max_diff = std::numeric_limits<double>::infinity();
      } else {
        rep.sigma_route_max_diff = 0.0;
        for (std::size_t i = 0; i < direct.size(); ++i) {
          rep.sigma_route_max_diff = std::max(rep.sigma_route_max_diff, std::abs(direct[i] - sigma_lambdas[i]));
        }
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

CommutatorReport verify_commutator_rank(const GridSpec& spec) {
  const ProblemParams params = ProblemParams::steady_stokes(1.0);
  const DenseMatrix c = DenseMatrix(commutator_matrix(spec, params));
  const DenseMatrix f = DenseMatrix(kronecker::steady_commutator(spec));

  CommutatorReport r;
  r.rank = numerical_rank(c, 1e-8);
  r.max_abs_entry = c.cwiseAbs().maxCoeff();
  const double scale = f.cwiseAbs().maxCoeff();
  r.formula_rel_diff = (c - f).cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
  switch (spec.bc()) {
    case BoundaryKind::DirichletAll: r.stated_rank = 2 * (spec.nx() - 1) + 2 * (spec.ny() - 1); break;
    case BoundaryKind::PeriodicXDirichletY: r.stated_rank = 2 * (spec.nx() - 1); break;
    case BoundaryKind::PeriodicAll: r.stated_rank = 0; break;
  }
  return r;
}

DenseMatrix preconditioned_operator_dense(const GridSpec& spec, const ProblemParams& params, PrecondKind kind) {
  auto ops = std::make_shared<const StokesOperators>(build_operators(spec, params));
  const Preconditioner pc = make_preconditioner(ops, kind);
  const SaddleOperator m(ops);
  const Index n = ops->layout.total;
  DenseMatrix out(n, n);
  for (Index j = 0; j < n; ++j) out.col(j) = pc.apply(m.apply(Vector(Vector::Unit(n, j))));
  return out;
}

namespace {

/// Orthonormal basis of {(u, p) : sum(p) = 0}, built from a Householder
/// reflector that sends the normalized pressure constant to the last axis.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> mean_zero_basis(Index nv, Index np) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vec v = Vec::Constant(np, Scalar(1) / std::sqrt(Scalar(np)));
  v[np - 1] -= Scalar(1);
  Mat h = Mat::Identity(np, np);
  const Scalar vv = v.squaredNorm();
  if (vv > Scalar(0)) h -= (Scalar(2) / vv) * v * v.transpose();
  Mat q = Mat::Zero(nv + np, nv + np - 1);
  q.topLeftCorner(nv, nv).setIdentity();
  q.bottomRightCorner(np, np - 1) = h.leftCols(np - 1);
  return q;
}

using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

LMat to_long(const SparseMatrix& a) { return DenseMatrix(a).cast<long double>(); }

/// Inverse on the complement of constant modes: Pi (X + sum_m e_m e_m^T / |m|)^{-1} Pi.
LMat mode_pinv(const LMat& x, const std::vector<ConstantMode>& modes) {
  const Index n = x.rows();
  LMat reg = x;
  LMat pi = LMat::Identity(n, n);
  for (const auto& m : modes) {
    const Index len = m.end - m.begin;
    reg.block(m.begin, m.begin, len, len).array() += 1.0L / (long double)len;
    pi.block(m.begin, m.begin, len, len).array() -= 1.0L / (long double)len;
  }
  return pi * reg.partialPivLu().inverse() * pi;
}

LMat product_form(const StokesOperators& ops, PrecondKind kind) {
  const Index nv = ops.layout.n_velocity();
  const Index np = ops.layout.n_p;
  const Index n = nv + np;
  const LMat a = to_long(ops.A), g = to_long(ops.G), d = to_long(ops.D), l = to_long(ops.L);
  const LMat neg_lc = -to_long(ops.Lc);

  std::vector<ConstantMode> vmodes;
  if (ops.momentum_singular) vmodes = {{0, ops.layout.n_u}, {ops.layout.n_u, nv}};
  const LMat a_inv = mode_pinv(a, vmodes);
  const LMat neg_lc_inv = mode_pinv(neg_lc, {{0, np}});
  const long double reaction = ops.params.reaction();
  const long double mu = ops.params.mu;
  const LMat sapprox_inv = reaction * neg_lc_inv + mu * LMat::Identity(np, np);

  auto block = [&](const LMat& b11, const LMat& b12, const LMat& b21, const LMat& b22) {
    LMat out(n, n);
    out << b11, b12, b21, b22;
    return out;
  };
  const LMat iv = LMat::Identity(nv, nv), ip = LMat::Identity(np, np);
  const LMat zvp = LMat::Zero(nv, np), zpv = LMat::Zero(np, nv);
  const LMat a_step = block(a_inv, zvp, zpv, ip);
  const LMat div_step = block(iv, zvp, -d, -ip);

  LMat p_inv;
  switch (kind) {
    case PrecondKind::None: p_inv = LMat::Identity(n, n); break;
    case PrecondKind::P1:
      p_inv = block(iv, -g * neg_lc_inv, zpv, sapprox_inv) * div_step * a_step;
      break;
    case PrecondKind::P1Exact: {
      const LMat s = -d * a_inv * g;
      p_inv = block(iv, -g * neg_lc_inv, zpv, mode_pinv(0.5L * (s + s.transpose()), {{0, np}})) * div_step * a_step;
      break;
    }
    case PrecondKind::P2: p_inv = block(iv, zvp, zpv, -sapprox_inv) * block(iv, zvp, d, ip) * a_step; break;
    case PrecondKind::P3: p_inv = a_step * block(iv, -g, zpv, ip) * block(iv, zvp, zpv, -sapprox_inv); break;
    case PrecondKind::P4:
      p_inv = block(iv, -g, zpv, reaction * ip + mu * neg_lc_inv * d * l * g) * block(iv, zvp, zpv, neg_lc_inv) *
              div_step * a_step;
      break;
  }
  const LMat m = block(a, g, -d, LMat::Zero(np, np));
  return p_inv * m;
}

bool complex_less(const std::complex<double>& x, const std::complex<double>& y) {
  return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
}

}  // namespace

std::vector<std::complex<double>> preconditioned_spectrum(const GridSpec& spec, const ProblemParams& params,
                                                          PrecondKind kind) {
  const StokesOperators ops = build_operators(spec, params);
  const LMat pm = product_form(ops, kind);
  const LMat q = mean_zero_basis<long double>(ops.layout.n_velocity(), ops.layout.n_p);
  const LMat restricted = q.transpose() * pm * q;
  Eigen::EigenSolver<LMat> es(restricted, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("preconditioned_spectrum: eigensolver did not converge");
  std::vector<std::complex<double>> out;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()[i];
    out.emplace_back(double(z.real()), double(z.imag()));
  }
  std::sort(out.begin(), out.end(), complex_less);
  return out;
}

double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end(), complex_less);
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(x - b[j]);
      if (dist < best_d) {
        best_d = dist;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

StructureReport verify_preconditioned_structure(const GridSpec& spec, const ProblemParams& params, PrecondKind kind,
                                                std::uint64_t seed, int probes) {
  auto ops = std::make_shared<const StokesOperators>(build_operators(spec, params));
  const Preconditioner pc = make_preconditioner(ops, kind);
  const SaddleOperator m(ops);
  const Index nv = ops->layout.n_velocity();
  const Index np = ops->layout.n_p;
  const Index n = nv + np;

  DenseMatrix pm(n, n);
  for (Index j = 0; j < n; ++j) pm.col(j) = pc.apply(m.apply(Vector(Vector::Unit(n, j))));

  StructureReport r;
  r.kind = kind;
  r.block21_max = pm.bottomLeftCorner(np, nv).cwiseAbs().maxCoeff();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto random_vector = [&](Index len) {
    Vector v(len);
    for (Index i = 0; i < len; ++i) v[i] = normal(rng);
    return v;
  };
  const PreconditionerContext& ctx = pc.context();
  for (int k = 0; k < probes; ++k) {
    const Vector w = random_vector(nv);
    const Vector projected = w + ops->G * ctx.solve_poisson(ops->D * w);
    r.projector_divergence = std::max(r.projector_divergence, (ops->D * projected).norm() / w.norm());

    Vector x = random_vector(n);
    remove_mean(x.tail(np));
    const Vector y = pm * x - x;
    const Vector z = pm * y - y;
    r.nilpotency_residual = std::max(r.nilpotency_residual, z.norm() / x.norm());
  }

  const DenseMatrix q = mean_zero_basis<double>(nv, np);
  r.eigenvalues = dense_eigenvalues(q.transpose() * pm * q);
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), complex_less);
  for (const auto& z : r.eigenvalues) r.max_eig_dist_from_one = std::max(r.max_eig_dist_from_one, std::abs(z - 1.0));
  return r;
}

}  // namespace macstokes
