#include "macstokes/preconditioners.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace macstokes {

std::string_view to_string(PrecondKind kind) {
  switch (kind) {
    case PrecondKind::None: return "none";
    case PrecondKind::P1: return "p1";
    case PrecondKind::P1Exact: return "p1exact";
    case PrecondKind::P2: return "p2";
    case PrecondKind::P3: return "p3";
    case PrecondKind::P4: return "p4";
  }
  return "?";
}

PrecondKind parse_precond_kind(std::string_view name) {
  for (auto k : {PrecondKind::None, PrecondKind::P1, PrecondKind::P1Exact, PrecondKind::P2, PrecondKind::P3,
                 PrecondKind::P4}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown preconditioner '" + std::string(name) +
                              "' (expected none, p1, p1exact, p2, p3 or p4)");
}

PreconditionSide default_side(PrecondKind kind) {
  return kind == PrecondKind::P3 ? PreconditionSide::Right : PreconditionSide::Left;
}

SpdFactorization factorize_momentum(const StokesOperators& ops) {
  if (!ops.momentum_singular) return spd_factorize(ops.A);
  const std::array<ConstantMode, 2> modes{ConstantMode{0, ops.layout.n_u},
                                          ConstantMode{ops.layout.n_u, ops.layout.n_velocity()}};
  return spd_factorize(ops.A, modes);
}

SpdFactorization factorize_poisson(const StokesOperators& ops) {
  const SparseMatrix neg_lc = -ops.Lc;
  return spd_factorize(neg_lc, true);
}

DenseMatrix schur_complement(const StokesOperators& ops, const SpdFactorization& a_fac) {
  const Index np = ops.layout.n_p;
  DenseMatrix s(np, np);
  const SparseMatrix g_cols = SparseMatrix(ops.G).transpose();  // row j holds column j of G
  for (Index j = 0; j < np; ++j) {
    Vector gj = Vector::Zero(ops.layout.n_velocity());
    for (SparseMatrix::InnerIterator it(g_cols, j); it; ++it) gj[it.col()] = it.value();
    s.col(j) = -(ops.D * a_fac.solve_projected(gj));
  }
  return s;
}

PreconditionerContext::PreconditionerContext(std::shared_ptr<const StokesOperators> ops, bool with_exact_schur)
    : ops_(std::move(ops)) {
  if (!ops_) throw std::invalid_argument("PreconditionerContext: null operator set");
  a_fac_ = factorize_momentum(*ops_);
  lc_fac_ = factorize_poisson(*ops_);
  if (with_exact_schur) {
    if (ops_->layout.n_p > kExactSchurMaxPressureDofs) {
      throw std::invalid_argument("PreconditionerContext: exact Schur complement limited to " +
                                  std::to_string(kExactSchurMaxPressureDofs) + " pressure unknowns");
    }
    DenseMatrix s = schur_complement(*ops_, a_fac_);
    s = 0.5 * (s + s.transpose()).eval();
    schur_solver_.emplace(s);
  }
}

Vector PreconditionerContext::solve_momentum(const Vector& b) const { return a_fac_.solve_projected(b); }

Vector PreconditionerContext::solve_poisson(const Vector& b) const { return poisson_solve(lc_fac_, b); }

Vector PreconditionerContext::approx_schur_inverse(const Vector& s) const {
  const auto& p = ops_->params;
  Vector out = p.mu * s;
  if (p.reaction() != 0.0) out += p.reaction() * solve_poisson(s);
  return out;
}

Vector PreconditionerContext::exact_schur_inverse(const Vector& s) const {
  if (!schur_solver_) throw std::logic_error("exact_schur_inverse: Schur complement was not formed");
  return schur_solver_->solve_projected(s);
}

namespace {

struct Split {
  Vector ru;
  Vector rp;
};

Split split(const StokesOperators& ops, const Vector& r) {
  if (r.size() != ops.layout.total) throw std::invalid_argument("preconditioner: dimension mismatch");
  return {r.head(ops.layout.n_velocity()), r.tail(ops.layout.n_p)};
}

Vector join(const Vector& u, const Vector& p) {
  Vector out(u.size() + p.size());
  out << u, p;
  return out;
}

template <class SchurInverse>
Vector projection_step(const PreconditionerContext& ctx, const Vector& r, SchurInverse&& schur_inverse) {
  const auto& ops = ctx.ops();
  const auto [ru, rp] = split(ops, r);
  const Vector w = ctx.solve_momentum(ru);
  const Vector s = -(ops.D * w) - rp;
  const Vector phi = ctx.solve_poisson(s);
  return join(w - ops.G * phi, schur_inverse(s));
}

}  // namespace

Vector apply_p1(const PreconditionerContext& ctx, const Vector& r) {
  return projection_step(ctx, r, [&](const Vector& s) { return ctx.approx_schur_inverse(s); });
}

Vector apply_p1_exact(const PreconditionerContext& ctx, const Vector& r) {
  return projection_step(ctx, r, [&](const Vector& s) { return ctx.exact_schur_inverse(s); });
}

Vector apply_p2(const PreconditionerContext& ctx, const Vector& r) {
  const auto& ops = ctx.ops();
  const auto [ru, rp] = split(ops, r);
  const Vector w = ctx.solve_momentum(ru);
  const Vector t = ops.D * w + rp;
  return join(w, -ctx.approx_schur_inverse(t));
}

Vector apply_p3(const PreconditionerContext& ctx, const Vector& r) {
  const auto& ops = ctx.ops();
  const auto [ru, rp] = split(ops, r);
  const Vector p = -ctx.approx_schur_inverse(rp);
  const Vector u = ctx.solve_momentum(ru - ops.G * p);
  return join(u, p);
}

Vector apply_p4(const PreconditionerContext& ctx, const Vector& r) {
  const auto& ops = ctx.ops();
  const auto [ru, rp] = split(ops, r);
  const Vector w = ctx.solve_momentum(ru);
  const Vector s = -(ops.D * w) - rp;
  const Vector phi = ctx.solve_poisson(s);
  const Vector gphi = ops.G * phi;
  Vector p = ops.params.mu * ctx.solve_poisson(ops.D * (ops.L * gphi));
  if (ops.params.reaction() != 0.0) p += ops.params.reaction() * phi;
  return join(w - gphi, p);
}

Preconditioner::Preconditioner(PrecondKind kind, std::shared_ptr<const PreconditionerContext> ctx)
    : kind_(kind), ctx_(std::move(ctx)) {
  if (!ctx_) throw std::invalid_argument("Preconditioner: null context");
  if (kind_ == PrecondKind::P1Exact && !ctx_->has_exact_schur()) {
    throw std::invalid_argument("Preconditioner: P1Exact needs a context with the exact Schur complement");
  }
}

Vector Preconditioner::apply(const Vector& r) const {
  switch (kind_) {
    case PrecondKind::None: return r;
    case PrecondKind::P1: return apply_p1(*ctx_, r);
    case PrecondKind::P1Exact: return apply_p1_exact(*ctx_, r);
    case PrecondKind::P2: return apply_p2(*ctx_, r);
    case PrecondKind::P3: return apply_p3(*ctx_, r);
    case PrecondKind::P4: return apply_p4(*ctx_, r);
  }
  throw std::logic_error("Preconditioner: unhandled kind");
}

BlockVector Preconditioner::apply(const BlockVector& r) const { return BlockVector(r.layout(), apply(r.data())); }

LinearMap Preconditioner::as_map() const {
  if (kind_ == PrecondKind::None) return {};
  return [self = *this](const Vector& r) { return self.apply(r); };
}

Preconditioner make_preconditioner(std::shared_ptr<const StokesOperators> ops, PrecondKind kind) {
  auto ctx = std::make_shared<const PreconditionerContext>(std::move(ops), kind == PrecondKind::P1Exact);
  return Preconditioner(kind, std::move(ctx));
}

}  // namespace macstokes
