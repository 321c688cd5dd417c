#include "macstokes/experiments.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace macstokes {

void TaylorVortexParams::validate() const {
  if (!(L > 0.0)) throw std::invalid_argument("TaylorVortexParams: L must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("TaylorVortexParams: mu must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("TaylorVortexParams: dt must be positive");
  if (!(rho >= 0.0)) throw std::invalid_argument("TaylorVortexParams: rho must be non-negative");
}

ProblemParams TaylorVortexParams::problem() const {
  return rho == 0.0 ? ProblemParams::steady_stokes(mu) : ProblemParams::unsteady(rho, mu, dt);
}

FlowSample taylor_exact(double x, double y, double t, const TaylorVortexParams& tv) {
  constexpr double pi = std::numbers::pi;
  const double k = 2.0 * pi / tv.L;
  const double decay = std::exp(-8.0 * pi * pi * tv.mu * t / (tv.L * tv.L));
  const double ax = k * (x - t);
  const double ay = k * (y - t);
  return {1.0 - 2.0 * decay * std::cos(ax) * std::sin(ay), 1.0 + 2.0 * decay * std::sin(ax) * std::cos(ay),
          -decay * decay * (std::cos(2.0 * ax) + std::cos(2.0 * ay))};
}

namespace {

void require_domain(const GridSpec& spec, const TaylorVortexParams& tv) {
  tv.validate();
  const double tol = 1e-12 * tv.L;
  if (std::abs(spec.length_x() - tv.L) > tol || std::abs(spec.length_y() - tv.L) > tol) {
    throw std::invalid_argument("Taylor vortex: grid must cover [0, L]^2 with L = nx h = ny h");
  }
}

/// Velocity values at arbitrary staggered labels, completed by wall data and
/// reflected ghosts in Dirichlet directions and by wraparound otherwise.
class FieldAccess {
 public:
  FieldAccess(const GridSpec& spec, const BlockVector& f, const BoundaryData& walls)
      : spec_(spec), f_(f), walls_(walls), px_(periodic_x(spec.bc())), py_(periodic_y(spec.bc())) {}

  /// U(i, j) for i in [0, nx], j in [0, ny + 1].
  double u(int i, int j) const {
    const double h = spec_.h();
    if (!py_ && (j == 0 || j == spec_.ny() + 1)) {
      const double wall_y = j == 0 ? 0.0 : spec_.length_y();
      return 2.0 * walls_.u(i * h, wall_y) - u(i, j == 0 ? 1 : spec_.ny());
    }
    if (!px_ && (i == 0 || i == spec_.nx())) return walls_.u(i * h, (j - 0.5) * h);
    return f_.u()[linear_index(spec_, Field::U, i, j)];
  }

  /// V(i, j) for i in [0, nx + 1], j in [0, ny].
  double v(int i, int j) const {
    const double h = spec_.h();
    if (!px_ && (i == 0 || i == spec_.nx() + 1)) {
      const double wall_x = i == 0 ? 0.0 : spec_.length_x();
      return 2.0 * walls_.v(wall_x, j * h) - v(i == 0 ? 1 : spec_.nx(), j);
    }
    if (!py_ && (j == 0 || j == spec_.ny())) return walls_.v((i - 0.5) * h, j * h);
    return f_.v()[linear_index(spec_, Field::V, i, j)];
  }

 private:
  const GridSpec& spec_;
  const BlockVector& f_;
  const BoundaryData& walls_;
  bool px_;
  bool py_;
};

template <class Fn>
void for_each_face(const GridSpec& spec, Field f, Fn&& fn) {
  const auto shape = field_shape(spec, f);
  const bool normal_periodic = f == Field::U ? periodic_x(spec.bc()) : periodic_y(spec.bc());
  for (int ky = 0; ky < shape.count_y; ++ky) {
    for (int kx = 0; kx < shape.count_x; ++kx) {
      int i = kx + 1;
      int j = ky + 1;
      if (f == Field::U && normal_periodic) i = kx;
      if (f == Field::V && normal_periodic) j = ky;
      fn(Index(ky) * shape.count_x + kx, i, j);
    }
  }
}

}  // namespace

BlockVector sample_exact(const GridSpec& spec, const TaylorVortexParams& tv, double t) {
  require_domain(spec, tv);
  const auto layout = dof_counts(spec);
  BlockVector out(layout);
  for (Index k = 0; k < layout.n_u; ++k) {
    const auto pt = dof_position(spec, Field::U, k);
    out.u()[k] = taylor_exact(pt.x, pt.y, t, tv).u;
  }
  for (Index k = 0; k < layout.n_v; ++k) {
    const auto pt = dof_position(spec, Field::V, k);
    out.v()[k] = taylor_exact(pt.x, pt.y, t, tv).v;
  }
  for (Index k = 0; k < layout.n_p; ++k) {
    const auto pt = dof_position(spec, Field::P, k);
    out.p()[k] = taylor_exact(pt.x, pt.y, t, tv).p;
  }
  return out;
}

Vector advection_term(const GridSpec& spec, const BlockVector& field, const BoundaryData& walls) {
  const auto layout = dof_counts(spec);
  if (field.layout() != layout) throw std::invalid_argument("advection_term: field does not match the grid");
  const FieldAccess at(spec, field, walls);
  const double inv_2h = 0.5 / spec.h();
  Vector out(layout.n_velocity());

  for_each_face(spec, Field::U, [&](Index k, int i, int j) {
    const double vbar = 0.25 * (at.v(i, j) + at.v(i + 1, j) + at.v(i, j - 1) + at.v(i + 1, j - 1));
    const double dudx = (at.u(i + 1, j) - at.u(i - 1, j)) * inv_2h;
    const double dudy = (at.u(i, j + 1) - at.u(i, j - 1)) * inv_2h;
    out[k] = at.u(i, j) * dudx + vbar * dudy;
  });
  for_each_face(spec, Field::V, [&](Index k, int i, int j) {
    const double ubar = 0.25 * (at.u(i - 1, j) + at.u(i, j) + at.u(i - 1, j + 1) + at.u(i, j + 1));
    const double dvdx = (at.v(i + 1, j) - at.v(i - 1, j)) * inv_2h;
    const double dvdy = (at.v(i, j + 1) - at.v(i, j - 1)) * inv_2h;
    out[layout.n_u + k] = ubar * dvdx + at.v(i, j) * dvdy;
  });
  return out;
}

Vector laplacian_lift(const GridSpec& spec, const BoundaryData& walls) {
  const auto layout = dof_counts(spec);
  const double h = spec.h();
  const double inv_h2 = 1.0 / (h * h);
  const int nx = spec.nx();
  const int ny = spec.ny();
  const bool px = periodic_x(spec.bc());
  const bool py = periodic_y(spec.bc());
  const double lx = spec.length_x();
  const double ly = spec.length_y();
  Vector out = Vector::Zero(layout.n_velocity());

  for_each_face(spec, Field::U, [&](Index k, int i, int j) {
    const double y = (j - 0.5) * h;
    double s = 0.0;
    if (!px && i == 1) s += walls.u(0.0, y);
    if (!px && i == nx - 1) s += walls.u(lx, y);
    if (!py && j == 1) s += 2.0 * walls.u(i * h, 0.0);
    if (!py && j == ny) s += 2.0 * walls.u(i * h, ly);
    out[k] = s * inv_h2;
  });
  for_each_face(spec, Field::V, [&](Index k, int i, int j) {
    const double x = (i - 0.5) * h;
    double s = 0.0;
    if (!py && j == 1) s += walls.v(x, 0.0);
    if (!py && j == ny - 1) s += walls.v(x, ly);
    if (!px && i == 1) s += 2.0 * walls.v(0.0, j * h);
    if (!px && i == nx) s += 2.0 * walls.v(lx, j * h);
    out[layout.n_u + k] = s * inv_h2;
  });
  return out;
}

Vector divergence_flux(const GridSpec& spec, const BoundaryData& walls) {
  const auto layout = dof_counts(spec);
  const double h = spec.h();
  const bool px = periodic_x(spec.bc());
  const bool py = periodic_y(spec.bc());
  Vector out = Vector::Zero(layout.n_p);
  for (int j = 1; j <= spec.ny(); ++j) {
    for (int i = 1; i <= spec.nx(); ++i) {
      double s = 0.0;
      if (!px && i == 1) s -= walls.u(0.0, (j - 0.5) * h);
      if (!px && i == spec.nx()) s += walls.u(spec.length_x(), (j - 0.5) * h);
      if (!py && j == 1) s -= walls.v((i - 0.5) * h, 0.0);
      if (!py && j == spec.ny()) s += walls.v((i - 0.5) * h, spec.length_y());
      out[linear_index(spec, Field::P, i, j)] = s / h;
    }
  }
  return out;
}

BlockVector build_forcing(const GridSpec& spec, const TaylorVortexParams& tv, const BlockVector& u_prev,
                          int step_index) {
  require_domain(spec, tv);
  const ProblemParams params = tv.problem();
  const auto layout = dof_counts(spec);
  const double t_prev = tv.t0 + step_index * tv.dt;
  const TaylorBoundary walls_prev(tv, t_prev);
  const TaylorBoundary walls_next(tv, t_prev + tv.dt);

  BlockVector rhs(layout);
  rhs.velocity() = params.reaction() * u_prev.velocity() - advection_term(spec, u_prev, walls_prev) +
                   params.mu * laplacian_lift(spec, walls_next);
  rhs.p() = divergence_flux(spec, walls_next);
  remove_mean(rhs.p());
  if (params.reaction() == 0.0 && spec.bc() == BoundaryKind::PeriodicAll) {
    remove_mean(rhs.u());
    remove_mean(rhs.v());
  }
  return rhs;
}

std::vector<StepResult> run_steps(const Preconditioner& pc, const TaylorVortexParams& tv, PreconditionSide side,
                                  const SolveSettings& settings) {
  const auto& ops = pc.context().ops();
  require_domain(ops.spec, tv);
  if (!(ops.params == tv.problem())) throw std::invalid_argument("run_steps: preconditioner built for other parameters");
  const SaddleOperator m(pc.context().shared_ops());
  const LinearMap op = [&](const Vector& x) { return m.apply(x); };
  GmresConfig cfg = settings.gmres;
  cfg.side = side;

  std::vector<StepResult> out;
  BlockVector state = sample_exact(ops.spec, tv, tv.t0);
  for (int k = 0; k < settings.steps; ++k) {
    const BlockVector rhs = build_forcing(ops.spec, tv, state, k);
    GmresResult res = gmres(op, pc.as_map(), rhs.data(), cfg);
    StepResult step;
    step.step = k + 1;
    step.report = std::move(res.report);
    state = BlockVector(ops.layout, std::move(res.x));
    const BlockVector exact = sample_exact(ops.spec, tv, tv.t0 + (k + 1) * tv.dt);
    step.velocity_error = (state.velocity() - exact.velocity()).cwiseAbs().maxCoeff();
    out.push_back(std::move(step));
  }
  return out;
}

namespace {

TableCell make_cell(const Preconditioner& pc, const TaylorVortexParams& tv, std::optional<PreconditionSide> side,
                    const SolveSettings& settings) {
  TableCell cell;
  cell.bc = pc.context().ops().spec.bc();
  cell.rho = tv.rho;
  cell.kind = pc.kind();
  cell.side = side.value_or(default_side(pc.kind()));
  cell.steps = run_steps(pc, tv, cell.side, settings);
  if (!cell.steps.empty()) {
    cell.iterations = cell.steps.front().report.iterations;
    cell.converged = cell.steps.front().report.converged;
  }
  return cell;
}

}  // namespace

TableCell run_table_cell(const GridSpec& spec, const TaylorVortexParams& tv, PrecondKind kind,
                         std::optional<PreconditionSide> side, const SolveSettings& settings) {
  auto ops = std::make_shared<const StokesOperators>(build_operators(spec, tv.problem()));
  return make_cell(make_preconditioner(ops, kind), tv, side, settings);
}

std::vector<TableCell> taylor_table(const TableSpec& table, const TaylorVortexParams& base,
                                    const SolveSettings& settings) {
  std::vector<TableCell> cells;
  for (BoundaryKind bc : table.bcs) {
    const GridSpec spec(table.n, table.n, bc, base.L / table.n);
    for (double rho : table.rhos) {
      TaylorVortexParams tv = base;
      tv.rho = rho;
      auto ops = std::make_shared<const StokesOperators>(build_operators(spec, tv.problem()));
      bool exact = false;
      for (PrecondKind k : table.kinds) exact = exact || k == PrecondKind::P1Exact;
      auto ctx = std::make_shared<const PreconditionerContext>(ops, exact);
      for (PrecondKind kind : table.kinds) cells.push_back(make_cell(Preconditioner(kind, ctx), tv, {}, settings));
    }
  }
  return cells;
}

std::vector<ConvergencePoint> convergence_study(BoundaryKind bc, const std::vector<int>& ns,
                                                const TaylorVortexParams& base, double dt_factor, PrecondKind kind) {
  std::vector<ConvergencePoint> out;
  SolveSettings settings;
  settings.steps = 1;
  for (int n : ns) {
    ConvergencePoint pt;
    pt.n = n;
    pt.h = base.L / n;
    pt.dt = dt_factor * pt.h * pt.h / base.mu;
    TaylorVortexParams tv = base;
    tv.dt = pt.dt;
    const TableCell cell = run_table_cell(GridSpec(n, n, bc, pt.h), tv, kind, std::nullopt, settings);
    pt.velocity_error = cell.steps.front().velocity_error;
    if (!out.empty()) {
      const auto& prev = out.back();
      pt.observed_order = std::log(prev.velocity_error / pt.velocity_error) / std::log(prev.h / pt.h);
    }
    out.push_back(pt);
  }
  return out;
}

GmresResult random_solve(const GridSpec& spec, const ProblemParams& params, PrecondKind kind,
                         std::optional<PreconditionSide> side, std::uint64_t seed, const GmresConfig& cfg) {
  auto ops = std::make_shared<const StokesOperators>(build_operators(spec, params));
  const Preconditioner pc = make_preconditioner(ops, kind);
  const SaddleOperator m(ops);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector b(ops->layout.total);
  for (Index i = 0; i < b.size(); ++i) b[i] = normal(rng);
  remove_mean(b.tail(ops->layout.n_p));
  if (ops->momentum_singular) {
    remove_mean(b.segment(0, ops->layout.n_u));
    remove_mean(b.segment(ops->layout.n_u, ops->layout.n_v));
  }
  GmresConfig c = cfg;
  c.side = side.value_or(default_side(kind));
  return gmres([&](const Vector& x) { return m.apply(x); }, pc.as_map(), b, c);
}

}  // namespace macstokes
