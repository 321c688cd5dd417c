#ifndef MACSTOKES_EXPERIMENTS_HPP
#define MACSTOKES_EXPERIMENTS_HPP

/// \file experiments.hpp
/// \brief Taylor-vortex forced Stokes steps and GMRES iteration tables.
///
/// One backward-Euler step solves
///
///     (rho/dt) u^{k+1} - mu L u^{k+1} + G p^{k+1} = (rho/dt) u^k - (u^k . grad) u^k + lift
///                                     -D u^{k+1} = flux
///
/// where `lift` carries the known wall values of the Laplacian stencil and
/// `flux` the wall-normal velocities of the divergence stencil, both taken
/// from the exact solution at t_{k+1}. rho = 0 selects the steady problem.

#include <cstdint>
#include <optional>
#include <vector>

#include "macstokes/grid.hpp"
#include "macstokes/linalg.hpp"
#include "macstokes/operators.hpp"
#include "macstokes/preconditioners.hpp"

namespace macstokes {

struct TaylorVortexParams {
  double L = 64.0;
  double mu = 1.0;
  double rho = 1.0;
  double dt = 0.5;
  double t0 = 0.0;

  /// Throws std::invalid_argument for L <= 0, mu <= 0, dt <= 0 or rho < 0.
  void validate() const;
  /// Steady Stokes for rho = 0, backward Euler otherwise.
  ProblemParams problem() const;
};

struct FlowSample {
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
};

/// Closed-form Taylor vortex on the square [0, L]^2.
FlowSample taylor_exact(double x, double y, double t, const TaylorVortexParams& tv);

/// Exact u, v and p sampled at the staggered positions of `spec`.
BlockVector sample_exact(const GridSpec& spec, const TaylorVortexParams& tv, double t);

/// Wall values of the velocity; they close the stencils in Dirichlet directions.
struct BoundaryData {
  virtual ~BoundaryData() = default;
  virtual double u(double x, double y) const = 0;
  virtual double v(double x, double y) const = 0;
};

/// Boundary data of the Taylor vortex at a fixed time.
class TaylorBoundary final : public BoundaryData {
 public:
  TaylorBoundary(const TaylorVortexParams& tv, double t) : tv_(tv), t_(t) {}
  double u(double x, double y) const override { return taylor_exact(x, y, t_, tv_).u; }
  double v(double x, double y) const override { return taylor_exact(x, y, t_, tv_).v; }

 private:
  TaylorVortexParams tv_;
  double t_;
};

/// Homogeneous walls.
class ZeroBoundary final : public BoundaryData {
 public:
  double u(double, double) const override { return 0.0; }
  double v(double, double) const override { return 0.0; }
};

/// Centered staggered discretization of (u . grad) u at every velocity
/// unknown. The cross velocity is the four-point average around the face;
/// Dirichlet directions use wall values and reflected ghosts.
Vector advection_term(const GridSpec& spec, const BlockVector& field, const BoundaryData& walls);

/// Wall contributions of mu L to the momentum rows.
Vector laplacian_lift(const GridSpec& spec, const BoundaryData& walls);

/// Right-hand side of the divergence rows: -D u = flux for every wall flux.
Vector divergence_flux(const GridSpec& spec, const BoundaryData& walls);

/// Full right-hand side for the step producing t_{k+1} = t0 + (step_index + 1) dt.
/// The pressure part, and for the singular steady periodic problem the
/// velocity components, are projected onto the mean-zero range of M.
BlockVector build_forcing(const GridSpec& spec, const TaylorVortexParams& tv, const BlockVector& u_prev,
                          int step_index);

struct StepResult {
  int step = 0;
  IterationReport report;
  /// max |u - u_exact| over velocity unknowns at t_{k+1}; meaningful for rho = 1.
  double velocity_error = 0.0;
};

struct TableCell {
  BoundaryKind bc = BoundaryKind::DirichletAll;
  double rho = 0.0;
  PrecondKind kind = PrecondKind::P1;
  PreconditionSide side = PreconditionSide::Left;
  /// Iterations of the first step; the table entry.
  int iterations = 0;
  bool converged = false;
  std::vector<StepResult> steps;
};

struct SolveSettings {
  GmresConfig gmres;
  int steps = 3;
};

/// Time steps from exact data at t0 on a prebuilt preconditioner.
std::vector<StepResult> run_steps(const Preconditioner& pc, const TaylorVortexParams& tv, PreconditionSide side,
                                  const SolveSettings& settings);

TableCell run_table_cell(const GridSpec& spec, const TaylorVortexParams& tv, PrecondKind kind,
                         std::optional<PreconditionSide> side = std::nullopt, const SolveSettings& settings = {});

struct TableSpec {
  int n = 64;
  std::vector<double> rhos{100.0, 10.0, 1.0, 0.1, 0.01, 0.0};
  std::vector<BoundaryKind> bcs{BoundaryKind::DirichletAll, BoundaryKind::PeriodicXDirichletY,
                                BoundaryKind::PeriodicAll};
  std::vector<PrecondKind> kinds{PrecondKind::P1, PrecondKind::P3, PrecondKind::P4};
};

/// All cells, ordered by bc, then rho, then kind. Factorizations are shared
/// by the kinds of one (bc, rho) pair.
std::vector<TableCell> taylor_table(const TableSpec& table, const TaylorVortexParams& base,
                                    const SolveSettings& settings = {});

struct ConvergencePoint {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  double velocity_error = 0.0;
  /// log2(error(previous) / error(this)) per halving of h; 0 for the first point.
  double observed_order = 0.0;
};

/// One step from exact data at each n with dt = dt_factor * h^2 / mu.
std::vector<ConvergencePoint> convergence_study(BoundaryKind bc, const std::vector<int>& ns,
                                                const TaylorVortexParams& base, double dt_factor = 0.5,
                                                PrecondKind kind = PrecondKind::P1);

/// GMRES on a seeded random right-hand side with mean-zero pressure.
GmresResult random_solve(const GridSpec& spec, const ProblemParams& params, PrecondKind kind,
                         std::optional<PreconditionSide> side, std::uint64_t seed, const GmresConfig& cfg = {});

}  // namespace macstokes

#endif  // MACSTOKES_EXPERIMENTS_HPP
