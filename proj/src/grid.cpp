#include "macstokes/grid.hpp"

#include <cmath>
#include <sstream>

namespace macstokes {

namespace {

int wrap(int k, int n) {
  const int r = k % n;
  return r < 0 ? r + n : r;
}

[[noreturn]] void index_error(Field f, int i, int j) {
  std::ostringstream os;
  os << "linear_index: (" << i << ", " << j << ") is not an unknown of field " << to_string(f);
  throw IndexError(os.str());
}

}  // namespace

std::string_view to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::DirichletAll: return "dirichlet";
    case BoundaryKind::PeriodicXDirichletY: return "xperiodic";
    case BoundaryKind::PeriodicAll: return "periodic";
  }
  return "?";
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::U: return "U";
    case Field::V: return "V";
    case Field::P: return "P";
  }
  return "?";
}

BoundaryKind parse_boundary_kind(std::string_view name) {
  if (name == "dirichlet" || name == "DirichletAll") return BoundaryKind::DirichletAll;
  if (name == "xperiodic" || name == "PeriodicXDirichletY") return BoundaryKind::PeriodicXDirichletY;
  if (name == "periodic" || name == "PeriodicAll") return BoundaryKind::PeriodicAll;
  throw std::invalid_argument("unknown boundary kind '" + std::string(name) +
                              "' (expected dirichlet, xperiodic or periodic)");
}

GridSpec::GridSpec(int nx, int ny, double hx, double hy, BoundaryKind bc)
    : nx_(nx), ny_(ny), h_(hx), bc_(bc) {
  if (nx < 2 || ny < 2) {
    throw std::invalid_argument("GridSpec: nx and ny must be at least 2");
  }
  if (!(hx > 0.0) || !(hy > 0.0)) {
    throw std::invalid_argument("GridSpec: mesh sizes must be positive");
  }
  if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy)) {
    throw std::invalid_argument("GridSpec: only square cells (hx == hy) are supported");
  }
}

FieldShape field_shape(const GridSpec& spec, Field f) {
  const int nx = spec.nx();
  const int ny = spec.ny();
  switch (f) {
    case Field::U: return {periodic_x(spec.bc()) ? nx : nx - 1, ny};
    case Field::V: return {nx, periodic_y(spec.bc()) ? ny : ny - 1};
    case Field::P: return {nx, ny};
  }
  return {0, 0};
}

DofLayout dof_counts(const GridSpec& spec) {
  DofLayout d;
  const auto su = field_shape(spec, Field::U);
  const auto sv = field_shape(spec, Field::V);
  d.n_u = Index(su.count_x) * su.count_y;
  d.n_v = Index(sv.count_x) * sv.count_y;
  d.n_p = Index(spec.nx()) * spec.ny();
  d.total = d.n_u + d.n_v + d.n_p;
  return d;
}

Index linear_index(const GridSpec& spec, Field f, int i, int j) {
  const int nx = spec.nx();
  const int ny = spec.ny();
  const bool px = periodic_x(spec.bc());
  const bool py = periodic_y(spec.bc());
  int kx = 0;
  int ky = 0;
  switch (f) {
    case Field::U:
      if (px) {
        kx = wrap(i, nx);
      } else {
        if (i < 1 || i > nx - 1) index_error(f, i, j);
        kx = i - 1;
      }
      if (py) {
        ky = wrap(j - 1, ny);
      } else {
        if (j < 1 || j > ny) index_error(f, i, j);
        ky = j - 1;
      }
      break;
    case Field::V:
      if (px) {
        kx = wrap(i - 1, nx);
      } else {
        if (i < 1 || i > nx) index_error(f, i, j);
        kx = i - 1;
      }
      if (py) {
        ky = wrap(j, ny);
      } else {
        if (j < 1 || j > ny - 1) index_error(f, i, j);
        ky = j - 1;
      }
      break;
    case Field::P:
      if (px) {
        kx = wrap(i - 1, nx);
      } else {
        if (i < 1 || i > nx) index_error(f, i, j);
        kx = i - 1;
      }
      if (py) {
        ky = wrap(j - 1, ny);
      } else {
        if (j < 1 || j > ny) index_error(f, i, j);
        ky = j - 1;
      }
      break;
  }
  return Index(ky) * field_shape(spec, f).count_x + kx;
}

Point dof_position(const GridSpec& spec, Field f, Index k) {
  const auto shape = field_shape(spec, f);
  const double h = spec.h();
  const auto kx = double(k % shape.count_x);
  const auto ky = double(k / shape.count_x);
  switch (f) {
    case Field::U:
      return {(periodic_x(spec.bc()) ? kx : kx + 1.0) * h, (ky + 0.5) * h};
    case Field::V:
      return {(kx + 0.5) * h, (periodic_y(spec.bc()) ? ky : ky + 1.0) * h};
    case Field::P:
      return {(kx + 0.5) * h, (ky + 0.5) * h};
  }
  return {0.0, 0.0};
}

BlockVector::BlockVector(const DofLayout& layout) : layout_(layout), data_(Vector::Zero(layout.total)) {}

BlockVector::BlockVector(const DofLayout& layout, Vector data) : layout_(layout), data_(std::move(data)) {
  if (data_.size() != layout_.total) {
    throw std::invalid_argument("BlockVector: data length does not match the layout");
  }
}

}  // namespace macstokes
