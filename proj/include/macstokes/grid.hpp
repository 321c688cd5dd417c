#ifndef MACSTOKES_GRID_HPP
#define MACSTOKES_GRID_HPP

/// \file grid.hpp
/// \brief Staggered (MAC) grid geometry and degree-of-freedom layout.
///
/// Cells are numbered 1..nx by 1..ny. Pressure lives at cell centers
/// ((i-1/2)h, (j-1/2)h). The x-velocity U(i,j) lives on the vertical face
/// x = i*h, y = (j-1/2)h; the y-velocity V(i,j) on the horizontal face
/// x = (i-1/2)h, y = j*h. Unknowns are ordered lexicographically (x fastest,
/// then y) inside each field, and the fields are stacked as (u, v, p).
///
/// In a Dirichlet direction only interior faces are unknowns (i = 1..nx-1).
/// In a periodic direction face nx coincides with face 0 and is stored first,
/// so storage position k of a face row is the face at x = k*h.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "macstokes/types.hpp"

namespace macstokes {

enum class BoundaryKind { DirichletAll, PeriodicXDirichletY, PeriodicAll };

enum class Field { U, V, P };

std::string_view to_string(BoundaryKind bc);
std::string_view to_string(Field f);

/// Parses "dirichlet", "xperiodic" and "periodic" (plus the enum spellings).
BoundaryKind parse_boundary_kind(std::string_view name);

inline bool periodic_x(BoundaryKind bc) { return bc != BoundaryKind::DirichletAll; }
inline bool periodic_y(BoundaryKind bc) { return bc == BoundaryKind::PeriodicAll; }

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Uniform grid with square cells. Construction validates the geometry.
class GridSpec {
 public:
  GridSpec(int nx, int ny, double hx, double hy, BoundaryKind bc);
  /// Square cells of size h.
  GridSpec(int nx, int ny, BoundaryKind bc, double h = 1.0) : GridSpec(nx, ny, h, h, bc) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  BoundaryKind bc() const { return bc_; }
  double length_x() const { return nx_ * h_; }
  double length_y() const { return ny_ * h_; }

  bool operator==(const GridSpec&) const = default;

 private:
  int nx_;
  int ny_;
  double h_;
  BoundaryKind bc_;
};

struct DofLayout {
  Index n_u = 0;
  Index n_v = 0;
  Index n_p = 0;
  Index total = 0;

  Index n_velocity() const { return n_u + n_v; }
  Index offset(Field f) const {
    switch (f) {
      case Field::U: return 0;
      case Field::V: return n_u;
      case Field::P: return n_u + n_v;
    }
    return 0;
  }
  Index size(Field f) const {
    switch (f) {
      case Field::U: return n_u;
      case Field::V: return n_v;
      case Field::P: return n_p;
    }
    return 0;
  }
  bool operator==(const DofLayout&) const = default;
};

DofLayout dof_counts(const GridSpec& spec);

/// Number of stored face columns / rows of a field in each direction.
struct FieldShape {
  int count_x;
  int count_y;
};
FieldShape field_shape(const GridSpec& spec, Field f);

/// Position of (i, j) within its own field block, 0-based. Coordinates are the
/// 1-based staggered labels described above; periodic directions wrap.
/// Throws IndexError for locations that are not unknowns of the field.
Index linear_index(const GridSpec& spec, Field f, int i, int j);

/// Physical coordinates of the storage slot `k` of field `f`.
struct Point {
  double x;
  double y;
};
Point dof_position(const GridSpec& spec, Field f, Index k);

/// Stacked (u, v, p) vector whose length always matches the layout.
class BlockVector {
 public:
  explicit BlockVector(const DofLayout& layout);
  BlockVector(const DofLayout& layout, Vector data);

  const DofLayout& layout() const { return layout_; }
  const Vector& data() const { return data_; }
  Vector& data() { return data_; }

  auto u() { return data_.segment(0, layout_.n_u); }
  auto v() { return data_.segment(layout_.n_u, layout_.n_v); }
  auto velocity() { return data_.head(layout_.n_velocity()); }
  auto p() { return data_.tail(layout_.n_p); }
  auto u() const { return data_.segment(0, layout_.n_u); }
  auto v() const { return data_.segment(layout_.n_u, layout_.n_v); }
  auto velocity() const { return data_.head(layout_.n_velocity()); }
  auto p() const { return data_.tail(layout_.n_p); }

 private:
  DofLayout layout_;
  Vector data_;
};

}  // namespace macstokes

#endif  // MACSTOKES_GRID_HPP
