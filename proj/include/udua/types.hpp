#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace udua {

/// Execution policy for the parallel kernels. `serial` runs the same
/// algorithm without OpenMP; results are bit-identical across policies.
enum class Exec { serial, parallel };

/// Rasterised service region: n_y x n_x square grids of side delta_d meters.
/// Grid ordinals are 1-based in both axes, matching the (X_i, Y_i) and
/// (x_j, y_j) conventions used throughout.
struct GridRegion {
  int n_y = 9;
  int n_x = 9;
  double delta_d = 10.0;

  int cell_count() const { return n_y * n_x; }
  bool contains(int x, int y) const {
    return x >= 1 && x <= n_x && y >= 1 && y <= n_y;
  }
  void validate() const {
    if (n_y < 1 || n_x < 1) throw std::invalid_argument("region: grid counts must be >= 1");
    if (!(delta_d > 0.0)) throw std::invalid_argument("region: delta_d must be > 0");
  }
  bool operator==(const GridRegion&) const = default;
};

/// A grid position (x = column ordinal in [1, n_x], y = row ordinal in [1, n_y]).
struct GridPos {
  int x = 1;
  int y = 1;
  auto operator<=>(const GridPos&) const = default;
};

/// UAV-BS positions, one grid cell per UAV. Duplicates are allowed; two
/// UAVs may hover over the same cell.
struct Deployment {
  std::vector<GridPos> positions;

  int uav_count() const { return static_cast<int>(positions.size()); }
  void validate(const GridRegion& region) const {
    for (const auto& p : positions)
      if (!region.contains(p.x, p.y))
        throw std::invalid_argument("deployment: position outside region");
  }
  auto operator<=>(const Deployment&) const = default;
};

/// Cell linear index in row-major (y, x) order; the canonical enumeration
/// order for deployments and tie-breaking.
inline int cell_index(const GridRegion& region, const GridPos& p) {
  return (p.y - 1) * region.n_x + (p.x - 1);
}
inline GridPos cell_at(const GridRegion& region, int index) {
  return GridPos{index % region.n_x + 1, index / region.n_x + 1};
}

}  // namespace udua
