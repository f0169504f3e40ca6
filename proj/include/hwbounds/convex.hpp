#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hwb {

/// Bounded polytope { z : A z <= b } in at most kMaxPolytopeDim dimensions.
struct Polytope {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;

  std::size_t dim() const { return static_cast<std::size_t>(a.cols()); }
  bool contains(std::span<const double> z, double slack = 1e-12) const;
  /// Largest violation max_r (A z - b)_r, clipped below at 0.
  double violation(std::span<const double> z) const;
};

inline constexpr std::size_t kMaxPolytopeDim = 4;

using Objective = std::function<double(std::span<const double>)>;

/// Min / max of coordinate `axis` over the polytope, found by vertex
/// enumeration. Empty when the polytope is infeasible.
std::optional<std::pair<double, double>> coordinate_range(const Polytope& poly,
                                                          std::size_t axis);

struct ConvexMinimum {
  double value;
  std::vector<double> argmin;
};

/// Minimises a convex (extended-valued) objective over a bounded polytope by
/// nested golden-section search: the outermost coordinate is searched over the
/// polytope's projection, each inner level over the slice fixed by the outer
/// coordinates. Partial minimisation preserves convexity, so every level is a
/// one-dimensional convex search.
ConvexMinimum minimize_convex(const Objective& f, const Polytope& poly,
                              double xtol = 1e-11);

struct GridScanResult {
  double value;
  std::vector<double> argmin;
  std::size_t feasible_points;
};

/// Brute-force scan of a regular lattice with `points_per_axis` points per
/// coordinate over [lower, upper]; points outside the polytope are skipped.
GridScanResult grid_scan_serial(const Objective& f, const Polytope& poly,
                                std::span<const double> lower,
                                std::span<const double> upper,
                                std::size_t points_per_axis);
GridScanResult grid_scan_parallel(const Objective& f, const Polytope& poly,
                                  std::span<const double> lower,
                                  std::span<const double> upper,
                                  std::size_t points_per_axis);

}  // namespace hwb
