#include "hwbounds/convex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hwbounds/parallel.hpp"

namespace hwb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kVertexSlack = 1e-10;
constexpr double kGolden = 0.6180339887498949;  // 1/phi

void for_each_subset(std::size_t m, std::size_t k, std::vector<std::size_t>& pick,
                     std::size_t start, const std::function<void()>& visit) {
  if (pick.size() == k) {
    visit();
    return;
  }
  for (std::size_t r = start; r + (k - pick.size()) <= m; ++r) {
    pick.push_back(r);
    for_each_subset(m, k, pick, r + 1, visit);
    pick.pop_back();
  }
}

Polytope slice(const Polytope& poly, double value) {
  // Fix the first coordinate at `value`.
  Polytope out;
  const Eigen::Index n = poly.a.cols();
  out.a = poly.a.rightCols(n - 1);
  out.b = poly.b - poly.a.col(0) * value;
  return out;
}

struct NestedSearch {
  const Objective& f;
  std::size_t n;
  double xtol;
  std::array<double, kMaxPolytopeDim> z{};
  double best_value = kInf;
  std::array<double, kMaxPolytopeDim> best_z{};

  double leaf(std::size_t level, double t) {
    z[level] = t;
    const double v = f(std::span<const double>(z.data(), n));
    const double value = std::isnan(v) ? kInf : v;
    if (value < best_value) {
      best_value = value;
      best_z = z;
    }
    return value;
  }

  double search(std::size_t level, const Polytope& poly) {
    const auto range = coordinate_range(poly, 0);
    if (!range) return kInf;
    const bool last = level + 1 == n;
    auto g = [&](double t) {
      if (last) return leaf(level, t);
      z[level] = t;
      return search(level + 1, slice(poly, t));
    };

    double lo = range->first, hi = range->second;
    double best = std::min(g(lo), g(hi));
    if (hi - lo <= xtol) return std::min(best, g(0.5 * (lo + hi)));

    double c = hi - kGolden * (hi - lo);
    double e = lo + kGolden * (hi - lo);
    double fc = g(c), fe = g(e);
    for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
      if (fc <= fe) {
        hi = e;
        e = c;
        fe = fc;
        c = hi - kGolden * (hi - lo);
        fc = g(c);
      } else {
        lo = c;
        c = e;
        fc = fe;
        e = lo + kGolden * (hi - lo);
        fe = g(e);
      }
    }
    return std::min({best, fc, fe});
  }
};

}  // namespace

bool Polytope::contains(std::span<const double> z, double slack) const {
  return violation(z) <= slack;
}

double Polytope::violation(std::span<const double> z) const {
  if (z.size() != dim()) throw std::invalid_argument("polytope: point dimension mismatch");
  double worst = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    double lhs = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) lhs += a(r, c) * z[static_cast<std::size_t>(c)];
    worst = std::max(worst, lhs - b(r));
  }
  return worst;
}

std::optional<std::pair<double, double>> coordinate_range(const Polytope& poly,
                                                          std::size_t axis) {
  const std::size_t k = poly.dim();
  const auto m = static_cast<std::size_t>(poly.a.rows());
  if (k == 0 || k > kMaxPolytopeDim || axis >= k) {
    throw std::invalid_argument("coordinate_range: bad dimension");
  }
  double lo = kInf, hi = -kInf;
  std::vector<std::size_t> pick;
  Eigen::MatrixXd sys(k, k);
  Eigen::VectorXd rhs(k);
  std::array<double, kMaxPolytopeDim> pt{};
  for_each_subset(m, k, pick, 0, [&] {
    for (std::size_t i = 0; i < k; ++i) {
      sys.row(static_cast<Eigen::Index>(i)) = poly.a.row(static_cast<Eigen::Index>(pick[i]));
      rhs(static_cast<Eigen::Index>(i)) = poly.b(static_cast<Eigen::Index>(pick[i]));
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (!lu.isInvertible()) return;
    const Eigen::VectorXd v = lu.solve(rhs);
    for (std::size_t i = 0; i < k; ++i) pt[i] = v(static_cast<Eigen::Index>(i));
    if (!poly.contains(std::span<const double>(pt.data(), k), kVertexSlack)) return;
    lo = std::min(lo, pt[axis]);
    hi = std::max(hi, pt[axis]);
  });
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

ConvexMinimum minimize_convex(const Objective& f, const Polytope& poly, double xtol) {
  const std::size_t n = poly.dim();
  if (n == 0 || n > kMaxPolytopeDim) {
    throw std::invalid_argument("minimize_convex: dimension must be 1..4");
  }
  if (!coordinate_range(poly, 0)) {
    throw std::invalid_argument("minimize_convex: empty feasible set");
  }
  NestedSearch search{f, n, xtol};
  search.search(0, poly);
  return {search.best_value,
          std::vector<double>(search.best_z.begin(), search.best_z.begin() + n)};
}

namespace {

struct Lattice {
  std::size_t n;
  std::size_t per_axis;
  std::array<double, kMaxPolytopeDim> lower{};
  std::array<double, kMaxPolytopeDim> step{};

  Lattice(std::size_t dim, std::span<const double> lo, std::span<const double> hi,
          std::size_t points)
      : n(dim), per_axis(points) {
    if (lo.size() != dim || hi.size() != dim || points < 2 || dim == 0 ||
        dim > kMaxPolytopeDim) {
      throw std::invalid_argument("grid_scan: bad lattice specification");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      lower[j] = lo[j];
      step[j] = (hi[j] - lo[j]) / static_cast<double>(points - 1);
    }
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t j = 0; j < n; ++j) s *= per_axis;
    return s;
  }

  std::array<double, kMaxPolytopeDim> point(std::size_t flat) const {
    std::array<double, kMaxPolytopeDim> z{};
    for (std::size_t j = n; j-- > 0;) {
      z[j] = lower[j] + step[j] * static_cast<double>(flat % per_axis);
      flat /= per_axis;
    }
    return z;
  }
};

template <bool Parallel>
GridScanResult grid_scan(const Objective& f, const Polytope& poly,
                         std::span<const double> lower, std::span<const double> upper,
                         std::size_t points_per_axis) {
  const Lattice lat(poly.dim(), lower, upper, points_per_axis);
  auto eval = [&](std::size_t flat) {
    const auto z = lat.point(flat);
    const std::span<const double> view(z.data(), lat.n);
    if (!poly.contains(view)) return kInf;
    return f(view);
  };
  auto feasible = [&](std::size_t flat) {
    const auto z = lat.point(flat);
    return poly.contains(std::span<const double>(z.data(), lat.n)) ? 1 : 0;
  };
  kernels::IndexedMin best;
  std::size_t count = 0;
  const std::size_t total = lat.size();
  if constexpr (Parallel) {
    best = kernels::argmin_parallel(total, eval);
    const auto n = static_cast<std::int64_t>(total);
    std::int64_t c = 0;
#pragma omp parallel for reduction(+ : c) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) c += feasible(static_cast<std::size_t>(i));
    count = static_cast<std::size_t>(c);
  } else {
    best = kernels::argmin_serial(total, eval);
    for (std::size_t i = 0; i < total; ++i) count += static_cast<std::size_t>(feasible(i));
  }
  GridScanResult out{best.value, {}, count};
  if (best.index != kernels::kNoIndex) {
    const auto z = lat.point(best.index);
    out.argmin.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(lat.n));
  }
  return out;
}

}  // namespace

GridScanResult grid_scan_serial(const Objective& f, const Polytope& poly,
                                std::span<const double> lower,
                                std::span<const double> upper,
                                std::size_t points_per_axis) {
  return grid_scan<false>(f, poly, lower, upper, points_per_axis);
}

GridScanResult grid_scan_parallel(const Objective& f, const Polytope& poly,
                                  std::span<const double> lower,
                                  std::span<const double> upper,
                                  std::size_t points_per_axis) {
  return grid_scan<true>(f, poly, lower, upper, points_per_axis);
}

}  // namespace hwb
