#include "hwbounds/werner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/QR>

namespace hwb {

namespace {

constexpr double kRangeSlack = 1e-12;

Matrix identity(int n) { return Matrix::Identity(n, n); }

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("d must be >= 2, got " + std::to_string(d));
}

}  // namespace

WernerParams::WernerParams(double eta, int d) : eta_(eta), d_(d) {
  if (!(eta >= -1.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta out of range [-1, 1]: " + std::to_string(eta));
  }
  require_dim(d);
}

std::string_view to_string(RepKind kind) {
  switch (kind) {
    case RepKind::alpha: return "alpha";
    case RepKind::weighting: return "weighting";
    case RepKind::expectation: return "expectation";
    case RepKind::anti: return "anti";
  }
  return "?";
}

RepKind parse_rep_kind(std::string_view name) {
  for (RepKind k : {RepKind::alpha, RepKind::weighting, RepKind::expectation,
                    RepKind::anti}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown representation '" + std::string(name) + "'");
}

RepRange representation_range(RepKind kind, int d) {
  require_dim(d);
  const double dd = d;
  switch (kind) {
    case RepKind::alpha: return {-1.0, 1.0 / dd, 1.0};
    case RepKind::weighting: return {0.0, 0.5, 1.0};
    case RepKind::expectation: return {1.0, 0.0, -1.0};
    case RepKind::anti: return {-(dd - 1.0) / (dd + 1.0), 1.0 / (dd + 1.0), 1.0};
  }
  throw std::invalid_argument("bad representation kind");
}

namespace {

void require_in_range(const WernerRepresentation& rep, int d) {
  const RepRange r = representation_range(rep.kind, d);
  const double lo = std::min(r.separable_extreme, r.entangled_extreme);
  const double hi = std::max(r.separable_extreme, r.entangled_extreme);
  if (!(rep.value >= lo - kRangeSlack && rep.value <= hi + kRangeSlack)) {
    throw std::invalid_argument(std::string(to_string(rep.kind)) +
                                " value out of range: " + std::to_string(rep.value));
  }
}

}  // namespace

double to_eta(const WernerRepresentation& rep, int d) {
  require_in_range(rep, d);
  const double dd = d;
  const double v = rep.value;
  double eta = 0.0;
  switch (rep.kind) {
    case RepKind::alpha: eta = (1.0 - v * dd) / (dd - v); break;
    case RepKind::weighting: eta = 1.0 - 2.0 * v; break;
    case RepKind::expectation: eta = v; break;
    case RepKind::anti: eta = (1.0 - v * (dd + 1.0)) / dd; break;
  }
  return std::clamp(eta, -1.0, 1.0);
}

double from_eta(RepKind kind, double eta, int d) {
  const WernerParams p(eta, d);
  const double dd = d;
  switch (kind) {
    case RepKind::alpha: return (1.0 - eta * dd) / (dd - eta);
    case RepKind::weighting: return (1.0 - eta) / 2.0;
    case RepKind::expectation: return eta;
    case RepKind::anti: return (1.0 - eta * dd) / (dd + 1.0);
  }
  throw std::invalid_argument("bad representation kind");
}

WernerRepresentation convert_representation(const WernerRepresentation& from,
                                            RepKind to_kind, int d) {
  return {to_kind, from_eta(to_kind, to_eta(from, d), d)};
}

Matrix flip_operator(int d) {
  require_dim(d);
  const int n = d * d;
  Matrix f = Matrix::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  }
  return f;
}

Matrix werner_matrix(const WernerRepresentation& rep, int d) {
  require_in_range(rep, d);
  const double dd = d;
  const double v = rep.value;
  const Matrix id = identity(d * d);
  const Matrix f = flip_operator(d);
  switch (rep.kind) {
    case RepKind::alpha:
      return (id - v * f) / (dd * dd - dd * v);
    case RepKind::weighting:
      return (1.0 - v) / (dd * dd + dd) * (id + f) + v / (dd * dd - dd) * (id - f);
    case RepKind::expectation:
      return ((dd - v) * id + (dd * v - 1.0) * f) / (dd * dd * dd - dd);
    case RepKind::anti:
      return v * (id - dd * f) / (dd * dd * (dd - 1.0)) + id / (dd * dd);
  }
  throw std::invalid_argument("bad representation kind");
}

DensityMatrix werner_state(const WernerParams& p) {
  return DensityMatrix::trusted(
      werner_matrix({RepKind::expectation, p.eta()}, p.d()));
}

WernerSpectrum werner_spectrum(const WernerParams& p) {
  const auto d = static_cast<std::size_t>(p.d());
  const double dd = p.d();
  return {(1.0 + p.eta()) / (dd * (dd + 1.0)), d * (d + 1) / 2,
          (1.0 - p.eta()) / (dd * (dd - 1.0)), d * (d - 1) / 2};
}

Matrix hw_apply_linear(const WernerParams& p, const Matrix& x) {
  const int d = p.d();
  if (x.rows() != d || x.cols() != d) {
    throw DimensionMismatch("hw_apply: input dimension " + std::to_string(x.rows()) +
                            " does not match d = " + std::to_string(d));
  }
  const double dd = d;
  const double eta = p.eta();
  return ((dd - eta) * x.trace() * identity(d) + (dd * eta - 1.0) * x.transpose()) /
         (dd * dd - 1.0);
}

DensityMatrix hw_apply(const WernerParams& p, const DensityMatrix& rho) {
  return DensityMatrix::trusted(hw_apply_linear(p, rho.matrix()));
}

DensityMatrix hw_choi(const WernerParams& p) {
  const int d = p.d();
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix eij = Matrix::Zero(d, d);
      eij(i, j) = 1.0;
      // |i><j| (x) W(|i><j|)
      choi.block(i * d, j * d, d, d) = hw_apply_linear(p, eij) / static_cast<double>(d);
    }
  }
  return DensityMatrix::trusted(std::move(choi));
}

namespace {

Matrix ginibre(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

}  // namespace

Matrix haar_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix g = ginibre(d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0);
    q.col(k) *= phase;
  }
  return q;
}

DensityMatrix random_density(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix g = ginibre(d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::trusted(std::move(rho));
}

double covariance_deviation(const ChannelFn& lhs, const ChannelFn& rhs, int d,
                            int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::mt19937_64 seeds(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Matrix u = haar_unitary(d, seeds());
    const Matrix rho = random_density(d, seeds()).matrix();
    const Matrix left = lhs(u * rho * u.adjoint());
    const Matrix right = u.conjugate() * rhs(rho) * u.transpose();
    worst = std::max(worst, max_abs_diff(left, right));
  }
  return worst;
}

double check_teleportation_covariance(const WernerParams& p, int trials,
                                      std::uint64_t seed) {
  const ChannelFn channel = [p](const Matrix& x) { return hw_apply_linear(p, x); };
  return covariance_deviation(channel, channel, p.d(), trials, seed);
}

ShrinkFactor qubit_shrink_factor(double eta) {
  const WernerParams p(eta, 2);
  const double c = (2.0 * p.eta() - 1.0) / 3.0;
  return {std::abs(c), c > 0.0};
}

}  // namespace hwb
