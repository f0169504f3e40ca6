#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "hwbounds/matrix_core.hpp"

namespace hwb {

/// Werner state / Holevo-Werner channel in the expectation representation:
/// eta = Tr[W F] in [-1, 1], local dimension d >= 2.
class WernerParams {
 public:
  WernerParams(double eta, int d);

  double eta() const { return eta_; }
  int d() const { return d_; }
  bool separable() const { return eta_ >= 0.0; }

  friend bool operator==(const WernerParams&, const WernerParams&) = default;

 private:
  double eta_;
  int d_;
};

enum class RepKind { alpha, weighting, expectation, anti };

std::string_view to_string(RepKind kind);
RepKind parse_rep_kind(std::string_view name);

struct WernerRepresentation {
  RepKind kind;
  double value;
};

struct RepRange {
  double separable_extreme;
  double boundary;
  double entangled_extreme;
};

/// Extreme and boundary values of each parametrisation for dimension d.
/// The anti-representation's separable extreme is -(d-1)/(d+1), obtained by
/// matching state matrices (it equals -1/(d-1) only for d = 3).
RepRange representation_range(RepKind kind, int d);

double to_eta(const WernerRepresentation& rep, int d);
double from_eta(RepKind kind, double eta, int d);

WernerRepresentation convert_representation(const WernerRepresentation& from,
                                            RepKind to_kind, int d);

/// State matrix written in the given parametrisation's own formula.
Matrix werner_matrix(const WernerRepresentation& rep, int d);

/// Sum_{ij} |ij><ji| on C^d (x) C^d.
Matrix flip_operator(int d);

/// [(d - eta) I + (d eta - 1) F] / (d^3 - d)
DensityMatrix werner_state(const WernerParams& p);

struct WernerSpectrum {
  double gamma_plus;
  std::size_t n_plus;
  double gamma_minus;
  std::size_t n_minus;
};

WernerSpectrum werner_spectrum(const WernerParams& p);

/// Linear extension of the HW channel: X -> [(d - eta) Tr(X) I + (d eta - 1) X^T] / (d^2 - 1).
Matrix hw_apply_linear(const WernerParams& p, const Matrix& x);
DensityMatrix hw_apply(const WernerParams& p, const DensityMatrix& rho);

/// (I (x) W)(|Phi><Phi|), |Phi> = d^{-1/2} sum_i |ii>.
DensityMatrix hw_choi(const WernerParams& p);

/// Seeded Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix haar_unitary(int d, std::uint64_t seed);
/// Seeded random full-rank density matrix (normalised G G^dagger).
DensityMatrix random_density(int d, std::uint64_t seed);

using ChannelFn = std::function<Matrix(const Matrix&)>;

/// max over trials of || lhs(U rho U^dag) - U^* rhs(rho) U^T ||_max.
double covariance_deviation(const ChannelFn& lhs, const ChannelFn& rhs, int d,
                            int trials, std::uint64_t seed);

double check_teleportation_covariance(const WernerParams& p, int trials,
                                      std::uint64_t seed);

struct ShrinkFactor {
  double factor;
  bool reflected;  // x-z reflection; otherwise (factor > 0) a pi rotation about y
};

/// Qubit HW channel acts on the Bloch vector as r -> c (r_x, -r_y, r_z),
/// c = (2 eta - 1)/3.
ShrinkFactor qubit_shrink_factor(double eta);

}  // namespace hwb
