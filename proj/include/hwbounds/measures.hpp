#pragma once

#include <cstddef>
#include <vector>

#include "hwbounds/convex.hpp"
#include "hwbounds/matrix_core.hpp"
#include "hwbounds/werner.hpp"

namespace hwb {

/// Point of the n-copy family sigma_x^n invariant under U_i (x) U_i on each
/// copy: x_k is the total weight on terms with k copies of W_{1,d} and n-k
/// copies of W_{-1,d}.
class SymmetricPPTPoint {
 public:
  explicit SymmetricPPTPoint(std::vector<double> x);

  std::size_t n() const { return x_.size() - 1; }
  const std::vector<double>& x() const { return x_; }
  /// Length 2^n; bit j of the index set means copy j carries W_{1,d}.
  /// Each entry is x_k / C(n, k) with k the popcount of the index.
  std::vector<double> expanded() const;

 private:
  std::vector<double> x_;
};

struct TwoCopySolution {
  double theta;  // NaN when the value did not come from the closed form
  double x0;
  double x1;
  double value;  // E_R(W^{(x)2}) / 2 in bits
};

double binomial(std::size_t n, std::size_t k);

/// 0 for eta >= 0, else (1+eta)/2 log2(1+eta) + (1-eta)/2 log2(1-eta).
double ree_one_copy(const WernerParams& p);

/// Regularised relative entropy to PPT states; three branches split at
/// eta = 0 and eta = -2/d.
double rppt_regularised(const WernerParams& p);

/// Largest d for which sigma_x_state(n, ., d) is built (d^{2n} <= 4096).
inline constexpr std::size_t kMaxSigmaDim = 4096;

DensityMatrix sigma_x_state(const SymmetricPPTPoint& x, int d);

/// M^{(x)n} x' >= -1e-10 with M = [[-1, 1], [1, (d-1)/(d+1)]].
bool ppt_cone_check(const SymmetricPPTPoint& x, int d);
/// The vector M^{(x)n} x' itself.
std::vector<double> ppt_cone_rows(const SymmetricPPTPoint& x, int d);

/// y_i = C(n,i) (1-eta)^{n-i} (1+eta)^i / 2^n: the spectrum weights of
/// W^{(x)n} grouped by number of symmetric factors.
std::vector<double> ncopy_weights(std::size_t n, double eta);

/// sum_i y_i log2(y_i / x_i) = S(W^{(x)n} || sigma_x^n); +inf if some
/// x_i = 0 with y_i > 0.
double ncopy_objective(double eta, const SymmetricPPTPoint& x);

/// Closed-form minimiser of the two-copy problem. Requires d >= 3 and
/// eta <= -2/d.
///
/// The middle weight is y_1 = (1-eta)(1+eta)/2. A (1-eta)^2 coefficient in
/// that slot does not reproduce the closed-form minimiser below.
TwoCopySolution ree_two_copy_closed(const WernerParams& p);

/// The four constraints of the two-copy problem plus x0, x1 >= 0, written as
/// A z <= b over z = (x0, x1).
Polytope two_copy_polytope(int d);

/// Independent numerical minimiser for the two-copy problem (eta <= 0).
/// Coarse parallel grid scan followed by nested golden-section refinement.
TwoCopySolution ree_two_copy_numeric(const WernerParams& p, double tol = 1e-10);

/// Dispatcher: 0 for eta >= 0, the one-copy value for -2/d <= eta < 0
/// (additivity region, and all of eta < 0 when d = 2), the closed form below.
double ree_two_copy(const WernerParams& p);

/// Simplex intersected with the linear PPT cone, over z = (x_0..x_{n-1}).
Polytope ncopy_ppt_polytope(std::size_t n, int d);

/// min_x ncopy_objective / n over the PPT-constrained symmetric family,
/// n in {1, 2, 3}. For n = 3 this is an E_P (PPT) value only: separability
/// of the n = 3 family members is not established.
double rppt_ncopy_numeric(std::size_t n, const WernerParams& p, double tol = 1e-10);

/// Squashed-entanglement bound from the purification of W:
/// log2 d + (1+eta)/4 log2[(1+eta)/(d(d+1))] + (1-eta)/4 log2[(1-eta)/(d(d-1))],
/// clamped at 0, and 0 for eta > 0.
double squashed_purification_bound(const WernerParams& p);

/// Convexity bound through W = (1+eta) W_0 + (-eta) W_{-1} on [-1, 0].
double squashed_convexity_bound(const WernerParams& p);

}  // namespace hwb
