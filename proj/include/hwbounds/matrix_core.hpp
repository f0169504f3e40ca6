#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hwb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Tolerances for the DensityMatrix invariants.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Dense Hermitian, unit-trace, positive-semidefinite matrix.
///
/// Construction validates all three invariants and throws
/// std::invalid_argument on violation. The stored matrix is immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  /// Skips validation. Only for results of operations that preserve the
  /// invariants by construction (tensor products, channel outputs).
  static DensityMatrix trusted(Matrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  static DensityMatrix maximally_mixed(std::size_t dim);
  /// |k><k| in the computational basis.
  static DensityMatrix basis_state(std::size_t dim, std::size_t k);

 private:
  struct TrustedTag {};
  DensityMatrix(Matrix entries, TrustedTag) : m_(std::move(entries)) {}
  Matrix m_;
};

/// Largest |m(i,j) - conj(m(j,i))|.
double hermitian_defect(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Transpose over the second subsystem of a (d_a x d_b) bipartite operator.
Matrix partial_transpose(const Matrix& m, std::size_t d_a, std::size_t d_b);
inline Matrix partial_transpose(const DensityMatrix& rho, std::size_t d_a,
                                std::size_t d_b) {
  return partial_transpose(rho.matrix(), d_a, d_b);
}

/// Transpose over every subsystem i with transposed[i] set; dims lists the
/// subsystem dimensions in tensor order.
Matrix partial_transpose(const Matrix& m, const std::vector<std::size_t>& dims,
                         const std::vector<bool>& transposed);

/// Ascending eigenvalues. Rejects input with asymmetry above 1e-9.
RealVector eigvalsh(const Matrix& m);

bool is_psd(const Matrix& m, double tol = kPsdTol);

/// Von Neumann entropy in bits; eigenvalues below 1e-12 contribute nothing.
double vn_entropy(const DensityMatrix& rho);

/// S(rho||sigma) in bits. Returns +infinity when supp(rho) is not contained
/// in supp(sigma): the weight of rho on the numerical kernel of sigma
/// (eigenvalues < 1e-10) exceeds 1e-9.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1/2)||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace hwb
