#include "hwbounds/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace hwb {

namespace {

constexpr double kAsymmetryReject = 1e-9;
constexpr double kEntropyCutoff = 1e-12;
constexpr double kKernelEigenvalue = 1e-10;
constexpr double kKernelWeight = 1e-9;

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a) + " vs " + std::to_string(b) +
                            ")");
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> solve(const Matrix& m, bool vectors) {
  Matrix h = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix>(
      h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  if (hermitian_defect(m_) > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0)) > kTraceTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  if (!is_psd(m_, kPsdTol)) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::trusted(Matrix entries) {
  return DensityMatrix(std::move(entries), TrustedTag{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return trusted(Matrix::Identity(n, n) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::invalid_argument("basis index out of range");
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(n, n);
  m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  return trusted(std::move(m));
}

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.matrix(), b.matrix()));
}

Matrix partial_transpose(const Matrix& m, std::size_t d_a, std::size_t d_b) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols() || d_a * d_b != n) {
    throw DimensionMismatch("partial_transpose: d_A*d_B = " +
                            std::to_string(d_a * d_b) +
                            " does not match matrix dimension " +
                            std::to_string(n));
  }
  Matrix out(m.rows(), m.cols());
  // <i k| M^{T_B} |j l> = <i l| M |j k>
  for (std::size_t i = 0; i < d_a; ++i) {
    for (std::size_t k = 0; k < d_b; ++k) {
      const auto row = static_cast<Eigen::Index>(i * d_b + k);
      for (std::size_t j = 0; j < d_a; ++j) {
        for (std::size_t l = 0; l < d_b; ++l) {
          const auto col = static_cast<Eigen::Index>(j * d_b + l);
          out(row, col) = m(static_cast<Eigen::Index>(i * d_b + l),
                            static_cast<Eigen::Index>(j * d_b + k));
        }
      }
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& m, const std::vector<std::size_t>& dims,
                         const std::vector<bool>& transposed) {
  if (dims.size() != transposed.size()) {
    throw DimensionMismatch("partial_transpose: dims and transposed differ in length");
  }
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != n) {
    throw DimensionMismatch("partial_transpose: subsystem dimensions multiply to " +
                            std::to_string(n) + ", matrix dimension is " +
                            std::to_string(m.rows()));
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      // Swap the row and column digits of each transposed subsystem.
      std::size_t src_r = 0, src_c = 0, stride = 1, rr = r, cc = c;
      for (std::size_t k = dims.size(); k-- > 0;) {
        const std::size_t dr = rr % dims[k], dc = cc % dims[k];
        rr /= dims[k];
        cc /= dims[k];
        src_r += (transposed[k] ? dc : dr) * stride;
        src_c += (transposed[k] ? dr : dc) * stride;
        stride *= dims[k];
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(static_cast<Eigen::Index>(src_r), static_cast<Eigen::Index>(src_c));
    }
  }
  return out;
}

RealVector eigvalsh(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigvalsh: not square");
  if (hermitian_defect(m) > kAsymmetryReject) {
    throw std::invalid_argument("eigvalsh: matrix is not Hermitian");
  }
  // Real symmetric input (all Werner-family states) takes the real solver,
  // several times faster than the complex one at d^4 sizes.
  if (m.imag().isZero(0.0)) {
    const Eigen::MatrixXd re = m.real();
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(re, Eigen::EigenvaluesOnly).eigenvalues();
  }
  return solve(m, false).eigenvalues();
}

bool is_psd(const Matrix& m, double tol) {
  const RealVector ev = eigvalsh(m);
  return ev.size() == 0 || ev(0) >= -tol;
}

double vn_entropy(const DensityMatrix& rho) {
  const RealVector ev = eigvalsh(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > kEntropyCutoff) s -= ev(i) * std::log2(ev(i));
  }
  return std::max(s, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
  const auto es = solve(sigma.matrix(), true);
  const RealVector& q = es.eigenvalues();
  const Matrix& v = es.eigenvectors();

  // Diagonal of rho in sigma's eigenbasis.
  const Matrix rho_in_sigma = v.adjoint() * rho.matrix() * v;
  double kernel_weight = 0.0;
  double cross = 0.0;  // -Tr(rho log2 sigma)
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    const double w = rho_in_sigma(j, j).real();
    if (q(j) < kKernelEigenvalue) {
      kernel_weight += w;
    } else {
      cross -= w * std::log2(q(j));
    }
  }
  if (kernel_weight > kKernelWeight) {
    return std::numeric_limits<double>::infinity();
  }
  const double s = -vn_entropy(rho) + cross;
  return std::max(s, 0.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace_distance");
  const RealVector ev = eigvalsh(a.matrix() - b.matrix());
  return std::clamp(0.5 * ev.cwiseAbs().sum(), 0.0, 1.0);
}

}  // namespace hwb
