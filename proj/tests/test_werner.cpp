#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hwbounds/werner.hpp"
#include "oracles.hpp"

using namespace hwb;
using Catch::Approx;

TEST_CASE("WernerParams validation") {
  REQUIRE_NOTHROW(WernerParams(-1.0, 2));
  REQUIRE_NOTHROW(WernerParams(1.0, 7));
  REQUIRE_THROWS_AS(WernerParams(-1.0000001, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(WernerParams(0.2, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(WernerParams(std::nan(""), 3), std::invalid_argument);
  CHECK(WernerParams(0.0, 3).separable());
  CHECK_FALSE(WernerParams(-0.01, 3).separable());
}

TEST_CASE("werner_state matches the projector construction") {
  for (int d = 2; d <= 5; ++d) {
    for (double eta : {-1.0, -0.4, 0.0, 0.3, 1.0}) {
      const Matrix w = werner_state(WernerParams(eta, d)).matrix();
      CHECK(max_abs_diff(w, oracle::werner(eta, d)) < 1e-14);
      CHECK(std::abs((w * flip_operator(d)).trace().real() - eta) < 1e-13);
    }
  }
}

TEST_CASE("spectrum") {
  for (int d = 2; d <= 5; ++d) {
    for (double eta : {-1.0, -0.5, 0.25, 1.0}) {
      const WernerParams p(eta, d);
      const auto s = werner_spectrum(p);
      CHECK(s.n_plus == static_cast<std::size_t>(d * (d + 1) / 2));
      CHECK(s.n_minus == static_cast<std::size_t>(d * (d - 1) / 2));
      CHECK(s.gamma_plus == Approx((1 + eta) / (d * (d + 1.0))).margin(1e-15));
      CHECK(s.gamma_minus == Approx((1 - eta) / (d * (d - 1.0))).margin(1e-15));
      const RealVector ev = eigvalsh(werner_state(p).matrix());
      // Ascending: the smaller eigenvalue fills the first block.
      const double lo = std::min(s.gamma_plus, s.gamma_minus);
      const double hi = std::max(s.gamma_plus, s.gamma_minus);
      const std::size_t n_lo = s.gamma_plus < s.gamma_minus ? s.n_plus : s.n_minus;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        CHECK(ev(i) == Approx(static_cast<std::size_t>(i) < n_lo ? lo : hi).margin(1e-12));
      }
    }
  }
}

TEST_CASE("representation conversions round-trip") {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 6;
    const double eta = u(rng);
    for (RepKind k : {RepKind::alpha, RepKind::weighting, RepKind::expectation, RepKind::anti}) {
      const double v = from_eta(k, eta, d);
      CHECK(to_eta({k, v}, d) == Approx(eta).margin(1e-12));
      const Matrix m = werner_matrix({k, v}, d);
      CHECK(max_abs_diff(m, werner_state(WernerParams(eta, d)).matrix()) < 1e-12);
      for (RepKind k2 : {RepKind::alpha, RepKind::weighting, RepKind::anti}) {
        const auto r = convert_representation({k, v}, k2, d);
        CHECK(r.kind == k2);
        CHECK(to_eta(r, d) == Approx(eta).margin(1e-12));
      }
    }
  }
}

TEST_CASE("representation ranges map to eta extremes") {
  for (int d = 2; d <= 7; ++d) {
    for (RepKind k : {RepKind::alpha, RepKind::weighting, RepKind::expectation, RepKind::anti}) {
      const RepRange r = representation_range(k, d);
      CHECK(to_eta({k, r.separable_extreme}, d) == Approx(1.0).margin(1e-12));
      CHECK(to_eta({k, r.boundary}, d) == Approx(0.0).margin(1e-12));
      CHECK(to_eta({k, r.entangled_extreme}, d) == Approx(-1.0).margin(1e-12));
      CHECK(is_psd(werner_matrix({k, r.separable_extreme}, d)));
    }
  }
  CHECK(representation_range(RepKind::anti, 3).separable_extreme == Approx(-0.5));
  REQUIRE_THROWS_AS(to_eta({RepKind::weighting, 1.5}, 3), std::invalid_argument);
  CHECK(parse_rep_kind("anti") == RepKind::anti);
  REQUIRE_THROWS(parse_rep_kind("beta"));
}

TEST_CASE("Choi matrix of the channel is the Werner state") {
  for (int d = 2; d <= 6; ++d) {
    for (int k = 0; k <= 8; ++k) {
      const WernerParams p(-1.0 + 0.25 * k, d);
      CHECK(max_abs_diff(hw_choi(p).matrix(), werner_state(p).matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("channel is trace preserving and positive on random inputs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int d = 2 + static_cast<int>(seed % 4);
    const WernerParams p(-1.0 + 2.0 * static_cast<double>(seed) / 29.0, d);
    const auto out = hw_apply(p, random_density(d, seed));
    CHECK(std::abs(out.matrix().trace() - Complex(1.0)) < 1e-12);
    CHECK(is_psd(out.matrix()));
  }
}

TEST_CASE("eta = 1/d is the completely depolarising channel") {
  for (int d = 2; d <= 5; ++d) {
    const auto out = hw_apply(WernerParams(1.0 / d, d), random_density(d, 9));
    CHECK(max_abs_diff(out.matrix(), DensityMatrix::maximally_mixed(d).matrix()) < 1e-14);
  }
}

TEST_CASE("teleportation covariance") {
  for (int d = 2; d <= 5; ++d) {
    for (double eta : {-1.0, -0.3, 0.6}) {
      CHECK(check_teleportation_covariance(WernerParams(eta, d), 20, 99) < 1e-10);
    }
  }
}

TEST_CASE("covariance check detects a mismatched channel") {
  const WernerParams p(-0.5, 3), q(-0.45, 3);
  const ChannelFn lhs = [p](const Matrix& x) { return hw_apply_linear(p, x); };
  const ChannelFn rhs = [q](const Matrix& x) { return hw_apply_linear(q, x); };
  CHECK(covariance_deviation(lhs, rhs, 3, 10, 5) > 1e-3);
}

TEST_CASE("qubit channel acts on the Bloch vector as c (x, -y, z)") {
  const Matrix sx = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  const Matrix sy = (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  const Matrix sz = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  for (double eta : {-1.0, -0.2, 0.5, 1.0}) {
    const double c = (2 * eta - 1) / 3.0;
    const auto sf = qubit_shrink_factor(eta);
    CHECK(sf.factor == Approx(std::abs(c)));
    CHECK(sf.reflected == (c > 0));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto rho = random_density(2, seed);
      const Matrix out = hw_apply(WernerParams(eta, 2), rho).matrix();
      auto bloch = [&](const Matrix& m, const Matrix& s) { return (m * s).trace().real(); };
      CHECK(bloch(out, sx) == Approx(c * bloch(rho.matrix(), sx)).margin(1e-12));
      CHECK(bloch(out, sy) == Approx(-c * bloch(rho.matrix(), sy)).margin(1e-12));
      CHECK(bloch(out, sz) == Approx(c * bloch(rho.matrix(), sz)).margin(1e-12));
    }
  }
}

TEST_CASE("haar_unitary is unitary and seeded") {
  const Matrix u = haar_unitary(4, 12);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(max_abs_diff(u, haar_unitary(4, 12)) == 0.0);
  CHECK(max_abs_diff(u, haar_unitary(4, 13)) > 1e-3);
}
