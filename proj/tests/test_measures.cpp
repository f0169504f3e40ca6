#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "hwbounds/measures.hpp"
#include "oracles.hpp"

using namespace hwb;
using Catch::Approx;

namespace {

// Frozen from oracle::two_copy_min (1000-point grid + pattern search),
// cross-checked against an SLSQP solve.
struct Frozen {
  double eta;
  int d;
  double value;
};
constexpr Frozen kTwoCopy[] = {
    {-1.0, 3, 0.792481250360531},  // = log2(3) / 2
    {-1.0, 4, 0.707518749639353},  // = log2(8/3) / 2
    {-1.0, 5, 0.660964047443628},
    {-0.8, 5, 0.463688722623526},
    {-0.6, 6, 0.264815582307137},
    {-0.9, 8, 0.516286315982696},
    {-0.7, 3, 0.389672761415071},
};

double plogp(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

}  // namespace

TEST_CASE("one-copy REE") {
  CHECK(ree_one_copy(WernerParams(-1.0, 3)) == Approx(1.0));
  CHECK(ree_one_copy(WernerParams(0.0, 3)) == 0.0);
  CHECK(ree_one_copy(WernerParams(0.7, 3)) == 0.0);
  CHECK(ree_one_copy(WernerParams(-0.5, 3)) == Approx(0.18872187554086717).epsilon(1e-14));
  for (double eta : {-0.9, -0.4, -0.1}) {
    const double expect = 0.5 * (plogp(1 + eta) + plogp(1 - eta));
    for (int d = 2; d <= 8; ++d) CHECK(ree_one_copy(WernerParams(eta, d)) == Approx(expect));
  }
}

TEST_CASE("regularised RPPT branches") {
  CHECK(rppt_regularised(WernerParams(-1.0, 4)) == Approx(std::log2(1.5)).epsilon(1e-14));
  CHECK(rppt_regularised(WernerParams(-1.0, 2)) == Approx(1.0));
  CHECK(rppt_regularised(WernerParams(0.3, 5)) == 0.0);
  for (int d = 3; d <= 8; ++d) {
    const double kink = -2.0 / d;
    const WernerParams above(kink + 1e-9, d), below(kink - 1e-9, d);
    CHECK(rppt_regularised(above) == Approx(ree_one_copy(above)).margin(1e-12));
    CHECK(rppt_regularised(below) == Approx(rppt_regularised(above)).margin(1e-8));
    const WernerParams mid((kink - 1.0) / 2.0, d);
    CHECK(rppt_regularised(mid) < ree_one_copy(mid));
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(7, 0) == 1.0);
  CHECK(binomial(3, 4) == 0.0);
}

TEST_CASE("n-copy weights and objective") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (double eta : {-1.0, -0.3, 0.5}) {
      const auto y = ncopy_weights(n, eta);
      double s = 0.0;
      for (double v : y) s += v;
      CHECK(s == Approx(1.0).epsilon(1e-14));
      CHECK(ncopy_objective(eta, SymmetricPPTPoint(y)) == Approx(0.0).margin(1e-14));
    }
  }
  CHECK(std::isinf(ncopy_objective(0.0, SymmetricPPTPoint({1.0, 0.0}))));
  REQUIRE_THROWS(SymmetricPPTPoint({0.5, 0.6}));
  REQUIRE_THROWS(SymmetricPPTPoint({1.2, -0.2}));
}

TEST_CASE("expanded symmetric point") {
  const SymmetricPPTPoint p({0.2, 0.5, 0.3});
  const auto e = p.expanded();
  REQUIRE(e.size() == 4);
  CHECK(e[0] == Approx(0.2));
  CHECK(e[1] == Approx(0.25));
  CHECK(e[2] == Approx(0.25));
  CHECK(e[3] == Approx(0.3));
}

TEST_CASE("sigma_x_state is a state of the right size and obeys the size guard") {
  const auto s = sigma_x_state(SymmetricPPTPoint({0.3, 0.4, 0.3}), 3);
  CHECK(s.dim() == 81);
  CHECK(std::abs(s.matrix().trace() - Complex(1.0)) < 1e-12);
  REQUIRE_THROWS_AS(sigma_x_state(SymmetricPPTPoint({0.25, 0.25, 0.25, 0.25}), 5),
                    std::invalid_argument);
}

TEST_CASE("one-copy PPT cone is the eta >= 0 half") {
  // n = 1: x = (weight on W-, weight on W+); PPT iff the W- weight <= 1/2.
  for (int d = 2; d <= 6; ++d) {
    CHECK(ppt_cone_check(SymmetricPPTPoint({0.5, 0.5}), d));
    CHECK(ppt_cone_check(SymmetricPPTPoint({0.1, 0.9}), d));
    CHECK_FALSE(ppt_cone_check(SymmetricPPTPoint({0.51, 0.49}), d));
  }
}

TEST_CASE("two-copy PPT cone agrees with the spectral test") {
  std::mt19937_64 rng(404);
  int ppt = 0, npt = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int d = 3 + trial % 3;
    const auto x = oracle::simplex_point(rng, 3);
    const bool cone = ppt_cone_check(SymmetricPPTPoint(x), d);
    CHECK(cone == oracle::two_copy_sigma_is_ppt(x[0], x[1], x[2], d));
    (cone ? ppt : npt)++;
  }
  CHECK(ppt > 10);
  CHECK(npt > 10);
}

TEST_CASE("two-copy closed form against the brute-force oracle") {
  for (const auto& f : kTwoCopy) {
    const WernerParams p(f.eta, f.d);
    CHECK(ree_two_copy_closed(p).value == Approx(f.value).margin(1e-9));
    CHECK(ree_two_copy_numeric(p).value == Approx(f.value).margin(1e-9));
    CHECK(ree_two_copy(p) == Approx(f.value).margin(1e-9));
  }
  for (int d = 3; d <= 8; ++d) {
    CHECK(ree_two_copy(WernerParams(-1.0, d)) ==
          Approx(0.5 * std::log2(2.0 * d / (d - 1.0))).margin(1e-12));
  }
  // Spot check the oracle itself against the frozen table.
  CHECK(oracle::two_copy_min(-0.8, 5, 300) == Approx(kTwoCopy[3].value).margin(1e-10));
}

TEST_CASE("two-copy closed-form minimiser is feasible and optimal") {
  for (int d = 3; d <= 8; ++d) {
    for (double eta = -1.0; eta <= -2.0 / d; eta += 0.05) {
      const auto s = ree_two_copy_closed(WernerParams(eta, d));
      const oracle::TwoCopy prob{eta, d};
      CHECK(two_copy_polytope(d).contains(std::vector<double>{s.x0, s.x1}, 1e-10));
      CHECK(s.value == Approx(prob.objective(s.x0, s.x1)).margin(1e-12));
      CHECK(ppt_cone_check(SymmetricPPTPoint({s.x0, s.x1, 1.0 - s.x0 - s.x1}), d));
    }
  }
  REQUIRE_THROWS(ree_two_copy_closed(WernerParams(-0.5, 3)));
  REQUIRE_THROWS(ree_two_copy_closed(WernerParams(-1.0, 2)));
}

TEST_CASE("two-copy dispatcher regions") {
  CHECK(ree_two_copy(WernerParams(0.0, 4)) == 0.0);
  CHECK(ree_two_copy(WernerParams(0.5, 4)) == 0.0);
  CHECK(ree_two_copy(WernerParams(-0.8, 2)) == ree_one_copy(WernerParams(-0.8, 2)));
  CHECK(ree_two_copy(WernerParams(-0.3, 5)) == ree_one_copy(WernerParams(-0.3, 5)));
  for (int d = 3; d <= 8; ++d) {
    // Continuous across eta = -2/d.
    const double kink = -2.0 / d;
    CHECK(ree_two_copy(WernerParams(kink - 1e-9, d)) ==
          Approx(ree_one_copy(WernerParams(kink, d))).margin(1e-7));
    // Numeric solver agrees in the additive region too.
    CHECK(ree_two_copy_numeric(WernerParams(kink / 2, d)).value ==
          Approx(ree_one_copy(WernerParams(kink / 2, d))).margin(1e-8));
  }
}

TEST_CASE("subadditivity chain") {
  for (int d = 3; d <= 5; ++d) {
    for (double eta : {-1.0, -0.8, -0.55, -0.3, -0.1}) {
      const WernerParams p(eta, d);
      const double e_inf = rppt_regularised(p);
      const double e3 = rppt_ncopy_numeric(3, p);
      const double e2 = ree_two_copy(p);
      const double e1 = ree_one_copy(p);
      CHECK(e_inf <= e3 + 1e-8);
      CHECK(e3 <= e2 + 1e-8);
      CHECK(e2 <= e1 + 1e-8);
      CHECK(rppt_ncopy_numeric(1, p) == Approx(e1).margin(1e-8));
      CHECK(rppt_ncopy_numeric(2, p) == Approx(e2).margin(1e-8));
    }
  }
  REQUIRE_THROWS(rppt_ncopy_numeric(4, WernerParams(-1.0, 3)));
}

TEST_CASE("squashed-entanglement bounds") {
  for (int d = 3; d <= 8; ++d) {
    const WernerParams p(-1.0, d);
    CHECK(squashed_purification_bound(p) == Approx(ree_two_copy(p)).margin(1e-9));
    CHECK(squashed_purification_bound(WernerParams(0.3, d)) == 0.0);
    CHECK(squashed_convexity_bound(WernerParams(0.0, d)) == 0.0);
  }
  CHECK(squashed_convexity_bound(WernerParams(-1.0, 4)) == Approx(std::log2(1.5)));
  CHECK(squashed_convexity_bound(WernerParams(-1.0, 3)) == Approx(0.5 * std::log2(3.0)));
  CHECK(squashed_convexity_bound(WernerParams(-0.5, 6)) == Approx(0.5 * std::log2(8.0 / 6.0)));
  // eta = 0 leaves the positive residue of the purification formula.
  CHECK(squashed_purification_bound(WernerParams(0.0, 3)) ==
        Approx(0.25 * std::log2(9.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("every measure is non-increasing in eta") {
  for (int d = 2; d <= 8; ++d) {
    double prev[5] = {1e9, 1e9, 1e9, 1e9, 1e9};
    for (int i = 0; i <= 100; ++i) {
      const WernerParams p(-1.0 + 0.02 * i, d);
      const double cur[5] = {ree_one_copy(p), ree_two_copy(p), rppt_regularised(p),
                             squashed_purification_bound(p), squashed_convexity_bound(p)};
      for (int m = 0; m < 5; ++m) {
        CHECK(cur[m] <= prev[m] + 1e-12);
        CHECK(cur[m] >= 0.0);
        prev[m] = cur[m];
      }
    }
  }
}
