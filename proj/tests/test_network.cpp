#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hwbounds/capacity.hpp"
#include "hwbounds/measures.hpp"
#include "hwbounds/network.hpp"
#include "oracles.hpp"

using namespace hwb;
using Catch::Approx;

namespace {

QuantumNetwork diamond(double eta = -1.0, int d = 4) {
  return QuantumNetwork({"A", "C", "D", "B"},
                        {{"A", "C", WernerParams(eta, d)},
                         {"A", "D", WernerParams(eta, d)},
                         {"C", "B", WernerParams(eta, d)},
                         {"D", "B", WernerParams(eta, d)}},
                        "A", "B");
}

QuantumNetwork path_graph(const std::vector<double>& etas, int d) {
  std::vector<std::string> nodes{"A"};
  for (std::size_t i = 1; i < etas.size(); ++i) nodes.push_back("r" + std::to_string(i));
  nodes.push_back("B");
  std::vector<NetworkEdge> edges;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    edges.push_back({nodes[i], nodes[i + 1], WernerParams(etas[i], d)});
  }
  return QuantumNetwork(nodes, edges, "A", "B");
}

// Node 0 is A and node n-1 is B, matching oracle::Graph.
QuantumNetwork random_network(std::mt19937_64& rng, bool iso) {
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> eta(-1.0, 0.3);
  std::uniform_int_distribution<int> dim(2, 7);
  const int n = size(rng);
  const oracle::Graph g = oracle::random_graph(rng, n, 0.45);
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("v" + std::to_string(i));
  const int shared_d = dim(rng);
  std::vector<NetworkEdge> edges;
  for (std::size_t e = 0; e < g.u.size(); ++e) {
    edges.push_back({nodes[g.u[e]], nodes[g.v[e]], WernerParams(eta(rng), iso ? shared_d : dim(rng))});
  }
  return QuantumNetwork(nodes, edges, nodes.front(), nodes.back());
}

oracle::Graph as_graph(const QuantumNetwork& net, const std::vector<double>& w) {
  oracle::Graph g{static_cast<int>(net.nodes().size()), {}, {}, w};
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    g.u.push_back(static_cast<int>(net.endpoint_u(e)));
    g.v.push_back(static_cast<int>(net.endpoint_v(e)));
  }
  return g;
}

}  // namespace

TEST_CASE("network validation") {
  const WernerParams p(-1.0, 3);
  REQUIRE_THROWS_WITH(QuantumNetwork({"A", "B"}, {{"A", "X", p}}, "A", "B"),
                      Catch::Matchers::ContainsSubstring("edge 0") &&
                          Catch::Matchers::ContainsSubstring("'X'"));
  REQUIRE_THROWS_WITH(QuantumNetwork({"A", "B"}, {{"A", "A", p}}, "A", "B"),
                      Catch::Matchers::ContainsSubstring("self-loop"));
  REQUIRE_THROWS(QuantumNetwork({"A", "A", "B"}, {}, "A", "B"));
  REQUIRE_THROWS(QuantumNetwork({"A", "B"}, {}, "A", "A"));
  REQUIRE_THROWS(QuantumNetwork({"A", "B"}, {}, "A", "Z"));
  const auto net = diamond();
  CHECK(net.interior().size() == 2);
  CHECK(net.terminals_connected());
  CHECK(net.iso_dimensional());
  CHECK(net.index_of("D") == 2);
}

TEST_CASE("repeater chain bounds") {
  const std::vector<double> etas{-1.0, -0.5, -0.8};
  const ChainReport r = chain_bounds(etas, 3);
  CHECK(r.bottleneck_index == 1);
  CHECK(r.eta_max == -0.5);
  CHECK(r.k_bound == Approx(0.18872187554).margin(1e-10));
  CHECK(r.q2_bound == Approx(rppt_regularised(WernerParams(-0.5, 3))));

  const std::vector<double> with_separable{-1.0, 0.1, -0.9};
  const ChainReport z = chain_bounds(with_separable, 4);
  CHECK(z.k_bound == 0.0);
  CHECK(z.q2_bound == 0.0);
  CHECK(z.bottleneck_index == 1);

  const std::vector<double> single{-0.85};
  const ChainReport one = chain_bounds(single, 5);
  const BoundReport b = channel_bounds(WernerParams(-0.85, 5));
  CHECK(one.k_bound == b.k_bound);
  CHECK(one.k_source == b.k_bound_source);
  CHECK(one.q2_bound == b.q2_bound);

  REQUIRE_THROWS_AS(chain_bounds(std::vector<double>{}, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(chain_bounds(std::vector<double>{-1.0, 1.5}, 3), std::invalid_argument);
}

TEST_CASE("cut enumeration") {
  const auto net = diamond();
  const auto cuts = enumerate_cuts(net);
  REQUIRE(cuts.size() == 4);
  CHECK(cuts[0].a_side == std::vector<std::string>{"A"});
  CHECK(cuts[0].cut_edges == std::vector<std::size_t>{0, 1});
  CHECK(cuts[3].a_side == std::vector<std::string>{"A", "C", "D"});
  CHECK(cuts[3].cut_edges == std::vector<std::size_t>{2, 3});
  for (const auto& c : cuts) CHECK(disconnects(net, c.cut_edges));
  CHECK_FALSE(disconnects(net, std::vector<std::size_t>{0, 2}));
}

TEST_CASE("diamond multi-path and single-path bounds") {
  const auto net = diamond();
  const auto q2 = multi_path_bound(net, Measure::e_p_inf);
  CHECK(q2.cut.cut_value == Approx(2.0 * std::log2(1.5)).margin(1e-12));
  CHECK(q2.flow_value == Approx(q2.cut.cut_value).margin(1e-12));
  CHECK(q2.enumerated);
  // Four tied cuts; the lexicographically smallest A side is {A}.
  CHECK(q2.cut.a_side == std::vector<std::string>{"A"});

  const auto single = single_path_bound(net, Measure::e_r2);
  CHECK(single.cut.cut_value == Approx(0.70751874963).margin(1e-10));
  CHECK(single.path.bottleneck == Approx(single.cut.cut_value));
  CHECK(single.path.nodes.size() == 3);
  CHECK(iso_single_path_bound(net, Measure::e_r2) == Approx(single.cut.cut_value));

  REQUIRE_THROWS_AS(single_path_bound(net, Measure::e_p_inf), std::invalid_argument);
  REQUIRE_THROWS_AS(single_path_bound(net, Measure::k_best), std::invalid_argument);
}

TEST_CASE("a path graph reduces to the chain") {
  const std::vector<double> etas{-0.9, -0.6, -0.95, -0.7};
  const auto net = path_graph(etas, 5);
  const auto chain = chain_bounds(etas, 5);
  CHECK(multi_path_bound(net, Measure::e_p_inf).cut.cut_value == Approx(chain.q2_bound));
  CHECK(multi_path_bound(net, Measure::k_best).cut.cut_value == Approx(chain.k_bound));
  CHECK(single_path_bound(net, Measure::e_r2).cut.cut_value ==
        Approx(ree_two_copy(WernerParams(-0.6, 5))));
}

TEST_CASE("parallel edges add capacity") {
  const WernerParams p(-1.0, 4);
  const QuantumNetwork net({"A", "B"}, {{"A", "B", p}, {"B", "A", p}}, "A", "B");
  CHECK(max_flow(net, edge_weights(net, Measure::e_p_inf)).flow_value ==
        Approx(2.0 * std::log2(1.5)));
  CHECK(single_path_bound(net, Measure::esq_star).cut.cut_value == Approx(std::log2(1.5)));
}

TEST_CASE("disconnected terminals give zero") {
  const QuantumNetwork net({"A", "C", "B"}, {{"A", "C", WernerParams(-1.0, 3)}}, "A", "B");
  CHECK_FALSE(net.terminals_connected());
  CHECK(multi_path_bound(net, Measure::k_best).cut.cut_value == 0.0);
  CHECK(multi_path_bound(net, Measure::k_best).flow_value == 0.0);
  const auto s = single_path_bound(net, Measure::e_r);
  CHECK(s.cut.cut_value == 0.0);
  CHECK(s.path.bottleneck == 0.0);
  CHECK(s.path.edges.empty());
  CHECK(s.cut.cut_edges.empty());
}

TEST_CASE("random networks: dualities, oracle agreement, determinism") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const QuantumNetwork net = random_network(rng, false);
    for (Measure m : {Measure::e_r, Measure::e_r2, Measure::esq_tilde, Measure::esq_star}) {
      const auto w = edge_weights(net, m);
      const auto s_max = min_cut_enumerate_serial(net, w, CutObjective::max_edge);
      const auto p_max = min_cut_enumerate_parallel(net, w, CutObjective::max_edge);
      CHECK(s_max.cut_value == p_max.cut_value);
      CHECK(s_max.a_side == p_max.a_side);
      CHECK(s_max.cut_value == Approx(oracle::brute_min_cut(as_graph(net, w), false)).margin(1e-12));
      CHECK(widest_path(net, w).bottleneck == Approx(s_max.cut_value).margin(1e-9));
      const auto bc = bottleneck_cut(net, w);
      CHECK(bc.cut_value == Approx(s_max.cut_value).margin(1e-9));
      CHECK(disconnects(net, bc.cut_edges));
    }
    for (Measure m : {Measure::e_p_inf, Measure::k_best}) {
      const auto w = edge_weights(net, m);
      const auto s_sum = min_cut_enumerate_serial(net, w, CutObjective::sum_edges);
      const auto p_sum = min_cut_enumerate_parallel(net, w, CutObjective::sum_edges);
      CHECK(s_sum.cut_value == p_sum.cut_value);
      CHECK(s_sum.a_side == p_sum.a_side);
      CHECK(s_sum.cut_value == Approx(oracle::brute_min_cut(as_graph(net, w), true)).margin(1e-12));
      const auto flow = max_flow(net, w);
      CHECK(flow.flow_value == Approx(s_sum.cut_value).margin(1e-9));
      CHECK(flow.min_cut.cut_value == Approx(flow.flow_value).margin(1e-9));
      CHECK(disconnects(net, flow.min_cut.cut_edges));
    }
    CHECK(ordering_chain_check(net));
  }
}

TEST_CASE("widest path certificate is a real path with the stated bottleneck") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const QuantumNetwork net = random_network(rng, false);
    const auto w = edge_weights(net, Measure::e_r);
    const auto path = widest_path(net, w);
    if (path.edges.empty()) continue;
    CHECK(path.nodes.front() == net.alice());
    CHECK(path.nodes.back() == net.bob());
    double narrowest = 1e9;
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
      const auto& e = net.edges()[path.edges[i]];
      const bool joins = (e.u == path.nodes[i] && e.v == path.nodes[i + 1]) ||
                         (e.v == path.nodes[i] && e.u == path.nodes[i + 1]);
      CHECK(joins);
      narrowest = std::min(narrowest, w[path.edges[i]]);
    }
    CHECK(narrowest == path.bottleneck);
  }
}

TEST_CASE("iso-dimensional shortcut matches per-edge weights") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    const QuantumNetwork net = random_network(rng, true);
    for (Measure m : {Measure::e_r, Measure::e_r2, Measure::esq_tilde, Measure::esq_star}) {
      CHECK(iso_single_path_bound(net, m) ==
            Approx(single_path_bound(net, m).cut.cut_value).margin(1e-12));
    }
  }
  const QuantumNetwork mixed({"A", "B"}, {{"A", "B", WernerParams(-1, 3)}, {"A", "B", WernerParams(-1, 4)}},
                             "A", "B");
  REQUIRE_THROWS(iso_single_path_bound(mixed, Measure::e_r));
}

TEST_CASE("lowering one edge's eta never lowers the network bound") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const QuantumNetwork net = random_network(rng, false);
    if (net.edges().empty()) continue;
    std::vector<NetworkEdge> edges = net.edges();
    const std::size_t k = static_cast<std::size_t>(u(rng) * static_cast<double>(edges.size()));
    const WernerParams old = edges[k].params;
    edges[k].params = WernerParams(-1.0 + (old.eta() + 1.0) * u(rng), old.d());
    const QuantumNetwork better(net.nodes(), edges, net.alice(), net.bob());
    CHECK(multi_path_bound(better, Measure::e_p_inf).cut.cut_value >=
          multi_path_bound(net, Measure::e_p_inf).cut.cut_value - 1e-12);
    CHECK(single_path_bound(better, Measure::esq_star).cut.cut_value >=
          single_path_bound(net, Measure::esq_star).cut.cut_value - 1e-12);
  }
}

TEST_CASE("large networks fall back to certificate cuts") {
  std::vector<std::string> nodes{"A"};
  for (int i = 0; i < 22; ++i) nodes.push_back("r" + std::to_string(i));
  nodes.push_back("B");
  std::vector<NetworkEdge> edges;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> eta(-1.0, -0.2);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    edges.push_back({nodes[i], nodes[i + 1], WernerParams(eta(rng), 4)});
    if (i + 2 < nodes.size()) edges.push_back({nodes[i], nodes[i + 2], WernerParams(eta(rng), 4)});
  }
  const QuantumNetwork net(nodes, edges, "A", "B");
  REQUIRE_THROWS_AS(enumerate_cuts(net), CutEnumerationTooLarge);
  const auto w = edge_weights(net, Measure::e_r2);
  REQUIRE_THROWS_AS(min_cut_enumerate_parallel(net, w, CutObjective::max_edge),
                    CutEnumerationTooLarge);
  const auto s = single_path_bound(net, Measure::e_r2);
  CHECK_FALSE(s.enumerated);
  CHECK(s.cut.cut_value == Approx(s.path.bottleneck).margin(1e-12));
  CHECK(disconnects(net, s.cut.cut_edges));
  const auto m = multi_path_bound(net, Measure::e_p_inf);
  CHECK_FALSE(m.enumerated);
  CHECK(m.cut.cut_value == Approx(m.flow_value).margin(1e-9));
  CHECK(ordering_chain_check(net));
}
