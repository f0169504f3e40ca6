#include "hwbounds/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "hwbounds/measures.hpp"
#include "hwbounds/parallel.hpp"

namespace hwb {

namespace {

constexpr double kResidualEps = 1e-12;
constexpr double kOrderingSlack = 1e-10;

void require_weights(const QuantumNetwork& net, std::span<const double> w) {
  if (w.size() != net.edges().size()) {
    throw std::invalid_argument("edge weight count does not match edge count");
  }
}

// side[i] true for nodes on A's side.
std::vector<char> sides_from_mask(const QuantumNetwork& net, std::uint64_t mask) {
  std::vector<char> side(net.nodes().size(), 0);
  side[net.alice_index()] = 1;
  const auto& interior = net.interior();
  for (std::size_t i = 0; i < interior.size(); ++i) {
    if ((mask >> i) & 1u) side[interior[i]] = 1;
  }
  return side;
}

CutResult cut_from_sides(const QuantumNetwork& net, const std::vector<char>& side) {
  CutResult cut;
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    (side[i] ? cut.a_side : cut.b_side).push_back(net.nodes()[i]);
  }
  std::sort(cut.a_side.begin(), cut.a_side.end());
  std::sort(cut.b_side.begin(), cut.b_side.end());
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    if (side[net.endpoint_u(e)] != side[net.endpoint_v(e)]) cut.cut_edges.push_back(e);
  }
  return cut;
}

double score(const CutResult& cut, std::span<const double> w, CutObjective objective) {
  double acc = 0.0;
  for (std::size_t e : cut.cut_edges) {
    acc = objective == CutObjective::max_edge ? std::max(acc, w[e]) : acc + w[e];
  }
  return acc;
}

double score_mask(const QuantumNetwork& net, std::uint64_t mask, std::span<const double> w,
                  CutObjective objective) {
  const auto side = sides_from_mask(net, mask);
  double acc = 0.0;
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    if (side[net.endpoint_u(e)] == side[net.endpoint_v(e)]) continue;
    acc = objective == CutObjective::max_edge ? std::max(acc, w[e]) : acc + w[e];
  }
  return acc;
}

std::size_t cut_count(const QuantumNetwork& net) {
  const std::size_t k = net.interior().size();
  if (k > kMaxEnumeratedInterior) throw CutEnumerationTooLarge(k);
  return std::size_t{1} << k;
}

// Deterministic selection over precomputed per-mask scores: minimum value,
// then lexicographically smallest sorted A side.
CutResult select_min(const QuantumNetwork& net, const std::vector<double>& scores) {
  const double best = *std::min_element(scores.begin(), scores.end());
  std::optional<CutResult> chosen;
  for (std::size_t mask = 0; mask < scores.size(); ++mask) {
    if (scores[mask] != best) continue;
    CutResult cand = cut_from_mask(net, mask);
    if (!chosen || cand.a_side < chosen->a_side) chosen = std::move(cand);
  }
  chosen->cut_value = best;
  return *chosen;
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(
    const QuantumNetwork& net) {
  // node -> (neighbour, edge)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(net.nodes().size());
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    adj[net.endpoint_u(e)].push_back({net.endpoint_v(e), e});
    adj[net.endpoint_v(e)].push_back({net.endpoint_u(e), e});
  }
  return adj;
}

std::vector<char> reachable(const QuantumNetwork& net,
                            const std::function<bool(std::size_t)>& usable) {
  const auto adj = adjacency(net);
  std::vector<char> seen(net.nodes().size(), 0);
  std::deque<std::size_t> queue{net.alice_index()};
  seen[net.alice_index()] = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (auto [v, e] : adj[u]) {
      if (!seen[v] && usable(e)) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

void require_single_path_measure(Measure m) {
  if (m == Measure::e_p_inf || m == Measure::k_best) {
    throw std::invalid_argument(
        "single-path bound takes E_R, E_R2, Esq_tilde or Esq_star, got " +
        std::string(to_string(m)));
  }
}

}  // namespace

QuantumNetwork::QuantumNetwork(std::vector<std::string> nodes, std::vector<NetworkEdge> edges,
                               std::string alice, std::string bob)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].empty()) throw std::invalid_argument("node names must be non-empty");
    if (!index_.emplace(nodes_[i], i).second) {
      throw std::invalid_argument("duplicate node '" + nodes_[i] + "'");
    }
  }
  if (alice == bob) throw std::invalid_argument("terminals A and B must differ");
  for (const auto* t : {&alice, &bob}) {
    if (!index_.count(*t)) throw std::invalid_argument("terminal '" + *t + "' is not a node");
  }
  alice_ = index_.at(alice);
  bob_ = index_.at(bob);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    for (const auto* end : {&edge.u, &edge.v}) {
      if (!index_.count(*end)) {
        throw std::invalid_argument("edge " + std::to_string(e) + " (" + edge.u + " - " +
                                    edge.v + ") references unknown node '" + *end + "'");
      }
    }
    if (edge.u == edge.v) {
      throw std::invalid_argument("edge " + std::to_string(e) + " is a self-loop on '" +
                                  edge.u + "'");
    }
    ends_.emplace_back(index_.at(edge.u), index_.at(edge.v));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i != alice_ && i != bob_) interior_.push_back(i);
  }
}

std::size_t QuantumNetwork::index_of(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("unknown node '" + name + "'");
  return it->second;
}

bool QuantumNetwork::terminals_connected() const {
  return reachable(*this, [](std::size_t) { return true; })[bob_] != 0;
}

bool QuantumNetwork::iso_dimensional() const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const NetworkEdge& e) {
    return e.params.d() == edges_.front().params.d();
  });
}

bool disconnects(const QuantumNetwork& net, std::span<const std::size_t> cut_edges) {
  const std::set<std::size_t> removed(cut_edges.begin(), cut_edges.end());
  return !reachable(net, [&](std::size_t e) { return !removed.count(e); })[net.bob_index()];
}

ChainReport chain_bounds(std::span<const double> etas, int d) {
  if (etas.empty()) throw std::invalid_argument("chain must contain at least one channel");
  for (double eta : etas) WernerParams(eta, d);
  const auto it = std::max_element(etas.begin(), etas.end());
  const auto index = static_cast<std::size_t>(it - etas.begin());
  const WernerParams worst(*it, d);
  if (worst.eta() >= 0.0) return {worst.eta(), index, 0.0, Measure::e_r2, 0.0};
  const auto [k, source] = best_k_bound(worst);
  return {worst.eta(), index, k, source, rppt_regularised(worst)};
}

CutEnumerationTooLarge::CutEnumerationTooLarge(std::size_t interior)
    : std::length_error("cut enumeration over " + std::to_string(interior) +
                        " non-terminal nodes exceeds the limit of 20; use the "
                        "widest-path or max-flow routes") {}

CutResult cut_from_mask(const QuantumNetwork& net, std::uint64_t mask) {
  return cut_from_sides(net, sides_from_mask(net, mask));
}

std::vector<CutResult> enumerate_cuts(const QuantumNetwork& net) {
  const std::size_t count = cut_count(net);
  std::vector<CutResult> cuts;
  cuts.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) cuts.push_back(cut_from_mask(net, mask));
  return cuts;
}

std::vector<double> edge_weights(const QuantumNetwork& net, Measure m) {
  std::vector<double> w;
  w.reserve(net.edges().size());
  for (const auto& e : net.edges()) w.push_back(measure_value(m, e.params));
  return w;
}

CutResult min_cut_enumerate_serial(const QuantumNetwork& net, std::span<const double> weights,
                                   CutObjective objective) {
  require_weights(net, weights);
  std::vector<double> scores(cut_count(net));
  kernels::map_serial(
      scores.size(), [&](std::size_t mask) { return score_mask(net, mask, weights, objective); },
      scores);
  return select_min(net, scores);
}

CutResult min_cut_enumerate_parallel(const QuantumNetwork& net,
                                     std::span<const double> weights,
                                     CutObjective objective) {
  require_weights(net, weights);
  std::vector<double> scores(cut_count(net));
  kernels::map_parallel(
      scores.size(), [&](std::size_t mask) { return score_mask(net, mask, weights, objective); },
      scores);
  return select_min(net, scores);
}

WidestPath widest_path(const QuantumNetwork& net, std::span<const double> weights) {
  require_weights(net, weights);
  const std::size_t n = net.nodes().size();
  const auto adj = adjacency(net);
  constexpr double kUnreached = -1.0;
  std::vector<double> width(n, kUnreached);
  std::vector<std::size_t> via(n, kernels::kNoIndex);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item> heap;
  width[net.alice_index()] = std::numeric_limits<double>::infinity();
  heap.push({width[net.alice_index()], net.alice_index()});
  while (!heap.empty()) {
    const auto [w, u] = heap.top();
    heap.pop();
    if (done[u] || w < width[u]) continue;
    done[u] = 1;
    for (auto [v, e] : adj[u]) {
      const double cand = std::min(w, weights[e]);
      if (!done[v] && cand > width[v]) {
        width[v] = cand;
        via[v] = e;
        heap.push({cand, v});
      }
    }
  }
  WidestPath out;
  if (width[net.bob_index()] == kUnreached) return out;
  out.bottleneck = width[net.bob_index()];
  std::size_t node = net.bob_index();
  out.nodes.push_back(net.nodes()[node]);
  while (node != net.alice_index()) {
    const std::size_t e = via[node];
    out.edges.push_back(e);
    node = net.endpoint_u(e) == node ? net.endpoint_v(e) : net.endpoint_u(e);
    out.nodes.push_back(net.nodes()[node]);
  }
  std::reverse(out.edges.begin(), out.edges.end());
  std::reverse(out.nodes.begin(), out.nodes.end());
  return out;
}

CutResult bottleneck_cut(const QuantumNetwork& net, std::span<const double> weights) {
  const WidestPath path = widest_path(net, weights);
  const auto side =
      reachable(net, [&](std::size_t e) { return weights[e] > path.bottleneck; });
  CutResult cut = cut_from_sides(net, side);
  cut.cut_value = score(cut, weights, CutObjective::max_edge);
  return cut;
}

FlowResult max_flow(const QuantumNetwork& net, std::span<const double> weights) {
  require_weights(net, weights);
  const std::size_t n = net.nodes().size();
  struct Arc {
    std::size_t to;
    double residual;
  };
  // Arcs 2e and 2e+1 are the two directions of edge e and each other's reverse.
  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    const double cap = std::max(weights[e], 0.0);
    out[net.endpoint_u(e)].push_back(arcs.size());
    arcs.push_back({net.endpoint_v(e), cap});
    out[net.endpoint_v(e)].push_back(arcs.size());
    arcs.push_back({net.endpoint_u(e), cap});
  }
  const std::size_t s = net.alice_index(), t = net.bob_index();
  double total = 0.0;
  std::vector<std::size_t> parent_arc(n);
  while (true) {
    std::fill(parent_arc.begin(), parent_arc.end(), kernels::kNoIndex);
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty() && !seen[t]) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : out[u]) {
        if (!seen[arcs[a].to] && arcs[a].residual > kResidualEps) {
          seen[arcs[a].to] = 1;
          parent_arc[arcs[a].to] = a;
          queue.push_back(arcs[a].to);
        }
      }
    }
    if (!seen[t]) break;
    double push = std::numeric_limits<double>::infinity();
    for (std::size_t v = t; v != s; v = arcs[parent_arc[v] ^ 1u].to) {
      push = std::min(push, arcs[parent_arc[v]].residual);
    }
    for (std::size_t v = t; v != s; v = arcs[parent_arc[v] ^ 1u].to) {
      arcs[parent_arc[v]].residual -= push;
      arcs[parent_arc[v] ^ 1u].residual += push;
    }
    total += push;
  }
  // Residual reachability from A.
  std::vector<char> side(n, 0);
  std::deque<std::size_t> queue{s};
  side[s] = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t a : out[u]) {
      if (!side[arcs[a].to] && arcs[a].residual > kResidualEps) {
        side[arcs[a].to] = 1;
        queue.push_back(arcs[a].to);
      }
    }
  }
  CutResult cut = cut_from_sides(net, side);
  cut.cut_value = score(cut, weights, CutObjective::sum_edges);
  return {total, std::move(cut)};
}

SinglePathResult single_path_bound(const QuantumNetwork& net, Measure m) {
  require_single_path_measure(m);
  const auto w = edge_weights(net, m);
  SinglePathResult out{{}, widest_path(net, w), false};
  if (net.interior().size() <= kMaxEnumeratedInterior) {
    out.cut = min_cut_enumerate_parallel(net, w, CutObjective::max_edge);
    out.enumerated = true;
  } else {
    out.cut = bottleneck_cut(net, w);
  }
  return out;
}

double iso_single_path_bound(const QuantumNetwork& net, Measure m) {
  require_single_path_measure(m);
  if (net.edges().empty()) return 0.0;
  if (!net.iso_dimensional()) {
    throw std::invalid_argument("iso_single_path_bound: edges differ in dimension");
  }
  const int d = net.edges().front().params.d();
  double best = std::numeric_limits<double>::infinity();
  for (const CutResult& cut : enumerate_cuts(net)) {
    if (cut.cut_edges.empty()) return 0.0;
    double eta_min = 1.0;
    for (std::size_t e : cut.cut_edges) eta_min = std::min(eta_min, net.edges()[e].params.eta());
    best = std::min(best, measure_value(m, WernerParams(eta_min, d)));
  }
  return best;
}

MultiPathResult multi_path_bound(const QuantumNetwork& net, Measure m) {
  const auto w = edge_weights(net, m);
  const FlowResult flow = max_flow(net, w);
  if (net.interior().size() <= kMaxEnumeratedInterior) {
    return {min_cut_enumerate_parallel(net, w, CutObjective::sum_edges), flow.flow_value, true};
  }
  return {flow.min_cut, flow.flow_value, false};
}

bool ordering_chain_check(const QuantumNetwork& net) {
  const auto ep = edge_weights(net, Measure::e_p_inf);
  const auto er2 = edge_weights(net, Measure::e_r2);
  const auto er = edge_weights(net, Measure::e_r);
  auto ordered = [&](std::span<const std::size_t> edges) {
    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t e : edges) {
      a += ep[e];
      b += er2[e];
      c += er[e];
    }
    return a <= b + kOrderingSlack && b <= c + kOrderingSlack;
  };
  if (net.interior().size() > kMaxEnumeratedInterior) {
    // Per-edge ordering implies it for every cut-set sum.
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
      const std::size_t one[1] = {e};
      if (!ordered(one)) return false;
    }
    return true;
  }
  for (const CutResult& cut : enumerate_cuts(net)) {
    if (!ordered(cut.cut_edges)) return false;
  }
  return true;
}

}  // namespace hwb
