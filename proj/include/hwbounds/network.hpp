#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwbounds/capacity.hpp"
#include "hwbounds/werner.hpp"

namespace hwb {

struct NetworkEdge {
  std::string u;
  std::string v;
  WernerParams params;
};

/// Undirected multigraph of HW channels with two distinguished terminals.
/// Edges are undirected: every bound here depends only on the Choi matrix.
class QuantumNetwork {
 public:
  QuantumNetwork(std::vector<std::string> nodes, std::vector<NetworkEdge> edges,
                 std::string alice, std::string bob);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<NetworkEdge>& edges() const { return edges_; }
  const std::string& alice() const { return nodes_[alice_]; }
  const std::string& bob() const { return nodes_[bob_]; }
  std::size_t alice_index() const { return alice_; }
  std::size_t bob_index() const { return bob_; }

  std::size_t index_of(const std::string& name) const;
  std::size_t endpoint_u(std::size_t edge) const { return ends_[edge].first; }
  std::size_t endpoint_v(std::size_t edge) const { return ends_[edge].second; }
  /// Node indices other than the two terminals, in declaration order.
  const std::vector<std::size_t>& interior() const { return interior_; }

  bool terminals_connected() const;
  /// All edges share one local dimension.
  bool iso_dimensional() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<NetworkEdge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::size_t> interior_;
  std::size_t alice_;
  std::size_t bob_;
};

/// An A/B bipartition and the edges crossing it.
struct CutResult {
  double cut_value = 0.0;
  std::vector<std::size_t> cut_edges;
  std::vector<std::string> a_side;  // sorted
  std::vector<std::string> b_side;  // sorted
};

/// True iff removing `cut_edges` leaves no A-B path.
bool disconnects(const QuantumNetwork& net, std::span<const std::size_t> cut_edges);

struct ChainReport {
  double eta_max;
  std::size_t bottleneck_index;
  double k_bound;
  Measure k_source;
  double q2_bound;
};

/// Iso-dimensional repeater chain: the largest eta is the bottleneck of every
/// measure (all are non-increasing in eta).
ChainReport chain_bounds(std::span<const double> etas, int d);

inline constexpr std::size_t kMaxEnumeratedInterior = 20;

class CutEnumerationTooLarge : public std::length_error {
 public:
  explicit CutEnumerationTooLarge(std::size_t interior);
};

/// Bipartition for `mask`: bit i puts interior()[i] on A's side.
CutResult cut_from_mask(const QuantumNetwork& net, std::uint64_t mask);

/// All 2^(|nodes|-2) cuts with their cut-sets (cut_value left at 0).
std::vector<CutResult> enumerate_cuts(const QuantumNetwork& net);

std::vector<double> edge_weights(const QuantumNetwork& net, Measure m);

enum class CutObjective { max_edge, sum_edges };

/// min over cuts of (max or sum of cut-set weights); an empty cut-set scores 0.
/// Ties go to the lexicographically smallest sorted A side.
CutResult min_cut_enumerate_serial(const QuantumNetwork& net, std::span<const double> weights,
                                   CutObjective objective);
CutResult min_cut_enumerate_parallel(const QuantumNetwork& net,
                                     std::span<const double> weights,
                                     CutObjective objective);

struct WidestPath {
  double bottleneck = 0.0;  // 0 when the terminals are disconnected
  std::vector<std::size_t> edges;
  std::vector<std::string> nodes;
};

/// Maximum-bottleneck A-B path (Dijkstra variant with a max-heap on widths).
WidestPath widest_path(const QuantumNetwork& net, std::span<const double> weights);

/// Cut certifying a widest-path value: A's side is everything reachable from
/// A through edges strictly wider than the bottleneck.
CutResult bottleneck_cut(const QuantumNetwork& net, std::span<const double> weights);

struct FlowResult {
  double flow_value;
  CutResult min_cut;  // residual-reachability cut
};

/// Edmonds-Karp on the undirected network (each edge two arcs of capacity w),
/// residual threshold 1e-12.
FlowResult max_flow(const QuantumNetwork& net, std::span<const double> weights);

struct SinglePathResult {
  CutResult cut;        // enumerated when small enough, else the bottleneck cut
  WidestPath path;
  bool enumerated;
};

/// K <= min_C max_{e in C} E(e), for E in {E_R, E_R2, Esq_tilde, Esq_star}.
SinglePathResult single_path_bound(const QuantumNetwork& net, Measure m);

/// min over cuts of E(W_{eta_min(C), d}); iso-dimensional networks only.
double iso_single_path_bound(const QuantumNetwork& net, Measure m);

struct MultiPathResult {
  CutResult cut;        // enumerated when small enough, else the residual cut
  double flow_value;
  bool enumerated;
};

/// min over cuts of sum_{e in C} E(e) for E in {E_R, E_R2, E_P_inf, Esq_tilde,
/// Esq_star}, or k_best (per-edge minimum of the secret-key pool).
MultiPathResult multi_path_bound(const QuantumNetwork& net, Measure m);

/// Every cut satisfies sum E_P_inf <= sum E_R2 <= sum E_R (slack 1e-10).
bool ordering_chain_check(const QuantumNetwork& net);

}  // namespace hwb
