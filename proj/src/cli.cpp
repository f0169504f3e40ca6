#include "hwbounds/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwbounds/capacity.hpp"
#include "hwbounds/measures.hpp"
#include "hwbounds/network.hpp"
#include "hwbounds/network_io.hpp"
#include "hwbounds/werner.hpp"

namespace hwb {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::array kCsvColumns{"eta",       "d",        "E_R",     "E_R2",
                                 "E_P_inf",   "Esq_tilde", "Esq_star", "k_bound",
                                 "k_source",  "q2_bound"};

// JSON numbers carry the same 10 significant digits as the text output.
double rounded(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

std::string render_scalar(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Text rendering: "key: value", scalar arrays comma-joined, nested objects
// and arrays of objects flattened into dotted / indexed keys.
void render_text(std::ostream& out, const Json& obj, const std::string& prefix = "") {
  for (const auto& [key, v] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      render_text(out, v, name);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        render_text(out, v[i], name + "[" + std::to_string(i) + "]");
      }
    } else if (v.is_array()) {
      out << name << ":";
      bool first = true;
      for (const auto& item : v) {
        out << (first ? " " : ",") << render_scalar(item);
        first = false;
      }
      out << "\n";
    } else {
      out << name << ": " << render_scalar(v) << "\n";
    }
  }
}

void emit(std::ostream& out, const Json& report, const std::string& format) {
  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    render_text(out, report);
  }
}

Json report_json(const BoundReport& r) {
  return Json{{"eta", rounded(r.params.eta())},
              {"d", r.params.d()},
              {"E_R", rounded(r.e_r)},
              {"E_R2", rounded(r.e_r2)},
              {"E_P_inf", rounded(r.e_p_inf)},
              {"Esq_tilde", rounded(r.esq_tilde)},
              {"Esq_star", rounded(r.esq_star)},
              {"k_bound", rounded(r.k_bound)},
              {"k_source", std::string(to_string(r.k_bound_source))},
              {"q2_bound", rounded(r.q2_bound)}};
}

std::string csv_header() {
  std::string line;
  for (const char* c : kCsvColumns) line += (line.empty() ? "" : ",") + std::string(c);
  return line;
}

// Selected columns print their value; others stay empty. eta, d and the
// k/q2 columns are tied to the measures that produce them.
std::string csv_row(const Json& row, const std::set<std::string>& selected) {
  std::string line;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) line += ",";
    const std::string col = kCsvColumns[i];
    if (row.contains(col) && (selected.empty() || selected.count(col) || col == "eta" || col == "d")) {
      line += render_scalar(row[col]);
    }
  }
  return line;
}

std::string cut_edge_label(const QuantumNetwork& net, std::size_t e) {
  return std::to_string(e) + ":" + net.edges()[e].u + "-" + net.edges()[e].v;
}

Json cut_json(const QuantumNetwork& net, const CutResult& cut) {
  Json edges = Json::array();
  for (std::size_t e : cut.cut_edges) edges.push_back(cut_edge_label(net, e));
  return Json{{"a_side", cut.a_side}, {"b_side", cut.b_side}, {"cut_edges", edges}};
}

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---- bounds -------------------------------------------------------------

struct BoundsOpts {
  double eta = 0.0;
  int d = 0;
  std::string format = "text";
};

int cmd_bounds(const BoundsOpts& o, std::ostream& out) {
  const BoundReport r = channel_bounds(WernerParams(o.eta, o.d));
  const Json row = report_json(r);
  if (o.format == "csv") {
    out << csv_header() << "\n" << csv_row(row, {}) << "\n";
  } else {
    emit(out, row, o.format);
  }
  return kExitOk;
}

// ---- sweep --------------------------------------------------------------

struct SweepOpts {
  std::vector<int> d;
  double eta_start = -1.0;
  double eta_end = 0.0;
  double eta_step = 0.01;
  std::vector<std::string> measures;
  std::string format = "csv";
};

// Grid points by index; snapped to 1e-12 so that e.g. -1 + 200 * 0.005
// prints as 0 rather than a rounding residue.
std::vector<double> eta_grid(double start, double end, double step) {
  if (!(step > 0.0)) throw UsageError("eta-step must be positive");
  if (!(start < end)) throw UsageError("eta-start must be below eta-end");
  if (start < -1.0 || end > 1.0) throw UsageError("eta range must lie within [-1, 1]");
  const auto count = static_cast<long long>(std::floor((end - start) / step + 1e-9)) + 1;
  if (count > 10'000'000) throw UsageError("sweep grid too large");
  std::vector<double> etas;
  for (long long i = 0; i < count; ++i) {
    const double eta = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
    etas.push_back(std::clamp(eta, -1.0, 1.0) + 0.0);
  }
  return etas;
}

std::set<std::string> selected_columns(const std::vector<std::string>& measures) {
  std::set<std::string> cols;
  for (const auto& name : measures) {
    const Measure m = parse_measure(name);
    if (m == Measure::k_best) {
      cols.insert({"k_bound", "k_source"});
    } else {
      cols.insert(std::string(to_string(m)));
      if (m == Measure::e_p_inf) cols.insert("q2_bound");
    }
  }
  return cols;
}

int cmd_sweep(const SweepOpts& o, std::ostream& out) {
  if (o.d.empty()) throw UsageError("sweep needs at least one --d");
  const std::set<std::string> cols = selected_columns(o.measures);
  std::vector<WernerParams> params;
  for (int d : o.d) {
    for (double eta : eta_grid(o.eta_start, o.eta_end, o.eta_step)) params.emplace_back(eta, d);
  }
  const std::vector<BoundReport> reports = channel_bounds_parallel(params);
  if (o.format == "json") {
    Json rows = Json::array();
    for (const auto& r : reports) {
      Json row = report_json(r);
      if (!cols.empty()) {
        Json kept;
        for (const auto& [k, v] : row.items()) {
          if (k == "eta" || k == "d" || cols.count(k)) kept[k] = v;
        }
        row = kept;
      }
      rows.push_back(row);
    }
    out << rows.dump(2) << "\n";
  } else {
    out << csv_header() << "\n";
    for (const auto& r : reports) out << csv_row(report_json(r), cols) << "\n";
  }
  return kExitOk;
}

// ---- chain --------------------------------------------------------------

struct ChainOpts {
  std::vector<std::string> etas;
  int d = 0;
  std::string format = "text";
};

// Whole-token numbers only; CLI11 would read an empty token as 0.
double parse_eta(const std::string& token) {
  double v = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("--etas: '" + token + "' is not a number");
  }
  return v;
}

int cmd_chain(const ChainOpts& o, std::ostream& out) {
  std::vector<double> etas;
  for (const auto& t : o.etas) etas.push_back(parse_eta(t));
  if (etas.empty()) throw UsageError("chain must contain at least one channel");
  const ChainReport r = chain_bounds(etas, o.d);
  emit(out,
       Json{{"d", o.d},
            {"hops", o.etas.size()},
            {"bottleneck_index", r.bottleneck_index},
            {"eta_max", rounded(r.eta_max)},
            {"k_bound", rounded(r.k_bound)},
            {"k_source", std::string(to_string(r.k_source))},
            {"q2_bound", rounded(r.q2_bound)}},
       o.format);
  return kExitOk;
}

// ---- network ------------------------------------------------------------

struct NetworkOpts {
  std::string file;
  std::string routing = "multi";
  std::string target = "k";
  std::string measure;
  std::string format = "text";
};

constexpr std::array kSinglePathMeasures{Measure::e_r, Measure::e_r2, Measure::esq_tilde,
                                         Measure::esq_star};

Json single_path_json(const QuantumNetwork& net, Measure m, const SinglePathResult& r) {
  Json path = Json::array();
  for (const auto& n : r.path.nodes) path.push_back(n);
  Json j{{"measure", std::string(to_string(m))},
         {"bound", rounded(r.cut.cut_value)},
         {"cut", cut_json(net, r.cut)},
         {"widest_path", path},
         {"widest_path_bottleneck", rounded(r.path.bottleneck)},
         {"enumerated", r.enumerated}};
  if (m == Measure::e_r2) j["note"] = "E_R2 inside the cut-set maximum follows the chain argument";
  return j;
}

int cmd_network(const NetworkOpts& o, std::ostream& out) {
  const QuantumNetwork net = load_network(o.file);
  Json report{{"routing", o.routing}, {"target", o.target}};
  if (o.routing == "multi") {
    const Measure m = o.measure.empty()
                          ? (o.target == "k" ? Measure::k_best : Measure::e_p_inf)
                          : parse_measure(o.measure);
    const MultiPathResult r = multi_path_bound(net, m);
    report["measure"] = std::string(to_string(m));
    report["bound"] = rounded(r.cut.cut_value);
    report["cut"] = cut_json(net, r.cut);
    report["max_flow"] = rounded(r.flow_value);
    report["enumerated"] = r.enumerated;
    if (r.enumerated) report["flow_agrees"] = std::abs(r.flow_value - r.cut.cut_value) <= 1e-9;
  } else {
    std::vector<Measure> measures;
    if (o.measure.empty()) {
      measures.assign(kSinglePathMeasures.begin(), kSinglePathMeasures.end());
    } else {
      measures.push_back(parse_measure(o.measure));
    }
    // Q2 <= K, so the K cut-set bounds also bound Q2.
    Json per = Json::array();
    std::optional<std::pair<double, Measure>> best;
    for (Measure m : measures) {
      const SinglePathResult r = single_path_bound(net, m);
      per.push_back(single_path_json(net, m, r));
      if (!best || r.cut.cut_value < best->first) best = {r.cut.cut_value, m};
    }
    report["bound"] = rounded(best->first);
    report["bound_source"] = std::string(to_string(best->second));
    report["per_measure"] = per;
  }
  if (!net.terminals_connected()) report["disconnected"] = true;
  emit(out, report, o.format);
  return net.terminals_connected() ? kExitOk : kExitDisconnected;
}

// ---- finite -------------------------------------------------------------

struct FiniteOpts {
  double epsilon = 0.0;
  int d = 0;
  long long n = 1;
  double eta = 0.0;
  std::string format = "text";
};

int cmd_finite(const FiniteOpts& o, std::ostream& out) {
  const WernerParams p(o.eta, o.d);
  const FiniteSizeParams fs(o.epsilon, o.d, o.n);
  const double e_p_inf = rppt_regularised(p);
  // Exact n-copy RPPT for n <= 3; n * E_P_inf beyond that.
  const bool exact = o.n <= 3;
  const double e_p_n =
      exact ? static_cast<double>(o.n) * rppt_ncopy_numeric(static_cast<std::size_t>(o.n), p)
            : static_cast<double>(o.n) * e_p_inf;
  emit(out,
       Json{{"epsilon", rounded(o.epsilon)},
            {"d", o.d},
            {"n", o.n},
            {"eta", rounded(o.eta)},
            {"e_p_n", rounded(e_p_n)},
            {"e_p_n_source", exact ? "ncopy_numeric" : "n*E_P_inf"},
            {"bound", rounded(finite_rate_bound(fs, e_p_n))},
            {"epsilon_to_0", rounded(e_p_n / static_cast<double>(o.n))},
            {"n_to_infinity", rounded(finite_rate_limit(fs, e_p_inf))}},
       o.format);
  return kExitOk;
}

// ---- selftest -----------------------------------------------------------

struct Check {
  std::string name;
  double deviation;
  double tolerance;
};

QuantumNetwork random_network(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nodes_dist(2, 7);
  std::uniform_real_distribution<double> eta_dist(-1.0, 0.2);
  std::uniform_int_distribution<int> d_dist(3, 6);
  const int n = nodes_dist(rng);
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<NetworkEdge> edges;
  std::bernoulli_distribution keep(0.5);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (keep(rng)) edges.push_back({nodes[i], nodes[j], WernerParams(eta_dist(rng), d_dist(rng))});
    }
  }
  return QuantumNetwork(nodes, edges, nodes.front(), nodes.back());
}

std::vector<Check> selftest_checks() {
  std::vector<Check> checks;
  {
    double dev = 0.0;
    for (int d = 2; d <= 5; ++d) {
      for (double eta : {-1.0, -0.3, 0.4, 1.0}) {
        const WernerParams p(eta, d);
        dev = std::max(dev, max_abs_diff(hw_choi(p).matrix(), werner_state(p).matrix()));
      }
    }
    checks.push_back({"choi_matrix_is_werner_state", dev, 1e-10});
  }
  {
    double dev = 0.0;
    for (int d = 3; d <= 6; ++d) {
      for (double eta = -1.0; eta <= -2.0 / d; eta += 0.1) {
        const WernerParams p(eta, d);
        dev = std::max(dev, std::abs(ree_two_copy_closed(p).value - ree_two_copy_numeric(p).value));
      }
    }
    checks.push_back({"two_copy_closed_form_vs_numeric", dev, 1e-7});
  }
  {
    double dev = 0.0;
    for (int d = 3; d <= 8; ++d) {
      const WernerParams p(-1.0, d);
      dev = std::max(dev, std::abs(squashed_purification_bound(p) - ree_two_copy(p)));
    }
    checks.push_back({"purification_bound_meets_two_copy_at_eta_-1", dev, 1e-9});
  }
  {
    std::mt19937_64 rng(7);
    std::gamma_distribution<double> g(1.0, 1.0);
    int mismatches = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const int d = 3 + trial % 2;
      std::vector<double> x{g(rng), g(rng), g(rng)};
      const double s = x[0] + x[1] + x[2];
      for (double& v : x) v /= s;
      const SymmetricPPTPoint pt(x);
      const std::size_t ud = static_cast<std::size_t>(d);
      // Layout A1 B1 A2 B2; transpose Bob's two factors.
      const bool spectral = is_psd(partial_transpose(sigma_x_state(pt, d).matrix(),
                                                     {ud, ud, ud, ud},
                                                     {false, true, false, true}));
      if (spectral != ppt_cone_check(pt, d)) ++mismatches;
    }
    checks.push_back({"ppt_cone_vs_partial_transpose_spectrum", static_cast<double>(mismatches), 0.0});
  }
  {
    std::mt19937_64 rng(11);
    double dev = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      const QuantumNetwork net = random_network(rng);
      const auto w = edge_weights(net, Measure::e_r2);
      dev = std::max(dev, std::abs(min_cut_enumerate_serial(net, w, CutObjective::max_edge).cut_value -
                                   widest_path(net, w).bottleneck));
      dev = std::max(dev, std::abs(min_cut_enumerate_serial(net, w, CutObjective::sum_edges).cut_value -
                                   max_flow(net, w).flow_value));
    }
    checks.push_back({"network_cut_dualities", dev, 1e-9});
  }
  return checks;
}

int cmd_selftest(std::ostream& out) {
  bool all = true;
  for (const Check& c : selftest_checks()) {
    const bool ok = c.deviation <= c.tolerance;
    all = all && ok;
    out << (ok ? "ok   " : "FAIL ") << c.name << " deviation=" << format_number(c.deviation)
        << " tol=" << format_number(c.tolerance) << "\n";
  }
  out << (all ? "selftest passed" : "selftest FAILED") << "\n";
  return all ? kExitOk : kExitFailure;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x + 0.0);
  return std::string(buf) == "-0" ? "0" : buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upper bounds on two-way assisted capacities of Holevo-Werner channels"};
  app.name("hwbounds");
  app.require_subcommand(1);

  BoundsOpts bounds;
  auto* sub_bounds = app.add_subcommand("bounds", "All per-channel bounds at one (eta, d)");
  sub_bounds->add_option("--eta", bounds.eta, "flip expectation value in [-1, 1]")->required();
  sub_bounds->add_option("--d", bounds.d, "local dimension >= 2")->required();
  sub_bounds->add_option("--format", bounds.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));

  SweepOpts sweep;
  auto* sub_sweep = app.add_subcommand("sweep", "Bounds over an eta grid for one or more d");
  sub_sweep->add_option("--d", sweep.d, "dimensions (comma separated or repeated)")
      ->required()
      ->delimiter(',');
  sub_sweep->add_option("--eta-start", sweep.eta_start, "first grid point")->capture_default_str();
  sub_sweep->add_option("--eta-end", sweep.eta_end, "last grid point (inclusive)")->capture_default_str();
  sub_sweep->add_option("--eta-step", sweep.eta_step, "grid spacing")->capture_default_str();
  sub_sweep->add_option("--measures", sweep.measures,
                        "subset of E_R,E_R2,E_P_inf,Esq_tilde,Esq_star,k_best")
      ->delimiter(',');
  sub_sweep->add_option("--format", sweep.format)->check(CLI::IsMember({"csv", "json"}));

  ChainOpts chain;
  auto* sub_chain = app.add_subcommand("chain", "Repeater chain of HW channels");
  sub_chain->add_option("--etas", chain.etas, "comma separated eta per hop")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);
  sub_chain->add_option("--d", chain.d)->required();
  sub_chain->add_option("--format", chain.format)->check(CLI::IsMember({"text", "json"}));

  NetworkOpts network;
  auto* sub_network = app.add_subcommand("network", "Cut-set bounds on a network file");
  sub_network->add_option("file", network.file, "network JSON")->required();
  sub_network->add_option("--routing", network.routing)
      ->check(CLI::IsMember({"single", "multi"}));
  sub_network->add_option("--target", network.target)->check(CLI::IsMember({"k", "q2"}));
  sub_network->add_option("--measure", network.measure,
                          "E_R, E_R2, E_P_inf, Esq_tilde, Esq_star or k_best");
  sub_network->add_option("--format", network.format)->check(CLI::IsMember({"text", "json"}));

  FiniteOpts finite;
  auto* sub_finite = app.add_subcommand("finite", "Finite-size weak-converse rate bound");
  sub_finite->add_option("--epsilon", finite.epsilon, "error probability in [0, 1)")->required();
  sub_finite->add_option("--d", finite.d)->required();
  sub_finite->add_option("--n", finite.n, "channel uses >= 1")->required();
  sub_finite->add_option("--eta", finite.eta)->required();
  sub_finite->add_option("--format", finite.format)->check(CLI::IsMember({"text", "json"}));

  auto* sub_selftest = app.add_subcommand("selftest", "Oracle-agreement checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*sub_bounds) return cmd_bounds(bounds, out);
    if (*sub_sweep) return cmd_sweep(sweep, out);
    if (*sub_chain) return cmd_chain(chain, out);
    if (*sub_network) {
      if (!network.measure.empty() && network.routing == "single") {
        const Measure m = parse_measure(network.measure);
        if (m == Measure::e_p_inf || m == Measure::k_best) {
          throw UsageError("--routing single takes E_R, E_R2, Esq_tilde or Esq_star");
        }
      }
      return cmd_network(network, out);
    }
    if (*sub_finite) return cmd_finite(finite, out);
    if (*sub_selftest) return cmd_selftest(out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInput;
}

}  // namespace hwb
