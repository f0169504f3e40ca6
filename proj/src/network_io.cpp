#include "hwbounds/network_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hwb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw NetworkFormatError(where + ": " + what);
}

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

const json& member(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

std::string string_field(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

QuantumNetwork parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw NetworkFormatError("line " + std::to_string(line_of(text, e.byte)) +
                             ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail("<root>", "expected an object");
  only_keys(doc, "<root>", {"nodes", "edges", "terminals"});

  const json& jnodes = member(doc, "<root>", "nodes");
  if (!jnodes.is_array()) fail("nodes", "expected an array of strings");
  std::vector<std::string> nodes;
  std::set<std::string> known;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jnodes[i].is_string()) fail(where, "expected a string");
    nodes.push_back(jnodes[i].get<std::string>());
    if (nodes.back().empty()) fail(where, "empty node name");
    if (!known.insert(nodes.back()).second) fail(where, "duplicate node '" + nodes.back() + "'");
  }

  const json& jterm = member(doc, "<root>", "terminals");
  if (!jterm.is_object()) fail("terminals", "expected an object with keys A and B");
  only_keys(jterm, "terminals", {"A", "B"});
  const std::string alice = string_field(jterm, "terminals", "A");
  const std::string bob = string_field(jterm, "terminals", "B");
  if (!known.count(alice)) fail("terminals.A", "unknown node '" + alice + "'");
  if (!known.count(bob)) fail("terminals.B", "unknown node '" + bob + "'");
  if (alice == bob) fail("terminals", "A and B must differ");

  const json& jedges = member(doc, "<root>", "edges");
  if (!jedges.is_array()) fail("edges", "expected an array of objects");
  std::vector<NetworkEdge> edges;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& je = jedges[i];
    if (!je.is_object()) fail(where, "expected an object");
    only_keys(je, where, {"u", "v", "eta", "d"});
    const std::string u = string_field(je, where, "u");
    const std::string v = string_field(je, where, "v");
    if (!known.count(u)) fail(where + ".u", "unknown node '" + u + "'");
    if (!known.count(v)) fail(where + ".v", "unknown node '" + v + "'");
    if (u == v) fail(where, "self-loop on '" + u + "'");

    const json& jeta = member(je, where, "eta");
    if (!jeta.is_number()) fail(where + ".eta", "expected a number");
    const double eta = jeta.get<double>();
    if (!(eta >= -1.0 && eta <= 1.0)) fail(where + ".eta", "eta out of range [-1, 1]");

    const json& jd = member(je, where, "d");
    if (!jd.is_number_integer() || jd.get<long long>() < 2 || jd.get<long long>() > 1 << 20) {
      fail(where + ".d", "expected an integer >= 2");
    }
    edges.push_back({u, v, WernerParams(eta, static_cast<int>(jd.get<long long>()))});
  }
  return QuantumNetwork(std::move(nodes), std::move(edges), alice, bob);
}

QuantumNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NetworkFormatError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str());
  } catch (const NetworkFormatError& e) {
    throw NetworkFormatError(path + ": " + e.what());
  }
}

nlohmann::json to_json(const QuantumNetwork& net) {
  json edges = json::array();
  for (const auto& e : net.edges()) {
    edges.push_back({{"u", e.u}, {"v", e.v}, {"eta", e.params.eta()}, {"d", e.params.d()}});
  }
  return {{"nodes", net.nodes()},
          {"edges", std::move(edges)},
          {"terminals", {{"A", net.alice()}, {"B", net.bob()}}}};
}

}  // namespace hwb
