#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hwbounds/network.hpp"

namespace hwb {

/// Malformed network description. what() names the line (syntax errors) or
/// the offending field path, e.g. "edges[2].v: unknown node 'X'".
class NetworkFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

QuantumNetwork parse_network(const std::string& text);
QuantumNetwork load_network(const std::string& path);

nlohmann::json to_json(const QuantumNetwork& net);

}  // namespace hwb
