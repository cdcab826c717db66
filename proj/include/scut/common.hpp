#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scut {

using NodeId = std::uint32_t;

// Invalid configuration or input (bad flags, bad parameters, malformed graphs).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed edge-list input.
class ParseError : public ConfigError {
 public:
  explicit ParseError(const std::string& what) : ConfigError(what) {}
};

// A node program broke the engine contract (e.g. two sends on one port in
// one round, or an out-of-range port).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// A message field exceeded the per-field bit budget while strict mode is on.
class BudgetViolation : public std::runtime_error {
 public:
  BudgetViolation(const std::string& what, NodeId node, int port, std::size_t round)
      : std::runtime_error(what), node(node), port(port), round(round) {}
  NodeId node;
  int port;
  std::size_t round;
};

}  // namespace scut
