#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace manetsim {

/// Violation of an internal precondition or invariant (scheduling in the
/// past, packet conservation failure, ...). Maps to process exit code 2.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Invalid scenario configuration. Carries every violation found, not just
/// the first. Maps to process exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out = "invalid configuration:";
    for (const auto& s : issues) {
      out += "\n  - ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> issues_;
};

}  // namespace manetsim
