#pragma once

// Named self-check suites behind the `verify` command.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mixbound::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// shells, spectrum, oracle, quadrature.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument for
/// an unknown name.
std::vector<CheckResult> run(std::string_view suite, std::uint64_t seed, int threads = 1);

}  // namespace mixbound::verify
