#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pbar {

struct PropertyResult {
  std::string module;
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;  // description of the first failing case

  bool passed() const noexcept { return failures == 0; }
};

struct SelftestOptions {
  unsigned workers = 1;
  std::uint64_t seed = 0x5eed'0f'ba5eULL;  // for the randomized properties
};

struct PropertyCheck {
  std::string module;
  std::string name;
  std::function<PropertyResult(const SelftestOptions&)> run;
};

/// Every property in the suite, grouped by module in dependency order.
const std::vector<PropertyCheck>& selftest_properties();

/// Runs the whole suite. `on_result`, if set, is called after each property.
std::vector<PropertyResult> run_selftest(
    const SelftestOptions& options = {},
    const std::function<void(const PropertyResult&)>& on_result = {});

}  // namespace pbar
