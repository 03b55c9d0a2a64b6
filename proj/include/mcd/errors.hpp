#pragma once

#include <stdexcept>
#include <string>

namespace mcd {

/// Malformed input: unreadable file, bad JSON, schema violation.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario rejected by validation; carries the failed-check summary.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Engine self-consistency violation (non-decreasing k, broken tiling, ...).
/// Reaching this means the scenario's asserted dimension data is inconsistent.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mcd
