#pragma once

#include <stdexcept>

namespace sierp {

// A requested construction would need cells beyond the ambient window.
struct WindowTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point handed to a locator lies outside the ambient window.
struct PointOutsideWindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enclosure was requested above a definition level, where the
// corner-bracketing rule is unavailable.
struct DepthTooShallowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal consistency check failed: a graph energy that must be constant
// across refinement levels was not. Indicates a bug, never a math condition.
struct StabilizationFailureError : std::logic_error {
  using std::logic_error::logic_error;
};

// A sampled test function degenerated (zero energy); the sample is skipped.
struct DegenerateFunctionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sierp
