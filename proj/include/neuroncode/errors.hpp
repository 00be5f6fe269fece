#pragma once

#include <stdexcept>
#include <string>

namespace neuroncode {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// mismatched vector lengths or out-of-range coordinate indices
struct dimension_error : error {
  using error::error;
};

// violated value-level precondition (non-binary weights, overlapping
// noise sets, non-canonical bias, ...)
struct domain_error : error {
  using error::error;
};

// operation undefined for the given input (all-zero weights, all-zero
// coded weights)
struct degenerate_error : error {
  using error::error;
};

// enumeration would exceed the configured cap or pattern budget
struct resource_error : error {
  using error::error;
};

// malformed textual input (rational literals, record fields)
struct parse_error : error {
  using error::error;
};

}  // namespace neuroncode
