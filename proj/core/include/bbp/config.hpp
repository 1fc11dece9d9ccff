#pragma once

#include <string>
#include <vector>

#include "bbp/search.hpp"

namespace bbp {

/// Parse error with line diagnostics.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a block-structured key-value search configuration:
///
///   [search]
///   label = lafont
///   minpoly = 2*y^2 - 1
///   root_interval = 7/10 3/4
///   # or: r_rational = 1/2
///   b = 24
///   N = 10^10
///   escalation = 10^10 10^15
///   digits = 23
///   delta = 3/4
///   targets = pi          # empty value means a null-only search
///   max_last = 0
///   max_count = 32
///   residual_threshold = 1/1000000
///
/// All rationals are exact strings; no floating literals.
std::vector<SearchConfig> parse_config(const std::string& text);
std::vector<SearchConfig> load_config_file(const std::string& path);

}  // namespace bbp
