// Run configuration shared by the CLI subcommands: physical parameters,
// initial-state coefficients, sampling grid, output destination.
// Values come from built-in defaults, then a key = value config file,
// then explicit flag overrides, in that order.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qswap/swap_protocol.hpp"

namespace qswap {

struct RunConfig {
    CouplingParams params{1.0, 1.0, 0.0};
    BellCoefficients coeffs;      // balanced by default
    double t_start = 0.0;         // us
    double t_end = 50.0;          // us
    double t_step = 0.01;         // us
    std::string output_path;      // empty = stdout

    std::size_t grid_size() const;
    double grid_time(std::size_t i) const { return t_start + static_cast<double>(i) * t_step; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// "re" or "re,im".
Complex parse_complex(const std::string& text);

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

// UTF-8 text, one key = value per line, '#' comments, blank lines ignored.
ConfigEntries load_config_file(const std::string& path);

// Defaults <- file entries <- flag overrides; validates the result.
// Unknown keys and malformed values throw with the offending field named.
// Keys: g1, g2, delta_over_g, alpha1, beta1, alpha2, beta2, t_start, t_end,
// t_step, out. delta_over_g is converted to rad/us using g1 as reference.
RunConfig parse_config(const std::optional<std::string>& config_path,
                       const ConfigEntries& flag_overrides);

}  // namespace qswap
