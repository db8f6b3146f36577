#include "qswap/config.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace qswap {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size() || !std::isfinite(v)) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config field '" + key + "': malformed number '" +
                                    text + "'");
    }
}

}  // namespace

std::size_t RunConfig::grid_size() const {
    return static_cast<std::size_t>(std::floor((t_end - t_start) / t_step + 1e-9)) + 1;
}

void RunConfig::validate() const {
    if (!(t_start < t_end)) {
        throw std::invalid_argument("config field 't_start'/'t_end': need t_start < t_end");
    }
    if (t_start < 0.0) {
        throw std::invalid_argument("config field 't_start': must be >= 0");
    }
    if (!(t_step > 0.0)) {
        throw std::invalid_argument("config field 't_step': must be > 0");
    }
    if ((t_end - t_start) / t_step > 1e7) {
        throw std::invalid_argument(
            "config field 't_step': more than 1e7 samples requested");
    }
    if (!coeffs.normalized()) {
        throw std::invalid_argument(
            "config field 'alpha1/beta1/alpha2/beta2': coefficients not normalized");
    }
    // CouplingParams invariants hold by construction.
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        return {parse_double("<complex>", trim(text)), 0.0};
    }
    return {parse_double("<complex>", trim(text.substr(0, comma))),
            parse_double("<complex>", trim(text.substr(comma + 1)))};
}

ConfigEntries load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config file '" + path + "': cannot open");
    }
    ConfigEntries entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config file '" + path + "' line " +
                                        std::to_string(lineno) + ": expected key = value");
        }
        entries.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return entries;
}

RunConfig parse_config(const std::optional<std::string>& config_path,
                       const ConfigEntries& flag_overrides) {
    // Later entries win; flags come after the file.
    std::map<std::string, std::string> values;
    if (config_path) {
        for (const auto& [key, value] : load_config_file(*config_path)) {
            values[key] = value;
        }
    }
    for (const auto& [key, value] : flag_overrides) {
        values[key] = value;
    }

    RunConfig config;
    double g1 = 1.0, g2 = 1.0, delta_over_g = 0.0;
    for (const auto& [key, value] : values) {
        try {
            if (key == "g1") {
                g1 = parse_double(key, value);
            } else if (key == "g2") {
                g2 = parse_double(key, value);
            } else if (key == "delta_over_g") {
                delta_over_g = parse_double(key, value);
            } else if (key == "alpha1") {
                config.coeffs.alpha1 = parse_complex(value);
            } else if (key == "beta1") {
                config.coeffs.beta1 = parse_complex(value);
            } else if (key == "alpha2") {
                config.coeffs.alpha2 = parse_complex(value);
            } else if (key == "beta2") {
                config.coeffs.beta2 = parse_complex(value);
            } else if (key == "t_start") {
                config.t_start = parse_double(key, value);
            } else if (key == "t_end") {
                config.t_end = parse_double(key, value);
            } else if (key == "t_step") {
                config.t_step = parse_double(key, value);
            } else if (key == "out") {
                config.output_path = value;
            } else {
                throw std::invalid_argument("unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument& err) {
            // parse_complex reports a generic field name; attach the real one.
            const std::string what = err.what();
            if (what.find("<complex>") != std::string::npos) {
                throw std::invalid_argument("config field '" + key +
                                            "': malformed complex '" + value + "'");
            }
            throw;
        }
    }
    // Detunings are given in units of g on the interface; g1 is the reference.
    config.params = CouplingParams(g1, g2, delta_over_g * g1);
    config.validate();
    return config;
}

}  // namespace qswap
