#pragma once

#include <string>

#include "ansec/params.hpp"

namespace ansec {

// Parses the flat [system] key-value format:
//
//   [system]
//   n_antennas = 8
//   power_dbm = 10.0        # or power_linear = 10.0 (exactly one)
//   alpha = 4.0
//   r_bob = 1.0
//   lambda_e = 2.0
//   tau = 0.3
//   gamma_hat = 8.0
//
// '#' starts a comment; keys outside the list, duplicate keys, unknown
// sections, or both/neither power forms are ConfigErrors with the line
// number in the message. The parsed config is validated before returning.
SystemConfig parse_config(const std::string& text);

// Reads and parses a file; file-system failures are ConfigErrors too.
SystemConfig load_config(const std::string& path);

// Serialization of a config in the same format (power written as linear).
std::string format_config(const SystemConfig& cfg);

}  // namespace ansec
