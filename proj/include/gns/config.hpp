#pragma once

// Flat key=value scenario files:
//
//     # comment
//     id=tg-nu1
//     nu=1
//     T=1
//     dt=1e-3
//     cutoff=2
//     ic=taylor_green
//     forcing=zero
//     stride=1
//     seed=7
//     nonlinear=on
//     states=on

#include <iosfwd>
#include <string>

#include "gns/integrator.hpp"

namespace gns {

/// Throws ConfigError carrying the offending line number.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ScenarioConfig& config);

}  // namespace gns
