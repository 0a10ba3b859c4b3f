#ifndef METAQE_CONFIG_HPP
#define METAQE_CONFIG_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "metaqe/scenario.hpp"
#include "metaqe/sweeps.hpp"

namespace metaqe {

/// Inclusive uniform grid.
struct UniformGrid {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;

    std::vector<double> values() const;
};

/// Everything a CLI command needs, loaded from one JSON file.
struct RunConfig {
    std::string name = "scenario";
    Scenario scenario;
    Sublevel initial = Sublevel::Minus;
    UniformGrid tau{0.0, 10.0, 1001};
    UniformGrid delta{-10.0, 10.0, 2001};
    UniformGrid omega_x{0.2, 2.0, 50};
    UniformGrid omega_y{0.2, 2.0, 50};
    MapMetric metric = MapMetric::StrongCoupling;
    std::vector<double> eps_substrate{1.0, 2.2};
};

/// Throws ConfigError naming the offending field, e.g. "conductivity.x.damping".
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form; parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& config);

/// Angle literal: a number in radians, or a string such as "pi/4", "3pi/8", "0.25*pi".
double parse_angle(std::string_view text);

}  // namespace metaqe

#endif
