#ifndef METAQE_TYPES_HPP
#define METAQE_TYPES_HPP

#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace metaqe {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Library-wide natural units: hbar = c = 1 and omega0 = k0 = 1. Public
// positions and heights are given in vacuum wavelengths lambda0; internally
// every length is measured in 1/k0 = lambda0 / 2pi.
inline constexpr double to_internal_length(double lambdas) { return kTwoPi * lambdas; }
inline constexpr double to_wavelengths(double internal) { return internal / kTwoPi; }

/// Angular-momentum projection of an excited sublevel.
enum class Sublevel : int { Minus = -1, Zero = 0, Plus = 1 };

/// Row/column of a sublevel in spherical-basis matrices (ordered -1, 0, +1).
constexpr int index_of(Sublevel q) { return static_cast<int>(q) + 1; }
constexpr Sublevel sublevel_at(int index) { return static_cast<Sublevel>(index - 1); }
constexpr int projection(Sublevel q) { return static_cast<int>(q); }

inline constexpr Sublevel kAllSublevels[3] = {Sublevel::Minus, Sublevel::Zero, Sublevel::Plus};

/// Sampled function of one real variable (time or detuning) with named columns.
struct Trace {
    std::string axis_name;
    std::vector<double> axis;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(std::string_view name) const;
    void add_column(std::string name, std::vector<double> values);
};

}  // namespace metaqe

#endif
