#ifndef METAQE_EMITTER_HPP
#define METAQE_EMITTER_HPP

#include "metaqe/greens.hpp"
#include "metaqe/types.hpp"

namespace metaqe {

/// Orientation of the emitter quantization axis. Angles in radians, unnormalized.
struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Columns e_{-1} = (x - iy)/sqrt2, e_0 = z, e_{+1} = -(x + iy)/sqrt2.
CMat3 spherical_basis();

/// Active rotation M = Rz(alpha) Ry(beta) Rz(gamma).
Mat3 rotation_matrix(const EulerAngles& angles);

/// T = M S: spherical transition vectors of the tilted emitter in the lab frame.
CMat3 transition_transform(const EulerAngles& angles);

/// Dipole magnitude giving gamma0 = (4/3) d^2 k0^3 = 1.
inline constexpr double kUnitRateDipole = 0.8660254037844386;

double free_space_decay_rate(double dipole, double omega = 1.0);

/**
 * Level-shift matrix at the bare transition frequency, in units of gamma0.
 * `cartesian` is the lab-frame coupling -4pi k^2 d^2 G / gamma0; `spherical`
 * is its projection on the (possibly tilted) transition basis, rows and
 * columns ordered q = -1, 0, +1.
 */
struct SelfEnergy {
    CMat3 cartesian = CMat3::Zero();
    CMat3 spherical = CMat3::Zero();
    EulerAngles angles;

    Complex operator()(Sublevel final_state, Sublevel initial_state) const
    {
        return spherical(index_of(final_state), index_of(initial_state));
    }
};

/// -4pi k^2 d^2 G / gamma0 for the total equal-point tensor G.
CMat3 cartesian_coupling(const DyadicGreens& total, double dipole = kUnitRateDipole);

/// Untilted self-energy. Throws InvalidParameter if some level would grow,
/// which happens when the vacuum imaginary part is missing from G.
SelfEnergy self_energy(const DyadicGreens& total, double dipole = kUnitRateDipole);

/// T^dagger Sigma_cart T for the tilted quantization axis.
SelfEnergy rotate_self_energy(const SelfEnergy& sigma, const EulerAngles& angles);
SelfEnergy rotate_self_energy(const CMat3& cartesian, const EulerAngles& angles);

/// Named entries of the spherical self-energy, in gamma0 units.
struct CouplingConstants {
    Complex mm, mp, pm, pp, zz;
    Complex m0, p0, zm, zp;
};

CouplingConstants coupling_constants(const SelfEnergy& sigma);

}  // namespace metaqe

#endif
