#include "metaqe/emitter.hpp"

#include <cmath>

#include "metaqe/errors.hpp"

namespace metaqe {

CMat3 spherical_basis()
{
    const double r = 1.0 / std::sqrt(2.0);
    CMat3 s;
    s << r, 0.0, -r,
        Complex(0.0, -r), 0.0, Complex(0.0, -r),
        0.0, 1.0, 0.0;
    return s;
}

Mat3 rotation_matrix(const EulerAngles& angles)
{
    const Eigen::AngleAxisd first(angles.alpha, Vec3::UnitZ());
    const Eigen::AngleAxisd second(angles.beta, Vec3::UnitY());
    const Eigen::AngleAxisd third(angles.gamma, Vec3::UnitZ());
    return (first * second * third).toRotationMatrix();
}

CMat3 transition_transform(const EulerAngles& angles)
{
    return rotation_matrix(angles).cast<Complex>() * spherical_basis();
}

double free_space_decay_rate(double dipole, double omega)
{
    if (!(dipole > 0.0) || !(omega > 0.0))
        throw InvalidParameter("dipole magnitude and frequency must be positive");
    return 4.0 / 3.0 * dipole * dipole * omega * omega * omega;
}

CMat3 cartesian_coupling(const DyadicGreens& total, double dipole)
{
    const double k = total.omega;
    const double gamma0 = free_space_decay_rate(dipole, k);
    return (-4.0 * kPi * k * k * dipole * dipole / gamma0) * total.matrix;
}

SelfEnergy self_energy(const DyadicGreens& total, double dipole)
{
    SelfEnergy out = rotate_self_energy(cartesian_coupling(total, dipole), EulerAngles{});
    for (int q = 0; q < 3; ++q) {
        if (out.spherical(q, q).imag() > 1e-12)
            throw InvalidParameter("self-energy has a growing level (Im Sigma_qq > 0); "
                                   "is the vacuum part missing from G?");
    }
    return out;
}

SelfEnergy rotate_self_energy(const CMat3& cartesian, const EulerAngles& angles)
{
    const CMat3 t = transition_transform(angles);
    SelfEnergy out;
    out.cartesian = cartesian;
    out.spherical = t.adjoint() * cartesian * t;
    out.angles = angles;
    return out;
}

SelfEnergy rotate_self_energy(const SelfEnergy& sigma, const EulerAngles& angles)
{
    return rotate_self_energy(sigma.cartesian, angles);
}

CouplingConstants coupling_constants(const SelfEnergy& sigma)
{
    using enum Sublevel;
    CouplingConstants c;
    c.mm = sigma(Minus, Minus);
    c.mp = sigma(Minus, Plus);
    c.pm = sigma(Plus, Minus);
    c.pp = sigma(Plus, Plus);
    c.zz = sigma(Zero, Zero);
    c.m0 = sigma(Minus, Zero);
    c.p0 = sigma(Plus, Zero);
    c.zm = sigma(Zero, Minus);
    c.zp = sigma(Zero, Plus);
    return c;
}

}  // namespace metaqe
