#ifndef METAQE_MEDIUM_HPP
#define METAQE_MEDIUM_HPP

#include <string_view>

#include "metaqe/types.hpp"

namespace metaqe {

/// One Lorentzian resonance of the sheet response. All frequencies in omega0.
struct LorentzOscillator {
    double amplitude = 1.0;
    double resonance = 1.0;
    double damping = 0.1;

    void validate() const;
};

/**
 * Diagonal sheet conductivity in the principal frame of the metasurface,
 * measured in units of c/4pi so that the jump condition reads
 * e_z x (H1 - H2) = sigma E.
 *
 * A component may be flagged ideal, meaning sigma -> i*infinity. The flag is
 * consumed by the Fresnel solver, which then imposes a vanishing tangential
 * field along that axis instead of a finite jump.
 */
struct SurfaceConductivity {
    Complex xx{0.0, 0.0};
    Complex yy{0.0, 0.0};
    bool ideal_x = false;
    bool ideal_y = false;

    bool has_ideal_component() const { return ideal_x || ideal_y; }
    bool is_extreme_limit() const;
    bool is_vanishing() const;
    bool is_passive() const;
    /// Relabel x <-> y.
    SurfaceConductivity swapped_axes() const;
    SurfaceConductivity scaled(double factor) const;
};

enum class AnisotropyRegime { Inductive, Hyperbolic, Capacitive };

std::string_view to_string(AnisotropyRegime regime);

/// sigma_jj(w) = A_j i w / (w^2 - Omega_j^2 + i gamma_j w).
Complex lorentz_conductivity(const LorentzOscillator& model, double omega);

SurfaceConductivity evaluate_conductivity(const LorentzOscillator& model_x,
                                          const LorentzOscillator& model_y,
                                          double omega);

AnisotropyRegime classify_regime(const SurfaceConductivity& sigma);

/// Ideal conduction along y, isolation along x.
SurfaceConductivity extreme_anisotropy_limit();

/// Both axes ideal; the sheet acts as a perfect electric conductor.
SurfaceConductivity perfect_conductor();

}  // namespace metaqe

#endif
