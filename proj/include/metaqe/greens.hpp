#ifndef METAQE_GREENS_HPP
#define METAQE_GREENS_HPP

#include "metaqe/medium.hpp"
#include "metaqe/types.hpp"

namespace metaqe {

/// Conducting sheet at z = 0 between an upper half-space 1 and a substrate 2.
struct LayeredGeometry {
    double height = 0.05;  ///< emitter height above the sheet, in lambda0
    double eps_upper = 1.0;
    double eps_lower = 1.0;

    void validate() const;
    double height_internal() const { return to_internal_length(height); }
    /// Emitter position (0, 0, height) in lambda0.
    Vec3 emitter_position() const { return {0.0, 0.0, height}; }
};

/// TE (t) and TM (p) polarization vectors of one plane wave in medium j.
struct ModePair {
    CVec3 t;
    CVec3 p;
    Complex kz;
};

enum class Direction : int { Down = -1, Up = +1 };

/// Longitudinal wavenumber sqrt(k^2 - kappa^2) on the branch Im >= 0 (Re >= 0 when real).
Complex longitudinal_wavenumber(Complex k, Complex kappa);

/// Mode vectors for in-plane wavevector (kx, ky); requires kappa > 0.
ModePair mode_vectors(double kx, double ky, Complex k, Direction direction);

/// Same construction parametrized by |kappa| (possibly complex, on a deformed
/// contour) and azimuth phi. Regular at kappa = 0.
ModePair mode_vectors_polar(Complex kappa, double phi, Complex k, Direction direction);

/**
 * Plane-wave scattering amplitudes of the sheet. R11_kl reflects incident mode
 * l into mode k of the upper medium; R21_kl transmits it into the substrate.
 */
struct FresnelCoefficients {
    Complex r11_tt, r11_tp, r11_pt, r11_pp;
    Complex r21_tt, r21_tp, r21_pt, r21_pp;
    double condition = 1.0;
};

FresnelCoefficients fresnel_solve(double kx, double ky, double omega, const SurfaceConductivity& sigma,
                                  const LayeredGeometry& geom);

FresnelCoefficients fresnel_solve_polar(Complex kappa, double phi, double omega,
                                        const SurfaceConductivity& sigma, const LayeredGeometry& geom);

enum class GreensPart { Free, Scattered11, FarField };

/// 3x3 dyadic Green's tensor with its provenance. Points are in lambda0.
struct DyadicGreens {
    CMat3 matrix = CMat3::Zero();
    Vec3 r_field = Vec3::Zero();
    Vec3 r_source = Vec3::Zero();
    double omega = 1.0;
    GreensPart part = GreensPart::Free;
    double error_estimate = 0.0;
};

struct QuadratureOptions {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    /// Evanescent tail is cut where the vertical decay envelope falls below this.
    double envelope_cutoff = 1e-14;
    /// Depth of the deformed kappa contour in units of min(k1, k2).
    double contour_depth = 0.5;
    int max_panels = 4000;
};

/// Closed-form homogeneous-medium dyad. Throws CoincidentPoints for r == r'.
DyadicGreens greens_free(const Vec3& r, const Vec3& r_source, double omega, double eps = 1.0);

/// Im G0(r, r) = k / 6pi times the identity; the divergent real part is dropped.
DyadicGreens greens_free_imag_equal(double omega, double eps = 1.0);

/**
 * Reflected part G_sc^11(r, r') for two points in the upper half-space, from
 * the angular-spectrum integral over (kx, ky). Each component runs along a
 * path pushed below the real axis, which passes under the branch points and
 * any guided-wave poles, so lossless and ideal sheets are handled as the
 * loss -> 0+ limit.
 */
DyadicGreens greens_scattered(const Vec3& r, const Vec3& r_source, const LayeredGeometry& geom, double omega,
                              const SurfaceConductivity& sigma, const QuadratureOptions& options = {});

DyadicGreens greens_scattered_equal_point(const LayeredGeometry& geom, double omega,
                                          const SurfaceConductivity& sigma,
                                          const QuadratureOptions& options = {});

/// G_sc(r_a, r_a) + i k1/6pi I at the emitter position; input to the self-energy.
DyadicGreens greens_total_equal_point(const LayeredGeometry& geom, double omega,
                                      const SurfaceConductivity& sigma,
                                      const QuadratureOptions& options = {});

struct FarFieldOptions {
    /// Use one distance |r_d| for the direct and the image wave.
    bool equal_distance_approximation = false;
};

/// Minimum detector distance accepted by greens_farfield, in lambda0.
inline constexpr double kMinFarFieldDistance = 10.0;

/**
 * Far-zone tensor at detector r_d for the emitter at (0, 0, height): the
 * transverse direct wave plus the specular image wave weighted by the Fresnel
 * reflection matrix at kappa = k1 sin(theta) along the detector azimuth.
 */
DyadicGreens greens_farfield(const Vec3& r_detector, const LayeredGeometry& geom, double omega,
                             const SurfaceConductivity& sigma, const FarFieldOptions& options = {});

}  // namespace metaqe

#endif
