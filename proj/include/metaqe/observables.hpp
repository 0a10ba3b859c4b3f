#ifndef METAQE_OBSERVABLES_HPP
#define METAQE_OBSERVABLES_HPP

#include <array>
#include <vector>

#include "metaqe/dynamics.hpp"
#include "metaqe/greens.hpp"

namespace metaqe {

/// Far-field detector. When tied to the tilt it sits at R M(alpha, beta, 0) z.
struct DetectorGeometry {
    double distance = 100.0;  ///< lambda0
    bool tied_to_tilt = true;
    Vec3 direction = Vec3::UnitZ();

    void validate() const;
    /// Detector position in lambda0, relative to the origin on the sheet.
    Vec3 position(const EulerAngles& angles) const;
};

/// Far-field tensors needed by the observables, evaluated once per scenario.
struct ObservationSetup {
    CMat3 farfield = CMat3::Zero();  ///< G^FF(r_d, r_a, omega0) with the sheet
    CMat3 vacuum = CMat3::Zero();    ///< direct wave only
    Vec3 detector = Vec3::Zero();
};

ObservationSetup make_observation(const LayeredGeometry& geom, double omega, const SurfaceConductivity& sigma,
                                  const DetectorGeometry& detector, const EulerAngles& angles,
                                  const FarFieldOptions& options = {});

/// One field vector per eigenstate j, ordered x, y, z.
using FieldVectors = std::array<CVec3, 3>;

/// f_j = (G V)_{:,j} (V^-1 T)_{j,q0}; reduces to G_{:,j} (MS)_{j,q0} for diagonal couplings.
FieldVectors field_vectors(const CMat3& g, const EigenSystem& es, Sublevel initial);

/// Detected intensity I_q0(tau) / I^0_q0 in column "intensity"; tau in 1/gamma0.
Trace farfield_intensity(const EigenSystem& es, const ObservationSetup& obs, Sublevel initial,
                         const std::vector<double>& taus);

/// Coefficients of S(delta) = sum_j (xi_j (delta - g_j') + eta_j g_j'') / |delta - g_j|^2.
struct SpectralDecomposition {
    std::array<double, 3> xi{};
    std::array<double, 3> eta{};

    double evaluate(const std::array<Complex, 3>& g, double delta) const;
};

SpectralDecomposition spectral_decomposition(const FieldVectors& f, const std::array<Complex, 3>& g);

/// |sum_j f_j / (delta - g_j)|^2.
double spectrum_direct(const FieldVectors& f, const std::array<Complex, 3>& g, double delta);

struct SpectrumTrace {
    Trace trace;  ///< axis "delta_gamma0", column "spectrum", normalized to S^0_q0
    FieldVectors f{};  ///< normalized spectral field vectors
    std::array<Complex, 3> g{};
    SpectralDecomposition decomposition;
    /// Largest |decomposition - direct form| on the grid, relative to the peak.
    double reconstruction_error = 0.0;
};

SpectrumTrace emitted_spectrum(const EigenSystem& es, const ObservationSetup& obs, Sublevel initial,
                               const std::vector<double>& deltas);

/// Columns e_{-1}, e_0, e_{+1} of the tilted spherical triad at the detector.
CMat3 detector_triad(const EulerAngles& angles);

/// Spectrum of the polarization `component` (column of `triad`), same normalization as the total.
SpectrumTrace polarization_resolved_spectrum(const EigenSystem& es, const ObservationSetup& obs, Sublevel initial,
                                             const CMat3& triad, Sublevel component,
                                             const std::vector<double>& deltas);

}  // namespace metaqe

#endif
