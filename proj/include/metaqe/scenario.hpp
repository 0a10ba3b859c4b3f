#ifndef METAQE_SCENARIO_HPP
#define METAQE_SCENARIO_HPP

#include "metaqe/dynamics.hpp"
#include "metaqe/emitter.hpp"
#include "metaqe/greens.hpp"
#include "metaqe/medium.hpp"
#include "metaqe/observables.hpp"

namespace metaqe {

enum class ConductivityModel { Lorentz, ExtremeLimit, None };

std::string_view to_string(ConductivityModel model);

/// Every physical input of one emitter-plus-metasurface configuration.
struct Scenario {
    LayeredGeometry geometry;
    ConductivityModel model = ConductivityModel::Lorentz;
    LorentzOscillator x{1.0, 1.5, 0.1};
    LorentzOscillator y{1.0, 1.1, 0.1};
    EulerAngles angles{kPi / 4.0, kPi / 4.0, 0.0};
    DetectorGeometry detector;
    FarFieldOptions farfield;
    QuadratureOptions quadrature;
    double omega = 1.0;

    void validate() const;
    SurfaceConductivity conductivity() const;
};

/// Pipeline products shared by the dynamics and observables commands.
struct ScenarioResult {
    SurfaceConductivity sigma;
    DyadicGreens greens;      ///< total equal-point tensor (scattered + i k/6pi)
    SelfEnergy untilted;
    SelfEnergy tilted;
    EigenSystem eigen;
};

ScenarioResult evaluate_scenario(const Scenario& scenario);

/// Far-field tensors for the scenario's detector; evaluated separately since
/// population-only workflows never need them.
ObservationSetup observe_scenario(const Scenario& scenario);

}  // namespace metaqe

#endif
