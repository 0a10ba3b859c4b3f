#include "metaqe/scenario.hpp"

#include "metaqe/errors.hpp"

namespace metaqe {

std::string_view to_string(ConductivityModel model)
{
    switch (model) {
    case ConductivityModel::Lorentz:
        return "lorentz";
    case ConductivityModel::ExtremeLimit:
        return "extreme_limit";
    case ConductivityModel::None:
        return "none";
    }
    return "unknown";
}

void Scenario::validate() const
{
    geometry.validate();
    if (!(omega > 0.0))
        throw InvalidParameter("frequency must be positive");
    if (model == ConductivityModel::Lorentz) {
        x.validate();
        y.validate();
    }
    detector.validate();
}

SurfaceConductivity Scenario::conductivity() const
{
    switch (model) {
    case ConductivityModel::Lorentz:
        return evaluate_conductivity(x, y, omega);
    case ConductivityModel::ExtremeLimit:
        return extreme_anisotropy_limit();
    case ConductivityModel::None:
        return {};
    }
    return {};
}

ScenarioResult evaluate_scenario(const Scenario& scenario)
{
    scenario.validate();
    ScenarioResult r;
    r.sigma = scenario.conductivity();
    r.greens = greens_total_equal_point(scenario.geometry, scenario.omega, r.sigma, scenario.quadrature);
    r.untilted = self_energy(r.greens);
    r.tilted = rotate_self_energy(r.untilted, scenario.angles);
    r.eigen = eigendecompose(r.untilted.cartesian, scenario.angles);
    return r;
}

ObservationSetup observe_scenario(const Scenario& scenario)
{
    return make_observation(scenario.geometry, scenario.omega, scenario.conductivity(), scenario.detector,
                            scenario.angles, scenario.farfield);
}

}  // namespace metaqe
