#ifndef METAQE_SWEEPS_HPP
#define METAQE_SWEEPS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metaqe/scenario.hpp"

namespace metaqe {

enum class MetricKind { Intensity, Spectrum };

/// Normalized L1 difference of two non-negative traces, in [0, 1].
struct DiscrepancyMetric {
    double value = 0.0;
    MetricKind kind = MetricKind::Intensity;
    /// Trace grids: max end value over peak. Automatic spectrum nodes: change under node doubling.
    double truncation = 0.0;
};

/// Trapezoid ratio over the first column of two traces on the same grid.
DiscrepancyMetric intensity_discrepancy(const Trace& minus, const Trace& plus);
DiscrepancyMetric spectrum_discrepancy(const Trace& minus, const Trace& plus);

/// sum w |a - b| / sum w (a + b); zero when both vanish.
double weighted_discrepancy(const std::vector<double>& a, const std::vector<double>& b,
                            const std::vector<double>& weights);

/// Uniform tau grid that resolves every beat and runs until all terms decay below 1e-10.
std::vector<double> intensity_time_grid(const EigenSystem& es);

/// Nodes and weights of the midpoint rule in theta for delta = c + s tan(theta), which maps the
/// whole real line onto (-pi/2, pi/2) and turns Lorentzian tails into smooth endpoints.
struct SpectrumNodes {
    std::vector<double> deltas;
    std::vector<double> weights;
};

SpectrumNodes spectrum_nodes(const EigenSystem& es, int count);

/// S~ for q0 = -1 vs +1 on the whole line, doubling the node count until stable to 1e-7.
DiscrepancyMetric spectrum_discrepancy_auto(const EigenSystem& es, const ObservationSetup& obs);

/// I~ for q0 = -1 vs +1 on intensity_time_grid.
DiscrepancyMetric intensity_discrepancy_auto(const EigenSystem& es, const ObservationSetup& obs);

enum class MapMetric { StrongCoupling, IntensityDiscrepancy, SpectrumDiscrepancy };

std::string_view to_string(MapMetric metric);
MapMetric parse_map_metric(std::string_view name);

/// Values are stored row-major: values[ix * omega_y.size() + iy].
struct Map2D {
    std::vector<double> omega_x;
    std::vector<double> omega_y;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;
    std::vector<std::string> errors;
    MapMetric metric = MapMetric::StrongCoupling;

    double at(std::size_t ix, std::size_t iy) const { return values[ix * omega_y.size() + iy]; }
    std::size_t invalid_count() const;
};

/// Metric at a single (Omega_x, Omega_y) point of the scenario.
double map_cell(const Scenario& scenario, MapMetric metric);

/// OpenMP-parallel map; workers <= 0 uses the runtime default. Output does not depend on workers.
Map2D map2d(const Scenario& base, const std::vector<double>& omega_x, const std::vector<double>& omega_y,
            MapMetric metric, int workers = 0);

/// Sequential reference implementation of map2d.
Map2D map2d_serial(const Scenario& base, const std::vector<double>& omega_x, const std::vector<double>& omega_y,
                   MapMetric metric);

struct SubstrateCase {
    double eps_substrate = 1.0;
    CMat3 farfield = CMat3::Zero();
    SpectrumTrace minus;
    SpectrumTrace plus;
    DiscrepancyMetric spectrum;
    PopulationTrace p_minus_plus;  ///< P_{-1,+1}: +1 -> -1
    PopulationTrace p_plus_minus;
    double max_population_gap = 0.0;
};

std::vector<SubstrateCase> substrate_comparison(const Scenario& base, const std::vector<double>& eps_substrate,
                                                const std::vector<double>& deltas,
                                                const std::vector<double>& times);

}  // namespace metaqe

#endif
