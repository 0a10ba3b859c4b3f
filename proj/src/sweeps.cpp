#include "metaqe/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <omp.h>

#include "metaqe/errors.hpp"

namespace metaqe {

namespace {

DiscrepancyMetric trace_discrepancy(const Trace& minus, const Trace& plus, MetricKind kind)
{
    if (minus.axis != plus.axis)
        throw GridError("discrepancy needs both traces on the same grid");
    if (minus.columns.empty() || plus.columns.empty())
        throw GridError("discrepancy needs a value column in each trace");
    const auto& x = minus.axis;
    const auto& a = minus.columns.front();
    const auto& b = plus.columns.front();
    if (x.size() < 2)
        throw GridError("discrepancy needs at least two grid points");

    std::vector<double> w(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = x[i + 1] - x[i];
        if (!(h > 0.0))
            throw GridError("grid must be strictly increasing");
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    DiscrepancyMetric m;
    m.kind = kind;
    m.value = weighted_discrepancy(a, b, w);
    const double peak = std::max(*std::max_element(a.begin(), a.end()), *std::max_element(b.begin(), b.end()));
    double tail = std::max(a.back(), b.back());
    if (kind == MetricKind::Spectrum)
        tail = std::max(tail, std::max(a.front(), b.front()));
    m.truncation = peak > 0.0 ? tail / peak : 0.0;
    return m;
}

}  // namespace

double weighted_discrepancy(const std::vector<double>& a, const std::vector<double>& b,
                            const std::vector<double>& weights)
{
    if (a.size() != b.size() || a.size() != weights.size())
        throw GridError("discrepancy inputs differ in length");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += weights[i] * std::abs(a[i] - b[i]);
        den += weights[i] * (a[i] + b[i]);
    }
    return den > 0.0 ? num / den : 0.0;
}

DiscrepancyMetric intensity_discrepancy(const Trace& minus, const Trace& plus)
{
    return trace_discrepancy(minus, plus, MetricKind::Intensity);
}

DiscrepancyMetric spectrum_discrepancy(const Trace& minus, const Trace& plus)
{
    return trace_discrepancy(minus, plus, MetricKind::Spectrum);
}

std::vector<double> intensity_time_grid(const EigenSystem& es)
{
    double slowest = std::numeric_limits<double>::infinity();
    double fastest = 0.0;
    double beat = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double rate = -es.g[j].imag();
        if (!(rate > 0.0))
            throw NonDecayingState("intensity grid needs decaying eigenstates");
        slowest = std::min(slowest, rate);
        fastest = std::max(fastest, rate);
        for (int k = 0; k < 3; ++k)
            beat = std::max(beat, std::abs(es.g[j].real() - es.g[k].real()));
    }
    // Every product term decays at least like exp(-2 slowest t).
    const double end = std::log(1e10) / (2.0 * slowest);
    double step = 1.0 / (20.0 * fastest);
    if (beat > 0.0)
        step = std::min(step, kTwoPi / (40.0 * beat));
    const auto count = static_cast<std::size_t>(std::clamp(std::ceil(end / step), 2000.0, 400000.0)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = end * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

SpectrumNodes spectrum_nodes(const EigenSystem& es, int count)
{
    double center = 0.0;
    double width = 0.0;
    for (int j = 0; j < 3; ++j) {
        center += es.g[j].real() / 3.0;
        width = std::max(width, -es.g[j].imag());
    }
    double spread = 0.0;
    for (int j = 0; j < 3; ++j)
        spread = std::max(spread, std::abs(es.g[j].real() - center));
    const double scale = std::max(width, spread);
    SpectrumNodes nodes;
    nodes.deltas.resize(count);
    nodes.weights.resize(count);
    const double h = kPi / count;
    for (int i = 0; i < count; ++i) {
        const double theta = -0.5 * kPi + (i + 0.5) * h;
        const double c = std::cos(theta);
        nodes.deltas[i] = center + scale * std::tan(theta);
        nodes.weights[i] = scale * h / (c * c);
    }
    return nodes;
}

DiscrepancyMetric spectrum_discrepancy_auto(const EigenSystem& es, const ObservationSetup& obs)
{
    const SpectrumTrace minus = emitted_spectrum(es, obs, Sublevel::Minus, {});
    const SpectrumTrace plus = emitted_spectrum(es, obs, Sublevel::Plus, {});
    auto evaluate = [&](int count) {
        const SpectrumNodes nodes = spectrum_nodes(es, count);
        std::vector<double> a(nodes.deltas.size());
        std::vector<double> b(nodes.deltas.size());
        for (std::size_t i = 0; i < nodes.deltas.size(); ++i) {
            a[i] = spectrum_direct(minus.f, es.g, nodes.deltas[i]);
            b[i] = spectrum_direct(plus.f, es.g, nodes.deltas[i]);
        }
        return weighted_discrepancy(a, b, nodes.weights);
    };
    DiscrepancyMetric m;
    m.kind = MetricKind::Spectrum;
    int count = 1000;
    double previous = evaluate(count);
    for (;;) {
        count *= 2;
        const double current = evaluate(count);
        m.value = current;
        m.truncation = std::abs(current - previous);
        if (m.truncation < 1e-7)
            return m;
        if (count > (1 << 21))
            throw IntegrationFailure("spectrum discrepancy did not converge", m.truncation);
        previous = current;
    }
}

DiscrepancyMetric intensity_discrepancy_auto(const EigenSystem& es, const ObservationSetup& obs)
{
    const std::vector<double> taus = intensity_time_grid(es);
    return intensity_discrepancy(farfield_intensity(es, obs, Sublevel::Minus, taus),
                                 farfield_intensity(es, obs, Sublevel::Plus, taus));
}

std::string_view to_string(MapMetric metric)
{
    switch (metric) {
    case MapMetric::StrongCoupling:
        return "strong_coupling";
    case MapMetric::IntensityDiscrepancy:
        return "intensity_discrepancy";
    case MapMetric::SpectrumDiscrepancy:
        return "spectrum_discrepancy";
    }
    return "unknown";
}

MapMetric parse_map_metric(std::string_view name)
{
    for (MapMetric m : {MapMetric::StrongCoupling, MapMetric::IntensityDiscrepancy, MapMetric::SpectrumDiscrepancy})
        if (to_string(m) == name)
            return m;
    throw InvalidParameter("unknown map metric '" + std::string(name) + "'");
}

std::size_t Map2D::invalid_count() const
{
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{0}));
}

double map_cell(const Scenario& scenario, MapMetric metric)
{
    const ScenarioResult r = evaluate_scenario(scenario);
    switch (metric) {
    case MapMetric::StrongCoupling: {
        const CouplingConstants c = coupling_constants(r.untilted);
        return strong_coupling_parameter(c.mm, c.mp);
    }
    case MapMetric::IntensityDiscrepancy:
        return intensity_discrepancy_auto(r.eigen, observe_scenario(scenario)).value;
    case MapMetric::SpectrumDiscrepancy:
        return spectrum_discrepancy_auto(r.eigen, observe_scenario(scenario)).value;
    }
    return 0.0;
}

namespace {

void validate_grid(const std::vector<double>& grid, const char* name)
{
    if (grid.empty())
        throw InvalidParameter(std::string(name) + " grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] <= 3.0))
            throw InvalidParameter(std::string(name) + " grid values must lie in (0, 3]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw InvalidParameter(std::string(name) + " grid must be strictly increasing");
    }
}

Map2D prepare_map(const Scenario& base, const std::vector<double>& omega_x, const std::vector<double>& omega_y,
                  MapMetric metric)
{
    validate_grid(omega_x, "omega_x");
    validate_grid(omega_y, "omega_y");
    if (base.model != ConductivityModel::Lorentz)
        throw InvalidParameter("maps over resonance frequencies need the Lorentz conductivity model");
    Map2D map;
    map.omega_x = omega_x;
    map.omega_y = omega_y;
    map.metric = metric;
    const std::size_t n = omega_x.size() * omega_y.size();
    map.values.assign(n, std::nan(""));
    map.valid.assign(n, 0);
    map.errors.assign(n, {});
    return map;
}

// Fills one cell; numerical failures flag the cell instead of aborting the map.
void fill_cell(Map2D& map, const Scenario& base, std::size_t cell)
{
    Scenario s = base;
    s.x.resonance = map.omega_x[cell / map.omega_y.size()];
    s.y.resonance = map.omega_y[cell % map.omega_y.size()];
    try {
        map.values[cell] = map_cell(s, map.metric);
        map.valid[cell] = 1;
    } catch (const NumericalError& e) {
        map.errors[cell] = e.what();
    }
}

}  // namespace

Map2D map2d_serial(const Scenario& base, const std::vector<double>& omega_x, const std::vector<double>& omega_y,
                   MapMetric metric)
{
    Map2D map = prepare_map(base, omega_x, omega_y, metric);
    for (std::size_t cell = 0; cell < map.values.size(); ++cell)
        fill_cell(map, base, cell);
    return map;
}

Map2D map2d(const Scenario& base, const std::vector<double>& omega_x, const std::vector<double>& omega_y,
            MapMetric metric, int workers)
{
    Map2D map = prepare_map(base, omega_x, omega_y, metric);
    const auto n = static_cast<std::int64_t>(map.values.size());
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    std::exception_ptr failure;

    // Each cell writes only its own slot, so the result is independent of scheduling.
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t cell = 0; cell < n; ++cell) {
        try {
            fill_cell(map, base, static_cast<std::size_t>(cell));
        } catch (...) {
#pragma omp critical(metaqe_map_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return map;
}

std::vector<SubstrateCase> substrate_comparison(const Scenario& base, const std::vector<double>& eps_substrate,
                                                const std::vector<double>& deltas,
                                                const std::vector<double>& times)
{
    std::vector<SubstrateCase> out;
    for (double eps : eps_substrate) {
        Scenario s = base;
        s.geometry.eps_lower = eps;
        const ScenarioResult r = evaluate_scenario(s);
        const ObservationSetup obs = observe_scenario(s);
        SubstrateCase c;
        c.eps_substrate = eps;
        c.farfield = obs.farfield;
        c.minus = emitted_spectrum(r.eigen, obs, Sublevel::Minus, deltas);
        c.plus = emitted_spectrum(r.eigen, obs, Sublevel::Plus, deltas);
        c.spectrum = spectrum_discrepancy_auto(r.eigen, obs);
        c.p_minus_plus = population(r.eigen, Sublevel::Plus, Sublevel::Minus, times);
        c.p_plus_minus = population(r.eigen, Sublevel::Minus, Sublevel::Plus, times);
        for (std::size_t i = 0; i < times.size(); ++i)
            c.max_population_gap =
                std::max(c.max_population_gap, std::abs(c.p_minus_plus.values[i] - c.p_plus_minus.values[i]));
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace metaqe
