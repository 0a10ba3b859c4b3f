#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "metaqe/config.hpp"
#include "metaqe/csv.hpp"
#include "metaqe/errors.hpp"
#include "metaqe/scenario.hpp"
#include "metaqe/sweeps.hpp"

namespace fs = std::filesystem;
using namespace metaqe;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    int workers = 0;
    double tolerance = 0.0;
};

fs::path output(const Options& opt, const RunConfig& cfg, const std::string& suffix)
{
    return fs::path(opt.out_dir) / (cfg.name + "_" + suffix);
}

std::string sublevel_tag(Sublevel q)
{
    switch (q) {
    case Sublevel::Minus:
        return "m1";
    case Sublevel::Zero:
        return "0";
    case Sublevel::Plus:
        return "p1";
    }
    return "?";
}

void cmd_gf_probe(const Options& opt, const RunConfig& cfg)
{
    const Scenario& sc = cfg.scenario;
    const SurfaceConductivity sigma = sc.conductivity();
    const DyadicGreens scattered = greens_scattered_equal_point(sc.geometry, sc.omega, sigma, sc.quadrature);
    const ObservationSetup obs = observe_scenario(sc);

    std::vector<std::vector<std::string>> rows;
    auto emit = [&](const char* tensor, const CMat3& m) {
        std::printf("%s\n", tensor);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                std::printf("  %+.10e%+.10ei", m(i, j).real(), m(i, j).imag());
                rows.push_back({tensor, "xyz"[i] + std::string(), "xyz"[j] + std::string(),
                                csv::format_number(m(i, j).real()), csv::format_number(m(i, j).imag())});
            }
            std::printf("\n");
        }
    };
    emit("scattered", scattered.matrix);
    emit("farfield", obs.farfield);
    std::printf("quadrature error estimate %.3e\n", scattered.error_estimate);
    csv::write_rows(output(opt, cfg, "greens.csv"), {"tensor", "row", "col", "re", "im"}, rows);
}

void cmd_dynamics(const Options& opt, const RunConfig& cfg)
{
    using enum Sublevel;
    const ScenarioResult r = evaluate_scenario(cfg.scenario);
    const std::vector<double> times = cfg.tau.values();
    auto p = [&](Sublevel initial, Sublevel final_state) {
        return population(r.eigen, initial, final_state, times).values;
    };
    std::vector<double> p_m1_m1 = p(Minus, Minus);
    std::vector<double> p_p1_m1 = p(Minus, Plus);
    std::vector<double> p_m1_p1 = p(Plus, Minus);
    std::vector<double> p_p1_p1 = p(Plus, Plus);
    std::vector<double> p_0_m1 = p(Minus, Zero);
    std::vector<double> diff(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        diff[i] = p_m1_p1[i] - p_p1_m1[i];
    csv::write_table(output(opt, cfg, "dynamics.csv"),
                     {"tau_gamma0", "P_m1_m1", "P_p1_m1", "P_m1_p1", "P_p1_p1", "P_0_m1", "asymmetry"},
                     {times, p_m1_m1, p_p1_m1, p_m1_p1, p_p1_p1, p_0_m1, diff});

    const CouplingConstants c = coupling_constants(r.untilted);
    std::printf("g_mm = %+.10f %+.10fi\ng_mp = %+.10f %+.10fi\n", c.mm.real(), c.mm.imag(), c.mp.real(),
                c.mp.imag());
    std::printf("strong coupling parameter %.10f\n", strong_coupling_parameter(c.mm, c.mp));
    for (int j = 0; j < 3; ++j)
        std::printf("g_%c = %+.10f %+.10fi\n", "xyz"[j], r.eigen.g[j].real(), r.eigen.g[j].imag());
}

void cmd_intensity(const Options& opt, const RunConfig& cfg)
{
    const ScenarioResult r = evaluate_scenario(cfg.scenario);
    const ObservationSetup obs = observe_scenario(cfg.scenario);
    const std::vector<double> taus = cfg.tau.values();
    const Trace minus = farfield_intensity(r.eigen, obs, Sublevel::Minus, taus);
    const Trace plus = farfield_intensity(r.eigen, obs, Sublevel::Plus, taus);
    csv::write_table(output(opt, cfg, "intensity.csv"), {"tau_gamma0", "value_q0_m1", "value_q0_p1"},
                     {taus, minus.columns.front(), plus.columns.front()});
    const DiscrepancyMetric m = intensity_discrepancy(minus, plus);
    std::printf("intensity discrepancy %.10f (tail ratio %.3e)\n", m.value, m.truncation);
}

void cmd_spectrum(const Options& opt, const RunConfig& cfg)
{
    const ScenarioResult r = evaluate_scenario(cfg.scenario);
    const ObservationSetup obs = observe_scenario(cfg.scenario);
    const std::vector<double> deltas = cfg.delta.values();
    const SpectrumTrace minus = emitted_spectrum(r.eigen, obs, Sublevel::Minus, deltas);
    const SpectrumTrace plus = emitted_spectrum(r.eigen, obs, Sublevel::Plus, deltas);
    csv::write_table(output(opt, cfg, "spectrum.csv"), {"delta_gamma0", "value_q0_m1", "value_q0_p1"},
                     {deltas, minus.trace.columns.front(), plus.trace.columns.front()});

    std::vector<std::vector<double>> lines(6);
    for (const auto& [q, s] : {std::pair{-1, &minus}, std::pair{1, &plus}}) {
        for (int j = 0; j < 3; ++j) {
            lines[0].push_back(q);
            lines[1].push_back(j);
            lines[2].push_back(s->g[j].real());
            lines[3].push_back(s->g[j].imag());
            lines[4].push_back(s->decomposition.xi[j]);
            lines[5].push_back(s->decomposition.eta[j]);
        }
    }
    csv::write_table(output(opt, cfg, "spectrum_lines.csv"), {"q0", "eigenstate", "g_re", "g_im", "xi", "eta"},
                     lines);

    const CMat3 triad = detector_triad(cfg.scenario.angles);
    std::vector<std::string> header{"delta_gamma0"};
    std::vector<std::vector<double>> columns{deltas};
    for (Sublevel q0 : {Sublevel::Minus, Sublevel::Plus}) {
        for (Sublevel qd : kAllSublevels) {
            header.push_back("pol_" + sublevel_tag(qd) + "_q0_" + sublevel_tag(q0));
            columns.push_back(
                polarization_resolved_spectrum(r.eigen, obs, q0, triad, qd, deltas).trace.columns.front());
        }
    }
    csv::write_table(output(opt, cfg, "spectrum_polarized.csv"), header, columns);

    const DiscrepancyMetric m = spectrum_discrepancy_auto(r.eigen, obs);
    std::printf("spectrum discrepancy %.10f (node-doubling change %.3e)\n", m.value, m.truncation);
}

void cmd_map(const Options& opt, const RunConfig& cfg)
{
    const std::vector<double> ox = cfg.omega_x.values();
    const std::vector<double> oy = cfg.omega_y.values();
    const Map2D map = map2d(cfg.scenario, ox, oy, cfg.metric, opt.workers);

    std::vector<std::vector<double>> columns(3);
    nlohmann::ordered_json invalid = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < ox.size(); ++i) {
        for (std::size_t j = 0; j < oy.size(); ++j) {
            columns[0].push_back(ox[i]);
            columns[1].push_back(oy[j]);
            columns[2].push_back(map.at(i, j));
            const std::size_t cell = i * oy.size() + j;
            if (!map.valid[cell])
                invalid.push_back({{"omega_x", ox[i]}, {"omega_y", oy[j]}, {"error", map.errors[cell]}});
        }
    }
    csv::write_table(output(opt, cfg, "map.csv"), {"omega_x", "omega_y", "value"}, columns);

    double max_value = -1.0;
    for (std::size_t k = 0; k < map.values.size(); ++k)
        if (map.valid[k])
            max_value = std::max(max_value, map.values[k]);
    nlohmann::ordered_json meta;
    meta["version"] = METAQE_VERSION;
    meta["metric"] = std::string(to_string(map.metric));
    meta["omega_x"] = {{"start", cfg.omega_x.start}, {"stop", cfg.omega_x.stop}, {"count", cfg.omega_x.count}};
    meta["omega_y"] = {{"start", cfg.omega_y.start}, {"stop", cfg.omega_y.stop}, {"count", cfg.omega_y.count}};
    meta["tolerances"] = {{"abs", cfg.scenario.quadrature.abs_tol}, {"rel", cfg.scenario.quadrature.rel_tol}};
    meta["max_value"] = max_value;
    meta["invalid_cells"] = invalid;
    meta["config"] = nlohmann::ordered_json::parse(serialize_config(cfg));
    std::ofstream(output(opt, cfg, "map.json"), std::ios::binary) << meta.dump(2) << "\n";
    std::printf("%s map: %zu cells, %zu invalid, max %.10f\n", std::string(to_string(map.metric)).c_str(),
                map.values.size(), map.invalid_count(), max_value);
}

void cmd_substrate(const Options& opt, const RunConfig& cfg)
{
    const std::vector<double> deltas = cfg.delta.values();
    const std::vector<double> times = cfg.tau.values();
    const auto cases = substrate_comparison(cfg.scenario, cfg.eps_substrate, deltas, times);

    std::vector<std::string> header{"delta_gamma0"};
    std::vector<std::vector<double>> columns{deltas};
    std::vector<std::vector<double>> summary(7);
    for (const auto& c : cases) {
        const std::string tag = csv::format_number(c.eps_substrate);
        header.push_back("S_q0_m1_eps_" + tag);
        columns.push_back(c.minus.trace.columns.front());
        header.push_back("S_q0_p1_eps_" + tag);
        columns.push_back(c.plus.trace.columns.front());
        summary[0].push_back(c.eps_substrate);
        summary[1].push_back(c.spectrum.value);
        summary[2].push_back(c.max_population_gap);
        summary[3].push_back(c.farfield(0, 1).real());
        summary[4].push_back(c.farfield(0, 1).imag());
        summary[5].push_back(c.farfield(1, 0).real());
        summary[6].push_back(c.farfield(1, 0).imag());
        std::printf("eps_substrate %s: spectrum discrepancy %.3e, max |P-+ - P+-| %.3e, |G_xy^FF| %.3e\n",
                    tag.c_str(), c.spectrum.value, c.max_population_gap, std::abs(c.farfield(0, 1)));
    }
    csv::write_table(output(opt, cfg, "substrate_spectra.csv"), header, columns);
    csv::write_table(output(opt, cfg, "substrate_summary.csv"),
                     {"eps_substrate", "spectrum_discrepancy", "max_population_gap", "gff_xy_re", "gff_xy_im",
                      "gff_yx_re", "gff_yx_im"},
                     summary);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Emitter dynamics near an anisotropic conducting metasurface"};
    app.set_version_flag("--version", std::string(METAQE_VERSION));
    Options opt;
    app.add_option("--config", opt.config_path, "JSON scenario file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", opt.out_dir, "output directory (created if missing)");
    app.add_option("--workers", opt.workers, "OpenMP workers for maps (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tolerance", opt.tolerance, "relative quadrature tolerance, overrides the config")
        ->check(CLI::PositiveNumber);
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        void (*run)(const Options&, const RunConfig&);
    };
    const Command commands[] = {
        {"gf-probe", "print the scattered and far-field Green's tensors", cmd_gf_probe},
        {"dynamics", "population dynamics CSV", cmd_dynamics},
        {"intensity", "far-field intensity CSV for q0 = -1 and +1", cmd_intensity},
        {"spectrum", "emitted spectra CSV for q0 = -1 and +1", cmd_spectrum},
        {"map", "2-D map over the resonance frequencies", cmd_map},
        {"substrate", "substrate comparison of spectra and populations", cmd_substrate},
    };
    for (const auto& c : commands)
        app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        RunConfig cfg = load_config(opt.config_path);
        if (opt.tolerance > 0.0)
            cfg.scenario.quadrature.rel_tol = opt.tolerance;
        fs::create_directories(opt.out_dir);
        for (const auto& c : commands)
            if (app.got_subcommand(c.name))
                c.run(opt, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
