#include <doctest.h>

#include <filesystem>
#include <string>

#include "metaqe/config.hpp"
#include "metaqe/errors.hpp"

using namespace metaqe;

namespace {

std::string error_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("angle literals")
{
    CHECK(parse_angle("pi/4") == doctest::Approx(kPi / 4.0));
    CHECK(parse_angle("3pi/8") == doctest::Approx(3.0 * kPi / 8.0));
    CHECK(parse_angle("0.25*pi") == doctest::Approx(kPi / 4.0));
    CHECK(parse_angle("-pi/2") == doctest::Approx(-kPi / 2.0));
    CHECK(parse_angle("pi") == doctest::Approx(kPi));
    CHECK(parse_angle("0.7") == doctest::Approx(0.7));
    CHECK_THROWS_AS(parse_angle("pie"), ConfigError);
    CHECK_THROWS_AS(parse_angle("pi/0"), ConfigError);
    CHECK_THROWS_AS(parse_angle("x*pi"), ConfigError);
}

TEST_CASE("defaults and overrides")
{
    const RunConfig d = parse_config("{}");
    CHECK(d.scenario.model == ConductivityModel::Lorentz);
    CHECK(d.scenario.geometry.height == 0.05);
    CHECK(d.scenario.x.resonance == 1.5);
    CHECK(d.scenario.y.resonance == 1.1);
    CHECK(d.scenario.angles.alpha == doctest::Approx(kPi / 4.0));
    CHECK(d.initial == Sublevel::Minus);

    const RunConfig c = parse_config(R"({
        "name": "probe",
        "geometry": {"height": 0.1, "eps_substrate": 2.2},
        "conductivity": {"model": "lorentz", "x": {"resonance": 0.6}, "y": {"resonance": 1.0, "damping": 0.2}},
        "emitter": {"alpha": "pi/3", "beta": 0.5, "initial": 1},
        "detector": {"distance": 50, "tied_to_tilt": false, "direction": [0, 3, 4]},
        "grids": {"tau": {"start": 0, "stop": 4, "count": 5}},
        "map": {"metric": "spectrum_discrepancy"}
    })");
    CHECK(c.name == "probe");
    CHECK(c.scenario.geometry.eps_lower == 2.2);
    CHECK(c.scenario.x.resonance == 0.6);
    CHECK(c.scenario.x.damping == 0.1);
    CHECK(c.scenario.y.damping == 0.2);
    CHECK(c.scenario.angles.alpha == doctest::Approx(kPi / 3.0));
    CHECK(c.initial == Sublevel::Plus);
    CHECK((c.scenario.detector.direction - Vec3(0, 0.6, 0.8)).norm() < 1e-15);
    CHECK(c.tau.values() == std::vector<double>{0, 1, 2, 3, 4});
    CHECK(c.metric == MapMetric::SpectrumDiscrepancy);
}

TEST_CASE("serialization round trip")
{
    RunConfig c = parse_config(R"({"emitter": {"alpha": "3pi/8", "gamma": 0.1}, "conductivity": {"model": "extreme_limit"},
                                   "grids": {"eps_substrate": [1, 1.5, 2.2]}})");
    const std::string once = serialize_config(c);
    const RunConfig back = parse_config(once);
    CHECK(serialize_config(back) == once);
    CHECK(back.scenario.angles.alpha == c.scenario.angles.alpha);
    CHECK(back.scenario.model == ConductivityModel::ExtremeLimit);
    CHECK(back.eps_substrate == c.eps_substrate);
}

TEST_CASE("errors name the offending field")
{
    CHECK(error_of(R"({"conductivity": {"x": {"damping": -1}}})").find("conductivity.x.damping") != std::string::npos);
    CHECK(error_of(R"({"geometry": {"heigth": 0.1}})").find("geometry.heigth: unknown key") != std::string::npos);
    CHECK(error_of(R"({"emitter": {"initial": 2}})").find("emitter.initial") != std::string::npos);
    CHECK(error_of(R"({"emitter": {"beta": "half"}})").find("emitter.beta") != std::string::npos);
    CHECK(error_of(R"({"detector": {"distance": 2}})").find("detector.distance") != std::string::npos);
    CHECK(error_of(R"({"detector": {"direction": [0, 0, -1]}})").find("detector.direction") != std::string::npos);
    CHECK(error_of(R"({"grids": {"tau": {"count": 1}}})").find("grids.tau.count") != std::string::npos);
    CHECK(error_of(R"({"grids": {"omega_x": {"start": 0.1, "stop": 4}}})").find("grids.omega_x") != std::string::npos);
    CHECK(error_of(R"({"map": {"metric": "purcell"}})").find("map.metric") != std::string::npos);
    CHECK(error_of(R"({"conductivity": {"model": "drude"}})").find("conductivity.model") != std::string::npos);
    CHECK(error_of(R"({"tolerances": {"max_panels": 2}})").find("tolerances.max_panels") != std::string::npos);
    CHECK(error_of("{").find("invalid JSON") != std::string::npos);
    CHECK(error_of("[1, 2]").find("expected an object") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/run.json"), ConfigError);
}

TEST_CASE("shipped fixtures parse")
{
    for (const auto& entry : std::filesystem::directory_iterator(METAQE_CONFIG_DIR)) {
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_config(entry.path()));
    }
}
