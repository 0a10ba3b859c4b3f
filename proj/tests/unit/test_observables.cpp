#include <doctest.h>

#include <random>

#include "metaqe/errors.hpp"
#include "metaqe/observables.hpp"
#include "metaqe/scenario.hpp"
#include "oracles.hpp"
#include "random_inputs.hpp"

using namespace metaqe;
using enum Sublevel;

namespace {

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = a + (b - a) * i / (n - 1);
    return v;
}

Scenario fixture(double omega_x, double omega_y)
{
    Scenario s;
    s.x = {1.0, omega_x, 0.1};
    s.y = {1.0, omega_y, 0.1};
    return s;
}

FieldVectors random_fields(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    FieldVectors f;
    for (auto& v : f)
        for (int i = 0; i < 3; ++i)
            v(i) = Complex(n(rng), n(rng));
    return f;
}

std::array<Complex, 3> random_poles(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(-1.5, -0.05);
    return {Complex(re(rng), im(rng)), Complex(re(rng), im(rng)), Complex(re(rng), im(rng))};
}

}  // namespace

TEST_CASE("Lorentzian decomposition reproduces the spectrum")
{
    std::mt19937_64 rng(101);
    const auto deltas = linspace(-10.0, 10.0, 2001);
    for (int i = 0; i < 50; ++i) {
        const FieldVectors f = random_fields(rng);
        const auto g = random_poles(rng);
        const SpectralDecomposition d = spectral_decomposition(f, g);
        double peak = 0.0, worst = 0.0;
        for (double delta : deltas) {
            const double direct = spectrum_direct(f, g, delta);
            peak = std::max(peak, direct);
            worst = std::max(worst, std::abs(d.evaluate(g, delta) - direct));
        }
        CHECK(worst < 1e-10 * peak);
        // Dispersive parts cancel in total, so the line sum is finite.
        CHECK(std::abs(d.xi[0] + d.xi[1] + d.xi[2]) < 1e-12 * (std::abs(d.xi[0]) + 1.0));
    }
}

TEST_CASE("spectral area equals the residue sum")
{
    std::mt19937_64 rng(103);
    for (int i = 0; i < 10; ++i) {
        const FieldVectors f = random_fields(rng);
        const auto g = random_poles(rng);
        const SpectralDecomposition d = spectral_decomposition(f, g);
        // delta = tan(theta) maps the line onto (-pi/2, pi/2); the integrand is smooth there.
        auto integrand = [&](double theta) {
            const double c = std::cos(theta);
            return CMat3::Constant(spectrum_direct(f, g, std::tan(theta)) / (c * c));
        };
        const double area = oracle::composite(integrand, -kPi / 2.0, kPi / 2.0, 400)(0, 0).real();
        CHECK(area == doctest::Approx(-kPi * (d.eta[0] + d.eta[1] + d.eta[2])).epsilon(1e-9));
    }
}

TEST_CASE("vacuum observables")
{
    const EigenSystem es = eigendecompose(Complex(0.0, -0.5) * CMat3::Identity(), {0.3, 0.4, 0.0});
    const ObservationSetup obs =
        make_observation({}, 1.0, {}, DetectorGeometry{}, {0.3, 0.4, 0.0});
    const auto taus = linspace(0.0, 10.0, 101);
    const auto intensity = farfield_intensity(es, obs, Minus, taus).column("intensity");
    for (std::size_t n = 0; n < taus.size(); ++n)
        CHECK(intensity[n] == doctest::Approx(std::exp(-taus[n])).epsilon(1e-12));

    const auto deltas = linspace(-5.0, 5.0, 101);
    const auto spectrum = emitted_spectrum(es, obs, Plus, deltas).trace.column("spectrum");
    for (std::size_t n = 0; n < deltas.size(); ++n)
        CHECK(spectrum[n] == doctest::Approx(1.0 / (1.0 + 4.0 * deltas[n] * deltas[n])).epsilon(1e-12));
}

TEST_CASE("isotropic sheet gives identical observables for opposite helicities")
{
    const Scenario s = fixture(1.5, 1.5);
    const ScenarioResult r = evaluate_scenario(s);
    const ObservationSetup obs = observe_scenario(s);
    const auto taus = linspace(0.0, 5.0, 51);
    const auto deltas = linspace(-5.0, 5.0, 201);
    const auto im = farfield_intensity(r.eigen, obs, Minus, taus).column("intensity");
    const auto ip = farfield_intensity(r.eigen, obs, Plus, taus).column("intensity");
    const auto sm = emitted_spectrum(r.eigen, obs, Minus, deltas).trace.column("spectrum");
    const auto sp = emitted_spectrum(r.eigen, obs, Plus, deltas).trace.column("spectrum");
    for (std::size_t n = 0; n < taus.size(); ++n)
        CHECK(std::abs(im[n] - ip[n]) < 1e-10 * im[0]);
    for (std::size_t n = 0; n < deltas.size(); ++n)
        CHECK(std::abs(sm[n] - sp[n]) < 1e-10);
}

TEST_CASE("anisotropic tilted sheet separates the helicities")
{
    const Scenario s = fixture(1.5, 1.1);
    const ScenarioResult r = evaluate_scenario(s);
    const ObservationSetup obs = observe_scenario(s);
    const auto taus = linspace(0.0, 5.0, 51);
    const auto im = farfield_intensity(r.eigen, obs, Minus, taus).column("intensity");
    const auto ip = farfield_intensity(r.eigen, obs, Plus, taus).column("intensity");
    double gap = 0.0;
    for (std::size_t n = 0; n < taus.size(); ++n)
        gap = std::max(gap, std::abs(im[n] - ip[n]));
    CHECK(gap > 1e-2);

    // The last Euler angle only rephases the transition vectors.
    Scenario rotated = s;
    rotated.angles.gamma = 0.8;
    const ScenarioResult r2 = evaluate_scenario(rotated);
    const auto im2 = farfield_intensity(r2.eigen, observe_scenario(rotated), Minus, taus).column("intensity");
    for (std::size_t n = 0; n < taus.size(); ++n)
        CHECK(std::abs(im[n] - im2[n]) < 1e-12);
}

TEST_CASE("polarization components add up to the total spectrum")
{
    std::mt19937_64 rng(107);
    const Scenario s = fixture(0.6, 1.0);
    const ScenarioResult r = evaluate_scenario(s);
    const ObservationSetup obs = observe_scenario(s);
    const auto deltas = linspace(-8.0, 8.0, 401);
    for (Sublevel q0 : {Minus, Plus}) {
        const auto total = emitted_spectrum(r.eigen, obs, q0, deltas).trace.column("spectrum");
        for (const CMat3& triad : {detector_triad(s.angles), transition_transform(testing_inputs::random_angles(rng))}) {
            std::vector<double> sum(deltas.size(), 0.0);
            for (Sublevel c : kAllSublevels) {
                const auto part =
                    polarization_resolved_spectrum(r.eigen, obs, q0, triad, c, deltas).trace.column("spectrum");
                for (std::size_t n = 0; n < deltas.size(); ++n)
                    sum[n] += part[n];
            }
            for (std::size_t n = 0; n < deltas.size(); ++n)
                CHECK(std::abs(sum[n] - total[n]) < 1e-12 * std::max(1.0, total[n]));
        }
    }
}

TEST_CASE("observable failure modes")
{
    const Scenario s = fixture(1.5, 1.1);
    const ScenarioResult r = evaluate_scenario(s);
    const ObservationSetup obs = observe_scenario(s);
    CMat3 skew = CMat3::Identity();
    skew(0, 1) = 0.3;
    CHECK_THROWS_AS(polarization_resolved_spectrum(r.eigen, obs, Minus, skew, Plus, {0.0}), InvalidBasis);

    const EigenSystem lossless = eigendecompose(CMat3::Identity() * Complex(0.5, 0.0), {});
    CHECK_THROWS_AS(emitted_spectrum(lossless, obs, Minus, {0.0}), NonDecayingState);
    CHECK_THROWS_AS(spectral_decomposition(FieldVectors{}, {Complex(1.0), Complex(1.0), Complex(2.0)}),
                    DegeneratePole);
    CHECK_THROWS_AS(farfield_intensity(r.eigen, obs, Minus, {-1.0}), InvalidParameter);

    DetectorGeometry near;
    near.distance = 5.0;
    CHECK_THROWS_AS(near.validate(), InvalidParameter);
    DetectorGeometry fixed;
    fixed.tied_to_tilt = false;
    fixed.direction = Vec3(1.0, 1.0, 0.0);
    CHECK_THROWS_AS(fixed.validate(), InvalidParameter);
}

TEST_CASE("detector follows the tilted axis")
{
    DetectorGeometry d;
    const Vec3 p = d.position({kPi / 4.0, kPi / 4.0, 0.3});
    CHECK((p - 100.0 * Vec3(0.5, 0.5, std::sqrt(0.5))).norm() < 1e-12);
    d.tied_to_tilt = false;
    d.direction = Vec3::UnitX();
    CHECK((d.position({1.0, 1.0, 0.0}) - 100.0 * Vec3::UnitX()).norm() < 1e-15);
}
