#include <doctest.h>

#include <random>

#include "metaqe/dynamics.hpp"
#include "metaqe/errors.hpp"
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

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("transfer coefficients match the closed forms for a tilted axis")
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const EulerAngles a = testing_inputs::random_angles(rng);
        const EigenSystem es = eigendecompose(testing_inputs::random_diagonal_coupling(rng), a);
        const Complex phase = std::exp(Complex(0.0, -2.0 * a.gamma)) / 2.0;
        const double ca = std::cos(a.alpha), sa = std::sin(a.alpha), cb = std::cos(a.beta), sb = std::sin(a.beta);
        const Complex cx = -phase * std::pow(Complex(ca * cb, -sa), 2);
        const Complex cy = phase * std::pow(Complex(ca, -cb * sa), 2);
        const Complex cz = -phase * sb * sb;
        CHECK(std::abs(es.c(0, Minus, Plus) - cx) < 1e-12);
        CHECK(std::abs(es.c(1, Minus, Plus) - cy) < 1e-12);
        CHECK(std::abs(es.c(2, Minus, Plus) - cz) < 1e-12);
        // Reverse transfer has conjugate coefficients.
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(es.c(j, Plus, Minus) - std::conj(es.c(j, Minus, Plus))) < 1e-12);
    }
}

TEST_CASE("coefficients resolve the identity")
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 20; ++i) {
        const EigenSystem es =
            eigendecompose(testing_inputs::random_passive_coupling(rng), testing_inputs::random_angles(rng));
        CHECK((evolution_matrix(es, 0.0) - CMat3::Identity()).norm() < 1e-12);
    }
}

TEST_CASE("eigenvalues are labeled by their dominant axis and invariant under rotation")
{
    std::mt19937_64 rng(47);
    for (int i = 0; i < 20; ++i) {
        CMat3 g = testing_inputs::random_diagonal_coupling(rng);
        g(0, 1) = g(1, 0) = Complex(0.01, -0.002);
        const EigenSystem a = eigendecompose(g, {});
        const EigenSystem b = eigendecompose(g, testing_inputs::random_angles(rng));
        CHECK_FALSE(a.diagonal);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(a.g[j] - b.g[j]) < 1e-12);
            CHECK(std::abs(a.g[j] - g(j, j)) < 0.05);
        }
    }
}

TEST_CASE("populations do not depend on the last Euler angle")
{
    std::mt19937_64 rng(53);
    const auto times = linspace(0.0, 8.0, 81);
    for (int i = 0; i < 20; ++i) {
        const CMat3 g = testing_inputs::random_passive_coupling(rng);
        EulerAngles a = testing_inputs::random_angles(rng);
        const EigenSystem e1 = eigendecompose(g, a);
        a.gamma += 1.234;
        const EigenSystem e2 = eigendecompose(g, a);
        for (Sublevel q0 : kAllSublevels)
            for (Sublevel qf : kAllSublevels)
                CHECK(max_abs_diff(population(e1, q0, qf, times).values, population(e2, q0, qf, times).values) <
                      1e-12);
    }
}

TEST_CASE("eigen-decomposition evolution agrees with direct propagation")
{
    std::mt19937_64 rng(59);
    const auto times = linspace(0.0, 5.0, 101);
    for (int i = 0; i < 50; ++i) {
        const CMat3 g = testing_inputs::random_passive_coupling(rng);
        const EulerAngles a = testing_inputs::random_angles(rng);
        const EigenSystem es = eigendecompose(g, a);
        const CMat3 spherical = rotate_self_energy(g, a).spherical;
        for (Sublevel q0 : kAllSublevels) {
            const auto amplitudes = propagate_amplitudes(spherical, q0, times);
            double worst = 0.0;
            for (std::size_t n = 0; n < times.size(); ++n)
                worst = std::max(worst, (evolution_matrix(es, times[n]).col(index_of(q0)) - amplitudes[n]).norm());
            CHECK(worst < 1e-8);
        }
    }
}

TEST_CASE("passive dynamics never gains population")
{
    std::mt19937_64 rng(61);
    const auto times = linspace(0.0, 6.0, 121);
    for (int i = 0; i < 10; ++i) {
        const EigenSystem es =
            eigendecompose(testing_inputs::random_passive_coupling(rng), testing_inputs::random_angles(rng));
        double previous = 1.0 + 1e-12;
        for (double t : times) {
            const double total = evolution_matrix(es, t).col(index_of(Minus)).squaredNorm();
            CHECK(total <= previous + 1e-12);
            previous = total;
        }
    }
}

TEST_CASE("untilted axis reduces to the two-level formula")
{
    std::mt19937_64 rng(67);
    const auto times = linspace(0.0, 10.0, 201);
    for (int i = 0; i < 20; ++i) {
        const CMat3 g = testing_inputs::random_diagonal_coupling(rng);
        const auto c = coupling_constants(rotate_self_energy(g, {}));
        const EigenSystem es = eigendecompose(g, {});
        CHECK(max_abs_diff(population(es, Minus, Minus, times).values,
                           two_level_population(c.mm, c.mp, times).values) < 1e-12);
    }
    // Vacuum: pure exponential decay.
    const EigenSystem vac = eigendecompose(Complex(0.0, -0.5) * CMat3::Identity(), {0.3, 0.7, 0.1});
    const auto p = population(vac, Plus, Plus, times);
    for (std::size_t n = 0; n < times.size(); ++n)
        CHECK(std::abs(p.values[n] - std::exp(-times[n])) < 1e-14);
}

TEST_CASE("interference form reproduces the populations")
{
    std::mt19937_64 rng(71);
    const auto times = linspace(0.0, 10.0, 51);
    for (int i = 0; i < 20; ++i) {
        const EigenSystem es =
            eigendecompose(testing_inputs::random_diagonal_coupling(rng), testing_inputs::random_angles(rng));
        for (auto [q0, qf] : {std::pair{Plus, Minus}, std::pair{Minus, Plus}, std::pair{Zero, Minus}}) {
            const auto terms = population_terms(es, q0, qf);
            const auto p = population(es, q0, qf, times);
            for (std::size_t n = 0; n < times.size(); ++n)
                CHECK(std::abs(terms.evaluate(times[n]) - p.values[n]) < 1e-12);
        }
        // Reverse process: same weights and magnitudes, opposite phases.
        const auto fwd = population_terms(es, Plus, Minus);
        const auto rev = population_terms(es, Minus, Plus);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(fwd.weight[k] - rev.weight[k]) < 1e-12);
            CHECK(std::abs(std::remainder(fwd.pair_phase[k] + rev.pair_phase[k], 2.0 * kPi)) < 1e-9);
        }
    }
}

TEST_CASE("transfer asymmetry closed form")
{
    std::mt19937_64 rng(73);
    const auto times = linspace(0.0, 10.0, 201);
    for (int i = 0; i < 50; ++i) {
        const EulerAngles a = testing_inputs::random_angles(rng);
        const EigenSystem es = eigendecompose(testing_inputs::random_diagonal_coupling(rng), a);
        CHECK(max_abs_diff(asymmetry(es, a, times).column("asymmetry"),
                           population_difference(es, times).column("population_difference")) < 1e-10);
    }
    // Vanishing cases: an angle at a multiple of pi/2, or two equal couplings.
    const CMat3 g = testing_inputs::random_diagonal_coupling(rng);
    for (const EulerAngles& a : {EulerAngles{kPi / 2.0, 0.7, 0.2}, EulerAngles{0.3, kPi, 0.0},
                                 EulerAngles{0.0, 0.9, 0.0}, EulerAngles{1.1, kPi / 2.0, 0.4}}) {
        const EigenSystem es = eigendecompose(g, a);
        CHECK(max_abs_diff(population_difference(es, times).column("population_difference"),
                           std::vector<double>(times.size(), 0.0)) < 1e-12);
    }
    CMat3 pair = g;
    pair(1, 1) = pair(0, 0);
    const EigenSystem es = eigendecompose(pair, {0.4, 0.9, 0.0});
    CHECK(max_abs_diff(population_difference(es, times).column("population_difference"),
                       std::vector<double>(times.size(), 0.0)) < 1e-12);
    CHECK(asymmetry_prefactor({kPi / 4.0, kPi / 4.0, 0.0}) == doctest::Approx(0.5 / std::sqrt(2.0)));
}

TEST_CASE("strong-coupling parameter")
{
    CHECK(strong_coupling_parameter({-1.0, -0.5}, {2.0, 0.3}) == doctest::Approx(4.0));
    CHECK_THROWS_AS(strong_coupling_parameter({0.0, 0.1}, {1.0, 0.0}), InvalidParameter);
}

TEST_CASE("failure modes")
{
    CMat3 defective = CMat3::Zero();
    defective(0, 0) = defective(1, 1) = Complex(0.2, -0.5);
    defective(0, 1) = 1.0;
    defective(2, 2) = Complex(0.0, -0.3);
    CHECK_THROWS_AS(eigendecompose(defective, {}), DegenerateDecomposition);
    const EigenSystem es = eigendecompose(Complex(0.0, -0.5) * CMat3::Identity(), {});
    CHECK_THROWS_AS(evolution_matrix(es, -1.0), InvalidParameter);
    CHECK_THROWS_AS(propagate_amplitudes(CMat3::Identity(), Minus, {1.0, 0.5}), InvalidParameter);
}
