#include <doctest.h>

#include <cmath>

#include "metaqe/errors.hpp"
#include "metaqe/quadrature.hpp"

using namespace metaqe;
using namespace metaqe::quadrature;

TEST_CASE("periodic trapezoid integrates exp(cos phi) to 2 pi I0(1)")
{
    auto f = [](double phi) { return CMat3::Constant(Complex(std::exp(std::cos(phi)), std::sin(3.0 * phi))); };
    const auto r = periodic_trapezoid(f, {0.0, 1e-13, 8, 1 << 12});
    CHECK(std::abs(r.value(0, 0) - 2.0 * kPi * std::cyl_bessel_i(0.0, 1.0)) < 1e-12);
    CHECK(r.error_estimate < 1e-10);
}

TEST_CASE("Gauss-Kronrod along a complex polyline")
{
    auto f = [](Complex z) { return CMat3::Constant(z * z); };
    const auto r = contour_gauss_kronrod(f, {{0.0, {1.0, 1.0}, 1}, {{1.0, 1.0}, {2.0, 0.0}, 1}}, {});
    CHECK(std::abs(r.value(1, 2) - 8.0 / 3.0) < 1e-13);

    // Integrand with a nearby pole needs adaptive refinement.
    auto g = [](Complex z) { return CMat3::Constant(1.0 / (z - Complex(0.5, 1e-3))); };
    const auto s = contour_gauss_kronrod(g, {{0.0, 1.0, 1}}, {1e-12, 1e-12, 4000});
    const Complex exact = std::log(Complex(0.5, -1e-3)) - std::log(Complex(-0.5, -1e-3));
    CHECK(std::abs(s.value(0, 0) - exact) < 1e-9);
    CHECK(s.evaluations > 15);
}

TEST_CASE("exhausting the panel budget raises IntegrationFailure")
{
    auto g = [](Complex z) { return CMat3::Constant(1.0 / (z - Complex(0.5, 1e-9))); };
    CHECK_THROWS_AS(contour_gauss_kronrod(g, {{0.0, 1.0, 1}}, {1e-14, 1e-14, 4}), IntegrationFailure);
}
