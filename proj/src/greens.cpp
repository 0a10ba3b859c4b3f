#include "metaqe/greens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metaqe/errors.hpp"
#include "metaqe/quadrature.hpp"

namespace metaqe {

void LayeredGeometry::validate() const
{
    if (!(height > 0.0) || !std::isfinite(height))
        throw InvalidParameter("emitter height must be positive, got " + std::to_string(height));
    if (!(eps_upper >= 1.0) || !std::isfinite(eps_upper))
        throw InvalidParameter("upper permittivity must be >= 1, got " + std::to_string(eps_upper));
    if (!(eps_lower >= 1.0) || !std::isfinite(eps_lower))
        throw InvalidParameter("substrate permittivity must be >= 1, got " + std::to_string(eps_lower));
}

Complex longitudinal_wavenumber(Complex k, Complex kappa)
{
    Complex kz = std::sqrt(k * k - kappa * kappa);
    if (kz.imag() < 0.0 || (kz.imag() == 0.0 && kz.real() < 0.0))
        kz = -kz;
    return kz;
}

ModePair mode_vectors_polar(Complex kappa, double phi, Complex k, Direction direction)
{
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double sign = static_cast<double>(direction);
    ModePair m;
    m.kz = longitudinal_wavenumber(k, kappa);
    m.t = CVec3(-s, c, 0.0);
    m.p = CVec3(-sign * m.kz * c, -sign * m.kz * s, kappa) / k;
    return m;
}

ModePair mode_vectors(double kx, double ky, Complex k, Direction direction)
{
    // At kappa = 0 the azimuth is arbitrary; phi = 0 is the adopted limit.
    return mode_vectors_polar(std::hypot(kx, ky), std::atan2(ky, kx), k, direction);
}

namespace {

Complex longitudinal_from_square(double k, Complex kappa_sq)
{
    Complex kz = std::sqrt(k * k - kappa_sq);
    if (kz.imag() < 0.0 || (kz.imag() == 0.0 && kz.real() < 0.0))
        kz = -kz;
    return kz;
}

// In-plane direction enters only through the cosines (c, s) with c^2 + s^2 = 1,
// which may be complex on a deformed integration surface.
FresnelCoefficients fresnel_core(Complex kappa_sq, Complex c, Complex s, double omega,
                                 const SurfaceConductivity& sigma, const LayeredGeometry& geom)
{
    const double k1 = omega * std::sqrt(geom.eps_upper);
    const double k2 = omega * std::sqrt(geom.eps_lower);
    const Complex k1z = longitudinal_from_square(k1, kappa_sq);
    const Complex k2z = longitudinal_from_square(k2, kappa_sq);
    if (k2z == Complex{} || k1z == Complex{})
        throw IllConditionedSystem("Fresnel system singular at grazing incidence", INFINITY);

    // Unknowns (r_t, r_p); transmissions are eliminated through tangential-E
    // continuity. Each field quantity is q0 + q_t r_t + q_p r_p, and the
    // incident mode enters only through q0.
    const Complex g = k1z / k1;
    const Complex beta = (k2 * k2 / k2z) * g;

    struct Linear {
        Complex q0_t, q0_p;  // constant part for t- and p-incidence
        Complex qt, qp;
    };
    const Linear ex{-s, c * g, -s, -c * g};
    const Linear ey{c, s * g, c, -s * g};
    const Linear dht{0.0, -k1 + beta, 0.0, -(k1 + beta)};  // omega * Delta H along t
    const Linear dhk{k1z - k2z, 0.0, -(k1z + k2z), 0.0};   // omega * Delta H along kappa-hat
    auto combine = [](const Linear& a, Complex wa, const Linear& b, Complex wb) {
        return Linear{wa * a.q0_t + wb * b.q0_t, wa * a.q0_p + wb * b.q0_p, wa * a.qt + wb * b.qt,
                      wa * a.qp + wb * b.qp};
    };
    // omega * (e_z x Delta H) in Cartesian components.
    const Linear jx = combine(dhk, -s, dht, -c);
    const Linear jy = combine(dhk, c, dht, -s);

    auto row = [&](const Linear& j, const Linear& e, Complex sig, bool ideal) {
        if (ideal)
            return e;
        const Complex w = omega * sig;
        const double scale = 1.0 / (1.0 + std::abs(w));
        return combine(j, scale, e, -w * scale);
    };
    const Linear rx = row(jx, ex, sigma.xx, sigma.ideal_x);
    const Linear ry = row(jy, ey, sigma.yy, sigma.ideal_y);

    Eigen::Matrix2cd a;
    a << rx.qt, rx.qp, ry.qt, ry.qp;
    const Complex det = a.determinant();
    const double norm_a = std::max(std::abs(a(0, 0)) + std::abs(a(1, 0)), std::abs(a(0, 1)) + std::abs(a(1, 1)));
    const double norm_inv =
        std::max(std::abs(a(1, 1)) + std::abs(a(1, 0)), std::abs(a(0, 1)) + std::abs(a(0, 0))) / std::abs(det);
    const double condition = norm_a * norm_inv;
    if (!(condition < 1e13))
        throw IllConditionedSystem("Fresnel boundary system is singular (condition " + std::to_string(condition) + ")",
                                   condition);

    Eigen::Matrix2cd rhs;
    rhs << -rx.q0_t, -rx.q0_p, -ry.q0_t, -ry.q0_p;
    const Eigen::Matrix2cd sol = a.inverse() * rhs;

    FresnelCoefficients f;
    f.condition = condition;
    f.r11_tt = sol(0, 0);
    f.r11_pt = sol(1, 0);
    f.r11_tp = sol(0, 1);
    f.r11_pp = sol(1, 1);
    const Complex to_lower = k2 / k2z * g;
    f.r21_tt = 1.0 + f.r11_tt;
    f.r21_pt = -f.r11_pt * to_lower;
    f.r21_tp = f.r11_tp;
    f.r21_pp = (1.0 - f.r11_pp) * to_lower;
    return f;
}

}  // namespace

FresnelCoefficients fresnel_solve_polar(Complex kappa, double phi, double omega,
                                        const SurfaceConductivity& sigma, const LayeredGeometry& geom)
{
    return fresnel_core(kappa * kappa, std::cos(phi), std::sin(phi), omega, sigma, geom);
}

FresnelCoefficients fresnel_solve(double kx, double ky, double omega, const SurfaceConductivity& sigma,
                                  const LayeredGeometry& geom)
{
    if (!sigma.is_passive())
        throw InvalidParameter("surface conductivity must be passive (Re sigma >= 0)");
    geom.validate();
    return fresnel_solve_polar(std::hypot(kx, ky), std::atan2(ky, kx), omega, sigma, geom);
}

DyadicGreens greens_free(const Vec3& r, const Vec3& r_source, double omega, double eps)
{
    const Vec3 sep = (r - r_source) * kTwoPi;
    const double dist = sep.norm();
    if (dist == 0.0)
        throw CoincidentPoints("free-space Green's tensor is singular at coincident points");
    const double k = omega * std::sqrt(eps);
    const double kr = k * dist;
    const Vec3 u = sep / dist;
    const Complex pref = std::exp(kI * kr) / (4.0 * kPi * dist);
    const Complex a = 1.0 + kI / kr - 1.0 / (kr * kr);
    const Complex b = 3.0 / (kr * kr) - 3.0 * kI / kr - 1.0;

    DyadicGreens g;
    g.matrix = pref * (a * CMat3::Identity() + b * (u * u.transpose()).cast<Complex>());
    g.r_field = r;
    g.r_source = r_source;
    g.omega = omega;
    g.part = GreensPart::Free;
    return g;
}

DyadicGreens greens_free_imag_equal(double omega, double eps)
{
    if (!(omega > 0.0))
        throw InvalidParameter("frequency must be positive");
    DyadicGreens g;
    g.matrix = CMat3::Identity() * Complex(0.0, omega * std::sqrt(eps) / (6.0 * kPi));
    g.omega = omega;
    g.part = GreensPart::Free;
    return g;
}

namespace {

// Reflection dyad R_tt t t + R_tp t p- + R_pt p+ t + R_pp p+ p- at one plane wave.
CMat3 reflection_dyad(const FresnelCoefficients& f, const CVec3& t, const CVec3& p_up, const CVec3& p_down)
{
    return f.r11_tt * (t * t.transpose()) + f.r11_tp * (t * p_down.transpose()) +
           f.r11_pt * (p_up * t.transpose()) + f.r11_pp * (p_up * p_down.transpose());
}

}  // namespace

DyadicGreens greens_scattered(const Vec3& r, const Vec3& r_source, const LayeredGeometry& geom, double omega,
                              const SurfaceConductivity& sigma, const QuadratureOptions& options)
{
    geom.validate();
    if (!(omega > 0.0))
        throw InvalidParameter("frequency must be positive");
    if (!sigma.is_passive())
        throw InvalidParameter("surface conductivity must be passive (Re sigma >= 0)");
    if (!(r.z() > 0.0) || !(r_source.z() > 0.0))
        throw UnsupportedRegion("scattered tensor G^11 needs both points above the sheet");

    DyadicGreens out;
    out.r_field = r;
    out.r_source = r_source;
    out.omega = omega;
    out.part = GreensPart::Scattered11;
    if (sigma.is_vanishing() && geom.eps_lower == geom.eps_upper)
        return out;

    const double k1 = omega * std::sqrt(geom.eps_upper);
    const double k2 = omega * std::sqrt(geom.eps_lower);
    const double kmin = std::min(k1, k2);
    const double kmax = std::max(k1, k2);
    const Vec3 sep = (r - r_source) * kTwoPi;
    const double z_sum = (r.z() + r_source.z()) * kTwoPi;

    // Each in-plane component runs along u - i h tanh(u / w). Then
    // Im(kz^2) = 2h sum_j u_j tanh(u_j / w) >= 0, so the surface stays on the
    // proper sheet, vanishes only at kappa = 0, and keeps a finite distance from
    // the wire-mode lines kappa_j = +-k and from guided-mode circles. The lateral
    // phase grows like exp(h |Delta rho_j|), which bounds h.
    double depth = options.contour_depth * kmin;
    const double lateral = std::max(std::abs(sep.x()), std::abs(sep.y()));
    if (lateral > 0.0)
        depth = std::min(depth, 1.0 / lateral);
    const double width = 0.5 * kmin;
    const double decay = -std::log(options.envelope_cutoff);
    const double end = std::max(std::sqrt(k1 * k1 + (decay / z_sum) * (decay / z_sum)), 2.0 * kmax);
    auto path = [&](double u) { return Complex(u, -depth * std::tanh(u / width)); };
    auto slope = [&](double u) {
        const double ch = std::cosh(u / width);
        return Complex(1.0, -depth / (width * ch * ch));
    };
    const std::vector<quadrature::ContourSegment> line = {{-end, -2.0 * kmax, 4},
                                                          {-2.0 * kmax, 0.0, 4},
                                                          {0.0, 2.0 * kmax, 4},
                                                          {2.0 * kmax, end, 4}};
    const double span = 2.0 * end;

    quadrature::AdaptiveOptions outer;
    outer.abs_tol = options.abs_tol;
    outer.rel_tol = options.rel_tol;
    outer.max_panels = options.max_panels;
    quadrature::AdaptiveOptions inner = outer;
    inner.abs_tol = 0.1 * options.abs_tol / span;
    inner.rel_tol = 0.1 * options.rel_tol;

    const Complex pref = kI / (8.0 * kPi * kPi);
    auto integrand = [&](Complex kx, Complex ky) -> CMat3 {
        const Complex kappa_sq = kx * kx + ky * ky;
        const Complex k1z = longitudinal_from_square(k1, kappa_sq);
        const Complex envelope = std::exp(kI * (k1z * z_sum + kx * sep.x() + ky * sep.y()));
        if (std::abs(envelope) < options.envelope_cutoff * 1e-3)
            return CMat3::Zero();
        const Complex kappa = std::sqrt(kappa_sq);
        Complex c = 1.0;
        Complex s = 0.0;
        if (kappa != Complex{}) {
            c = kx / kappa;
            s = ky / kappa;
        }
        const FresnelCoefficients f = fresnel_core(kappa_sq, c, s, omega, sigma, geom);
        const CVec3 t(-s, c, 0.0);
        const CVec3 p_up = CVec3(-k1z * c, -k1z * s, kappa) / k1;
        const CVec3 p_down = CVec3(k1z * c, k1z * s, kappa) / k1;
        return (envelope / k1z) * reflection_dyad(f, t, p_up, p_down);
    };

    auto row = [&](Complex uy) -> CMat3 {
        const double y = uy.real();
        const Complex ky = path(y);
        auto along_x = [&](Complex ux) -> CMat3 {
            const double x = ux.real();
            return integrand(path(x), ky) * slope(x);
        };
        return quadrature::contour_gauss_kronrod(along_x, line, inner).value * slope(y);
    };

    const auto result = quadrature::contour_gauss_kronrod(row, line, outer);
    out.matrix = pref * result.value;
    out.error_estimate = std::abs(pref) * result.error_estimate;
    return out;
}

DyadicGreens greens_scattered_equal_point(const LayeredGeometry& geom, double omega,
                                          const SurfaceConductivity& sigma, const QuadratureOptions& options)
{
    const Vec3 ra = geom.emitter_position();
    return greens_scattered(ra, ra, geom, omega, sigma, options);
}

DyadicGreens greens_total_equal_point(const LayeredGeometry& geom, double omega,
                                      const SurfaceConductivity& sigma, const QuadratureOptions& options)
{
    DyadicGreens g = greens_scattered_equal_point(geom, omega, sigma, options);
    g.matrix += greens_free_imag_equal(omega, geom.eps_upper).matrix;
    return g;
}

DyadicGreens greens_farfield(const Vec3& r_detector, const LayeredGeometry& geom, double omega,
                             const SurfaceConductivity& sigma, const FarFieldOptions& options)
{
    geom.validate();
    if (r_detector.z() < 0.0)
        throw UnsupportedRegion("far-field detector must lie above the sheet");
    if (r_detector.norm() < kMinFarFieldDistance)
        throw InvalidParameter("far-field detector must be at least 10 wavelengths away");
    if (!sigma.is_passive())
        throw InvalidParameter("surface conductivity must be passive (Re sigma >= 0)");

    const double k1 = omega * std::sqrt(geom.eps_upper);
    const Vec3 ra = geom.emitter_position() * kTwoPi;
    const Vec3 rd = r_detector * kTwoPi;
    const Vec3 image(ra.x(), ra.y(), -ra.z());

    Vec3 direct = rd - ra;
    Vec3 reflected = rd - image;
    if (options.equal_distance_approximation)
        direct = reflected = rd;
    const double dist_direct = direct.norm();
    const double dist_reflected = reflected.norm();
    const Vec3 u = direct / dist_direct;

    DyadicGreens g;
    g.r_field = r_detector;
    g.r_source = geom.emitter_position();
    g.omega = omega;
    g.part = GreensPart::FarField;
    g.matrix = std::exp(kI * k1 * dist_direct) / (4.0 * kPi * dist_direct) *
               (Mat3::Identity() - u * u.transpose()).cast<Complex>();

    if (sigma.is_vanishing() && geom.eps_lower == geom.eps_upper)
        return g;

    // Stationary point of the reflected angular spectrum.
    const double rho = std::hypot(reflected.x(), reflected.y());
    const double phi = rho > 0.0 ? std::atan2(reflected.y(), reflected.x()) : 0.0;
    const double kappa = k1 * rho / dist_reflected;
    const FresnelCoefficients f = fresnel_solve_polar(kappa, phi, omega, sigma, geom);
    const ModePair up = mode_vectors_polar(kappa, phi, k1, Direction::Up);
    const ModePair down = mode_vectors_polar(kappa, phi, k1, Direction::Down);
    g.matrix += std::exp(kI * k1 * dist_reflected) / (4.0 * kPi * dist_reflected) *
                reflection_dyad(f, up.t, up.p, down.p);
    return g;
}

}  // namespace metaqe
