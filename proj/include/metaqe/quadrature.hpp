#ifndef METAQE_QUADRATURE_HPP
#define METAQE_QUADRATURE_HPP

#include <functional>

#include "metaqe/types.hpp"

namespace metaqe::quadrature {

/// Result of integrating a 3x3 complex matrix-valued function.
struct MatrixIntegral {
    CMat3 value = CMat3::Zero();
    double error_estimate = 0.0;
    int evaluations = 0;
};

/// Largest entry modulus; the norm used by every tolerance test here.
inline double max_abs(const CMat3& m) { return m.cwiseAbs().maxCoeff(); }

/**
 * Trapezoid rule on a full period [0, 2pi), doubling the node count until two
 * successive estimates agree to max(abs_tol, rel_tol * |I|). Exponentially
 * convergent for analytic periodic integrands.
 */
struct PeriodicOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int initial_nodes = 32;
    int max_nodes = 1 << 15;
};

MatrixIntegral periodic_trapezoid(const std::function<CMat3(double)>& f, const PeriodicOptions& options);

/// One segment of a straight-line contour in the complex plane.
struct ContourSegment {
    Complex start;
    Complex end;
    int initial_panels = 1;
};

struct AdaptiveOptions {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    int max_panels = 4000;
};

/**
 * Globally adaptive 7/15-point Gauss-Kronrod quadrature of f(z) dz along a
 * polyline contour. Panels with the largest error estimate are bisected until
 * the summed estimate meets the tolerance.
 *
 * Throws IntegrationFailure if max_panels is exhausted.
 */
MatrixIntegral contour_gauss_kronrod(const std::function<CMat3(Complex)>& f,
                                     const std::vector<ContourSegment>& contour,
                                     const AdaptiveOptions& options);

}  // namespace metaqe::quadrature

#endif
