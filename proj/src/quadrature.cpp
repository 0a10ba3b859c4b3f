#include "metaqe/quadrature.hpp"

#include <algorithm>
#include <array>
#include <queue>

#include "metaqe/errors.hpp"

namespace metaqe::quadrature {

MatrixIntegral periodic_trapezoid(const std::function<CMat3(double)>& f, const PeriodicOptions& options)
{
    int n = std::max(options.initial_nodes, 2);
    double h = kTwoPi / n;
    CMat3 sum = CMat3::Zero();
    for (int i = 0; i < n; ++i)
        sum += f(i * h);
    MatrixIntegral out;
    out.evaluations = n;
    CMat3 estimate = sum * h;

    while (n < options.max_nodes) {
        // The refined rule reuses every old node and adds the midpoints.
        CMat3 mid = CMat3::Zero();
        for (int i = 0; i < n; ++i)
            mid += f((i + 0.5) * h);
        out.evaluations += n;
        sum += mid;
        n *= 2;
        h *= 0.5;
        const CMat3 refined = sum * h;
        const double change = max_abs(refined - estimate);
        estimate = refined;
        if (change <= std::max(options.abs_tol, options.rel_tol * max_abs(refined))) {
            out.value = refined;
            out.error_estimate = change;
            return out;
        }
        out.error_estimate = change;
    }
    throw IntegrationFailure("periodic trapezoid did not converge in " + std::to_string(n) + " nodes",
                             out.error_estimate);
}

namespace {

// Abscissae and weights of the 15-point Kronrod rule; odd entries are the
// embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    Complex a;
    Complex b;
    CMat3 value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel integrate_panel(const std::function<CMat3(Complex)>& f, Complex a, Complex b, int& evaluations)
{
    const Complex center = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    const CMat3 fc = f(center);
    CMat3 kronrod = kKronrodWeights[7] * fc;
    CMat3 gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const CMat3 fl = f(center - half * kKronrodNodes[i]);
        const CMat3 fr = f(center + half * kKronrodNodes[i]);
        kronrod += kKronrodWeights[i] * (fl + fr);
        if (i % 2 == 1)
            gauss += kGaussWeights[i / 2] * (fl + fr);
    }
    evaluations += 15;
    Panel p{a, b, kronrod * half, 0.0};
    p.error = max_abs((kronrod - gauss) * half);
    return p;
}

}  // namespace

MatrixIntegral contour_gauss_kronrod(const std::function<CMat3(Complex)>& f,
                                     const std::vector<ContourSegment>& contour,
                                     const AdaptiveOptions& options)
{
    MatrixIntegral out;
    std::priority_queue<Panel> panels;
    CMat3 total = CMat3::Zero();
    double error = 0.0;

    for (const auto& segment : contour) {
        const int n = std::max(segment.initial_panels, 1);
        for (int i = 0; i < n; ++i) {
            const Complex a = segment.start + (segment.end - segment.start) * (double(i) / n);
            const Complex b = segment.start + (segment.end - segment.start) * (double(i + 1) / n);
            Panel p = integrate_panel(f, a, b, out.evaluations);
            total += p.value;
            error += p.error;
            panels.push(std::move(p));
        }
    }

    auto converged = [&] { return error <= std::max(options.abs_tol, options.rel_tol * max_abs(total)); };

    while (!converged()) {
        if (static_cast<int>(panels.size()) >= options.max_panels)
            throw IntegrationFailure("contour quadrature did not converge", error);
        Panel worst = panels.top();
        panels.pop();
        const Complex mid = 0.5 * (worst.a + worst.b);
        Panel left = integrate_panel(f, worst.a, mid, out.evaluations);
        Panel right = integrate_panel(f, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(std::move(left));
        panels.push(std::move(right));
    }

    // Re-sum from the panel list so round-off from the running updates does not accumulate.
    CMat3 clean = CMat3::Zero();
    double clean_error = 0.0;
    while (!panels.empty()) {
        clean += panels.top().value;
        clean_error += panels.top().error;
        panels.pop();
    }
    out.value = clean;
    out.error_estimate = clean_error;
    return out;
}

}  // namespace metaqe::quadrature
