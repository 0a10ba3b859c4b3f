#include "metaqe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "metaqe/errors.hpp"

namespace metaqe {

namespace {

bool is_diagonal(const CMat3& m)
{
    const double scale = m.cwiseAbs().maxCoeff();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && std::abs(m(i, j)) > 1e-12 * scale)
                return false;
    return true;
}

// Column permutation p with p[axis] = eigenvector index, maximizing the product
// of |V(axis, p[axis])|. The first maximum in lexicographic order wins.
std::array<int, 3> dominant_axis_labels(const CMat3& v)
{
    std::array<int, 3> perm = {0, 1, 2};
    std::array<int, 3> best = perm;
    double best_score = -std::numeric_limits<double>::infinity();
    do {
        double score = 0.0;
        for (int axis = 0; axis < 3; ++axis)
            score += std::log(std::abs(v(axis, perm[axis])) + 1e-300);
        if (score > best_score + 1e-12) {
            best_score = score;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

EigenSystem eigendecompose(const CMat3& sigma_cartesian, const EulerAngles& angles)
{
    EigenSystem es;
    es.transform = transition_transform(angles);
    if (is_diagonal(sigma_cartesian)) {
        for (int j = 0; j < 3; ++j)
            es.g[j] = sigma_cartesian(j, j);
        es.eigenvectors = CMat3::Identity();
        es.diagonal = true;
    } else {
        Eigen::ComplexEigenSolver<CMat3> solver(sigma_cartesian);
        if (solver.info() != Eigen::Success)
            throw DegenerateDecomposition("complex eigen-solver failed");
        CMat3 v = solver.eigenvectors();
        for (int j = 0; j < 3; ++j)
            v.col(j).normalize();
        const std::array<int, 3> label = dominant_axis_labels(v);
        for (int axis = 0; axis < 3; ++axis) {
            es.g[axis] = solver.eigenvalues()(label[axis]);
            es.eigenvectors.col(axis) = v.col(label[axis]);
        }
        // Squared singular values of V, ascending.
        const Eigen::SelfAdjointEigenSolver<CMat3> gram(es.eigenvectors.adjoint() * es.eigenvectors,
                                                        Eigen::EigenvaluesOnly);
        const double smin = std::sqrt(std::max(gram.eigenvalues()(0), 0.0));
        const double smax = std::sqrt(gram.eigenvalues()(2));
        if (!(smin > 1e-8 * smax))
            throw DegenerateDecomposition("self-energy is defective: eigenvector matrix condition " +
                                          std::to_string(smax / smin));
        es.diagonal = false;
    }
    const CMat3 v_inv = es.diagonal ? CMat3::Identity() : CMat3(es.eigenvectors.inverse());
    es.projection = v_inv * es.transform;
    const CMat3 left = es.transform.adjoint() * es.eigenvectors;
    for (int j = 0; j < 3; ++j)
        es.coefficients[j] = left.col(j) * es.projection.row(j);
    return es;
}

CMat3 evolution_matrix(const EigenSystem& es, double t)
{
    if (t < 0.0)
        throw InvalidParameter("evolution time must be non-negative");
    CMat3 u = CMat3::Zero();
    for (int j = 0; j < 3; ++j)
        u += es.coefficients[j] * std::exp(-kI * es.g[j] * t);
    return u;
}

PopulationTrace population(const EigenSystem& es, Sublevel initial, Sublevel final_state,
                           const std::vector<double>& times)
{
    PopulationTrace out{times, {}, initial, final_state};
    out.values.reserve(times.size());
    for (double t : times)
        out.values.push_back(std::norm(evolution_matrix(es, t)(index_of(final_state), index_of(initial))));
    return out;
}

double InterferenceTerms::evaluate(double t) const
{
    double p = 0.0;
    for (int k = 0; k < 3; ++k)
        p += weight[k] * std::exp(2.0 * g[k].imag() * t);
    for (int n = 0; n < 3; ++n) {
        const auto [k, l] = kCyclicPairs[n];
        p += 2.0 * pair_magnitude[n] * std::exp((g[k].imag() + g[l].imag()) * t) *
             std::cos((g[k].real() - g[l].real()) * t - pair_phase[n]);
    }
    return p;
}

InterferenceTerms population_terms(const EigenSystem& es, Sublevel initial, Sublevel final_state)
{
    InterferenceTerms terms;
    terms.g = es.g;
    for (int k = 0; k < 3; ++k)
        terms.weight[k] = std::norm(es.c(k, final_state, initial));
    for (int n = 0; n < 3; ++n) {
        const auto [k, l] = kCyclicPairs[n];
        const Complex ckl = es.c(k, final_state, initial) * std::conj(es.c(l, final_state, initial));
        terms.pair_magnitude[n] = std::abs(ckl);
        terms.pair_phase[n] = std::arg(ckl);
    }
    return terms;
}

PopulationTrace two_level_population(Complex g_mm, Complex g_mp, const std::vector<double>& times)
{
    PopulationTrace out{times, {}, Sublevel::Minus, Sublevel::Minus};
    out.values.reserve(times.size());
    for (double t : times) {
        out.values.push_back(0.5 * std::exp(2.0 * g_mm.imag() * t) *
                             (std::cos(2.0 * g_mp.real() * t) + std::cosh(2.0 * g_mp.imag() * t)));
    }
    return out;
}

double asymmetry_prefactor(const EulerAngles& angles)
{
    return 0.5 * std::sin(2.0 * angles.alpha) * std::sin(2.0 * angles.beta) * std::sin(angles.beta);
}

Trace asymmetry(const EigenSystem& es, const EulerAngles& angles, const std::vector<double>& times)
{
    const double f = asymmetry_prefactor(angles);
    std::vector<double> values;
    values.reserve(times.size());
    for (double t : times) {
        double sum = 0.0;
        for (const auto& [k, l] : kCyclicPairs) {
            sum += std::exp((es.g[k].imag() + es.g[l].imag()) * t) *
                   std::sin((es.g[k].real() - es.g[l].real()) * t);
        }
        values.push_back(f * sum);
    }
    Trace out{"tau_gamma0", times, {}, {}};
    out.add_column("asymmetry", std::move(values));
    return out;
}

Trace population_difference(const EigenSystem& es, const std::vector<double>& times)
{
    using enum Sublevel;
    std::vector<double> values;
    values.reserve(times.size());
    for (double t : times) {
        const CMat3 u = evolution_matrix(es, t);
        values.push_back(std::norm(u(index_of(Minus), index_of(Plus))) - std::norm(u(index_of(Plus), index_of(Minus))));
    }
    Trace out{"tau_gamma0", times, {}, {}};
    out.add_column("population_difference", std::move(values));
    return out;
}

double strong_coupling_parameter(Complex g_mm, Complex g_mp)
{
    if (!(g_mm.imag() < 0.0))
        throw InvalidParameter("strong-coupling parameter needs Im g_-- < 0");
    return -std::abs(g_mp.real()) / g_mm.imag();
}

std::vector<CVec3> propagate_amplitudes(const CMat3& sigma_spherical, Sublevel initial,
                                        const std::vector<double>& times, const PropagationOptions& options)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::array<Complex, 3>;

    if (times.empty())
        return {};
    if (times.front() < 0.0 || !std::is_sorted(times.begin(), times.end()))
        throw InvalidParameter("propagation times must be non-negative and sorted");

    const CMat3 generator = -kI * sigma_spherical;
    auto rhs = [&generator](const State& c, State& dcdt, double) {
        for (int i = 0; i < 3; ++i)
            dcdt[i] = generator(i, 0) * c[0] + generator(i, 1) * c[1] + generator(i, 2) * c[2];
    };

    State state{};
    state[index_of(initial)] = 1.0;
    std::vector<double> grid;
    grid.reserve(times.size() + 1);
    if (times.front() > 0.0)
        grid.push_back(0.0);
    grid.insert(grid.end(), times.begin(), times.end());
    const bool skip_origin = times.front() > 0.0;

    std::vector<CVec3> out;
    out.reserve(times.size());
    auto observer = [&](const State& c, double) { out.emplace_back(c[0], c[1], c[2]); };
    const double scale = std::max(1.0, sigma_spherical.cwiseAbs().maxCoeff());
    try {
        auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol,
                                                 odeint::runge_kutta_dopri5<State>());
        odeint::integrate_times(stepper, rhs, state, grid.begin(), grid.end(), 1e-3 / scale, observer);
    } catch (const std::exception& e) {
        throw IntegrationFailure(std::string("amplitude propagation failed: ") + e.what(), 0.0);
    }
    if (skip_origin)
        out.erase(out.begin());
    return out;
}

PopulationTrace propagate_direct(const CMat3& sigma_spherical, Sublevel initial, Sublevel final_state,
                                 const std::vector<double>& times, const PropagationOptions& options)
{
    const auto amplitudes = propagate_amplitudes(sigma_spherical, initial, times, options);
    PopulationTrace out{times, {}, initial, final_state};
    out.values.reserve(times.size());
    for (const auto& c : amplitudes)
        out.values.push_back(std::norm(c(index_of(final_state))));
    return out;
}

}  // namespace metaqe
