#include "metaqe/observables.hpp"

#include <algorithm>
#include <cmath>

#include "metaqe/errors.hpp"

namespace metaqe {

void DetectorGeometry::validate() const
{
    if (!(distance >= kMinFarFieldDistance))
        throw InvalidParameter("detector distance must be at least 10 wavelengths, got " + std::to_string(distance));
    if (!tied_to_tilt && std::abs(direction.norm() - 1.0) > 1e-12)
        throw InvalidParameter("detector direction must be a unit vector");
}

Vec3 DetectorGeometry::position(const EulerAngles& angles) const
{
    if (!tied_to_tilt)
        return distance * direction;
    return distance * (rotation_matrix({angles.alpha, angles.beta, 0.0}) * Vec3::UnitZ());
}

ObservationSetup make_observation(const LayeredGeometry& geom, double omega, const SurfaceConductivity& sigma,
                                  const DetectorGeometry& detector, const EulerAngles& angles,
                                  const FarFieldOptions& options)
{
    detector.validate();
    ObservationSetup obs;
    obs.detector = detector.position(angles);
    obs.farfield = greens_farfield(obs.detector, geom, omega, sigma, options).matrix;
    obs.vacuum = greens_farfield(obs.detector, geom, omega, SurfaceConductivity{}, options).matrix;
    return obs;
}

FieldVectors field_vectors(const CMat3& g, const EigenSystem& es, Sublevel initial)
{
    const CMat3 gv = g * es.eigenvectors;
    FieldVectors f;
    for (int j = 0; j < 3; ++j)
        f[j] = gv.col(j) * es.projection(j, index_of(initial));
    return f;
}

Trace farfield_intensity(const EigenSystem& es, const ObservationSetup& obs, Sublevel initial,
                         const std::vector<double>& taus)
{
    const double reference = (obs.vacuum * es.transform.col(index_of(initial))).squaredNorm();
    if (!(reference > 0.0))
        throw InvalidParameter("vacuum reference intensity vanishes for this initial state and detector");
    const FieldVectors f = field_vectors(obs.farfield, es, initial);
    std::vector<double> values;
    values.reserve(taus.size());
    for (double tau : taus) {
        if (tau < 0.0)
            throw InvalidParameter("retarded time must be non-negative");
        CVec3 field = CVec3::Zero();
        for (int j = 0; j < 3; ++j)
            field += f[j] * std::exp(-kI * es.g[j] * tau);
        values.push_back(field.squaredNorm() / reference);
    }
    Trace out{"tau_gamma0", taus, {}, {}};
    out.add_column("intensity", std::move(values));
    return out;
}

double SpectralDecomposition::evaluate(const std::array<Complex, 3>& g, double delta) const
{
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double x = delta - g[j].real();
        s += (xi[j] * x + eta[j] * g[j].imag()) / (x * x + g[j].imag() * g[j].imag());
    }
    return s;
}

SpectralDecomposition spectral_decomposition(const FieldVectors& f, const std::array<Complex, 3>& g)
{
    SpectralDecomposition d;
    for (int j = 0; j < 3; ++j) {
        Complex b = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Complex gap = g[j] - std::conj(g[i]);
            if (std::abs(gap) == 0.0)
                throw DegeneratePole("coincident poles g_j = conj(g_i) in the spectral decomposition");
            b += f[i].dot(f[j]) / gap;  // dot() conjugates its left argument
        }
        d.xi[j] = 2.0 * b.real();
        d.eta[j] = -2.0 * b.imag();
    }
    return d;
}

double spectrum_direct(const FieldVectors& f, const std::array<Complex, 3>& g, double delta)
{
    CVec3 sum = CVec3::Zero();
    for (int j = 0; j < 3; ++j)
        sum += f[j] / (delta - g[j]);
    return sum.squaredNorm();
}

namespace {

void require_decaying(const EigenSystem& es)
{
    for (int j = 0; j < 3; ++j)
        if (!(es.g[j].imag() < 0.0))
            throw NonDecayingState("eigenvalue " + std::to_string(j) + " has Im g >= 0; spectrum lines have no width");
}

// S^0: resonant vacuum value 4 |Im[G0] T_{:,q0}|^2; the factor i d 4pi k^2 cancels.
double spectrum_reference(const ObservationSetup& obs, const EigenSystem& es, Sublevel initial)
{
    const CVec3 f0 = obs.vacuum.imag().cast<Complex>() * es.transform.col(index_of(initial));
    const double s0 = 4.0 * f0.squaredNorm();
    if (!(s0 > 0.0))
        throw InvalidParameter("vacuum reference spectrum vanishes for this initial state and detector");
    return s0;
}

SpectrumTrace assemble_spectrum(const FieldVectors& f, const EigenSystem& es, const std::vector<double>& deltas)
{
    SpectrumTrace out;
    out.f = f;
    out.g = es.g;
    out.decomposition = spectral_decomposition(f, es.g);
    std::vector<double> values;
    values.reserve(deltas.size());
    double peak = 0.0;
    double deviation = 0.0;
    for (double delta : deltas) {
        const double direct = spectrum_direct(f, es.g, delta);
        deviation = std::max(deviation, std::abs(out.decomposition.evaluate(es.g, delta) - direct));
        peak = std::max(peak, direct);
        values.push_back(direct);
    }
    out.reconstruction_error = peak > 0.0 ? deviation / peak : deviation;
    if (out.reconstruction_error > 1e-8)
        throw NumericalError("Lorentzian decomposition does not reproduce the spectrum (relative error " +
                             std::to_string(out.reconstruction_error) + ")");
    out.trace = Trace{"delta_gamma0", deltas, {}, {}};
    out.trace.add_column("spectrum", std::move(values));
    return out;
}

}  // namespace

SpectrumTrace emitted_spectrum(const EigenSystem& es, const ObservationSetup& obs, Sublevel initial,
                               const std::vector<double>& deltas)
{
    require_decaying(es);
    const double scale = 1.0 / std::sqrt(spectrum_reference(obs, es, initial));
    FieldVectors f = field_vectors(obs.farfield.imag().cast<Complex>(), es, initial);
    for (auto& v : f)
        v *= kI * scale;
    return assemble_spectrum(f, es, deltas);
}

CMat3 detector_triad(const EulerAngles& angles)
{
    return transition_transform(angles);
}

SpectrumTrace polarization_resolved_spectrum(const EigenSystem& es, const ObservationSetup& obs, Sublevel initial,
                                             const CMat3& triad, Sublevel component,
                                             const std::vector<double>& deltas)
{
    if ((triad.adjoint() * triad - CMat3::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidBasis("detector polarization triad is not orthonormal");
    require_decaying(es);
    const double scale = 1.0 / std::sqrt(spectrum_reference(obs, es, initial));
    const CVec3 e = triad.col(index_of(component));
    FieldVectors f = field_vectors(obs.farfield.imag().cast<Complex>(), es, initial);
    for (auto& v : f)
        v = CVec3(kI * scale * e.dot(v), 0.0, 0.0);
    return assemble_spectrum(f, es, deltas);
}

}  // namespace metaqe
