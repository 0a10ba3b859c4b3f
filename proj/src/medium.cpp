#include "metaqe/medium.hpp"

#include <cmath>
#include <string>

#include "metaqe/errors.hpp"

namespace metaqe {

void LorentzOscillator::validate() const
{
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw InvalidParameter("Lorentz amplitude must be positive, got " + std::to_string(amplitude));
    if (!(resonance > 0.0) || !std::isfinite(resonance))
        throw InvalidParameter("Lorentz resonance must be positive, got " + std::to_string(resonance));
    if (!(damping > 0.0) || !std::isfinite(damping))
        throw InvalidParameter("Lorentz damping must be positive, got " + std::to_string(damping));
}

bool SurfaceConductivity::is_extreme_limit() const
{
    return (ideal_y && !ideal_x && xx == Complex{}) || (ideal_x && !ideal_y && yy == Complex{});
}

bool SurfaceConductivity::is_vanishing() const
{
    return !ideal_x && !ideal_y && xx == Complex{} && yy == Complex{};
}

bool SurfaceConductivity::is_passive() const
{
    const bool x_ok = ideal_x || (std::isfinite(xx.real()) && std::isfinite(xx.imag()) && xx.real() >= 0.0);
    const bool y_ok = ideal_y || (std::isfinite(yy.real()) && std::isfinite(yy.imag()) && yy.real() >= 0.0);
    return x_ok && y_ok;
}

SurfaceConductivity SurfaceConductivity::swapped_axes() const
{
    return {yy, xx, ideal_y, ideal_x};
}

SurfaceConductivity SurfaceConductivity::scaled(double factor) const
{
    return {xx * factor, yy * factor, ideal_x, ideal_y};
}

std::string_view to_string(AnisotropyRegime regime)
{
    switch (regime) {
    case AnisotropyRegime::Inductive:
        return "inductive";
    case AnisotropyRegime::Hyperbolic:
        return "hyperbolic";
    case AnisotropyRegime::Capacitive:
        return "capacitive";
    }
    return "unknown";
}

Complex lorentz_conductivity(const LorentzOscillator& model, double omega)
{
    if (!(omega > 0.0))
        throw InvalidParameter("conductivity frequency must be positive, got " + std::to_string(omega));
    model.validate();
    const double detuning = omega * omega - model.resonance * model.resonance;
    return model.amplitude * kI * omega / Complex{detuning, model.damping * omega};
}

SurfaceConductivity evaluate_conductivity(const LorentzOscillator& model_x,
                                          const LorentzOscillator& model_y,
                                          double omega)
{
    return {lorentz_conductivity(model_x, omega), lorentz_conductivity(model_y, omega), false, false};
}

namespace {

// +1, -1 or 0 for the sign of Im sigma_jj; an ideal component is +i*infinity.
int imaginary_sign(Complex value, bool ideal)
{
    if (ideal)
        return 1;
    if (value.imag() > 0.0)
        return 1;
    if (value.imag() < 0.0)
        return -1;
    return 0;
}

}  // namespace

AnisotropyRegime classify_regime(const SurfaceConductivity& sigma)
{
    const int sx = imaginary_sign(sigma.xx, sigma.ideal_x);
    const int sy = imaginary_sign(sigma.yy, sigma.ideal_y);
    if (sx == 0 || sy == 0)
        throw DegenerateRegime("regime undefined: an imaginary conductivity part vanishes");
    if (sx > 0 && sy > 0)
        return AnisotropyRegime::Inductive;
    if (sx < 0 && sy < 0)
        return AnisotropyRegime::Capacitive;
    return AnisotropyRegime::Hyperbolic;
}

SurfaceConductivity extreme_anisotropy_limit()
{
    return {Complex{}, Complex{}, false, true};
}

SurfaceConductivity perfect_conductor()
{
    return {Complex{}, Complex{}, true, true};
}

}  // namespace metaqe
