#ifndef METAQE_DYNAMICS_HPP
#define METAQE_DYNAMICS_HPP

#include <array>
#include <vector>

#include "metaqe/emitter.hpp"
#include "metaqe/types.hpp"

namespace metaqe {

/**
 * Spectral decomposition of the tilted self-energy. Eigenvalues are labeled by
 * the laboratory axis (x, y, z) that dominates their Cartesian eigenvector, so
 * g[0] is g_x and so on.
 */
struct EigenSystem {
    std::array<Complex, 3> g{};
    CMat3 transform = CMat3::Identity();     ///< T = M S
    CMat3 eigenvectors = CMat3::Identity();  ///< columns: Cartesian eigenvectors V, unit norm
    CMat3 projection = CMat3::Identity();    ///< V^-1 T, rows j, columns q
    /// C[j](q', q) = (T^dagger V)_{q'j} (V^-1 T)_{jq}; rows and columns ordered q = -1, 0, +1.
    std::array<CMat3, 3> coefficients{};
    bool diagonal = true;

    Complex c(int j, Sublevel final_state, Sublevel initial_state) const
    {
        return coefficients[j](index_of(final_state), index_of(initial_state));
    }
};

EigenSystem eigendecompose(const CMat3& sigma_cartesian, const EulerAngles& angles);

/// U(t) = sum_j C_j exp(-i g_j t), t >= 0.
CMat3 evolution_matrix(const EigenSystem& es, double t);

struct PopulationTrace {
    std::vector<double> times;
    std::vector<double> values;
    Sublevel initial = Sublevel::Minus;
    Sublevel final_state = Sublevel::Minus;
};

/// P_{q_f, q_0}(t) = |U_{q_f q_0}(t)|^2.
PopulationTrace population(const EigenSystem& es, Sublevel initial, Sublevel final_state,
                           const std::vector<double>& times);

/**
 * P(t) = sum_k |C_k|^2 exp(2 g_k'' t)
 *      + 2 sum_{k<l} |C_kl| exp((g_k'' + g_l'') t) cos((g_k' - g_l') t - phi_kl),
 * with C_kl = C_k C_l^* and phi_kl = arg C_kl. Pairs are (x,y), (y,z), (z,x).
 */
struct InterferenceTerms {
    std::array<double, 3> weight{};
    std::array<double, 3> pair_magnitude{};
    std::array<double, 3> pair_phase{};
    std::array<Complex, 3> g{};

    double evaluate(double t) const;
};

inline constexpr std::array<std::array<int, 2>, 3> kCyclicPairs = {{{0, 1}, {1, 2}, {2, 0}}};

InterferenceTerms population_terms(const EigenSystem& es, Sublevel initial, Sublevel final_state);

/// Block two-level result for the untilted axis.
PopulationTrace two_level_population(Complex g_mm, Complex g_mp, const std::vector<double>& times);

/// (1/2) sin 2alpha sin 2beta sin beta.
double asymmetry_prefactor(const EulerAngles& angles);

/**
 * Closed form of P_{-1,+1}(t) - P_{+1,-1}(t) for couplings diagonal in the
 * laboratory frame: prefactor * sum_pairs exp((g_k''+g_l'')t) sin((g_k'-g_l')t).
 */
Trace asymmetry(const EigenSystem& es, const EulerAngles& angles, const std::vector<double>& times);

/// |U_{-1,+1}|^2 - |U_{+1,-1}|^2 from the evolution matrix; valid for any coupling.
Trace population_difference(const EigenSystem& es, const std::vector<double>& times);

/// -|Re g_-+| / Im g_--; at least 1 means underdamped exchange.
double strong_coupling_parameter(Complex g_mm, Complex g_mp);

struct PropagationOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
};

/// Amplitudes c(t) of i dc/dt = Sigma c with c(0) = e_{q0}, by adaptive Dormand-Prince.
std::vector<CVec3> propagate_amplitudes(const CMat3& sigma_spherical, Sublevel initial,
                                        const std::vector<double>& times, const PropagationOptions& options = {});

PopulationTrace propagate_direct(const CMat3& sigma_spherical, Sublevel initial, Sublevel final_state,
                                 const std::vector<double>& times, const PropagationOptions& options = {});

}  // namespace metaqe

#endif
