// coupling.hpp — single-nucleus cavity coupling from measured transition data
//
// The magnetic-dipole moment is inverted from the vacuum lifetime, the
// vacuum field follows from the mode volume, and g is their product over ħ.
// coupling_strength() also evaluates the closed form directly so both routes
// can be compared.

#pragma once

#include <optional>

#include "nucpol/model_params.hpp"

namespace nucpol::coupling {

struct NuclearTransition {
    double wavelength = 0.0;             // m
    double vacuum_lifetime = 0.0;        // s
    double effective_mode_volume = 0.0;  // m³

    // ²²⁹Th isomer: λ = 148.3821 nm, τ = 1740 s.
    static NuclearTransition thorium229(double effective_mode_volume = 1e-15);

    void validate() const;
    double angular_frequency() const;   // 2πc/λ, rad/s
    double vacuum_decay_rate() const;   // Γ_vac = 1/τ, s⁻¹
};

struct DerivedCoupling {
    double g = 0.0;                  // rad/s
    double transition_moment = 0.0;  // J/T
    double vacuum_field = 0.0;       // T
};

// |μ_ge| = sqrt(3πħc³Γ / (μ₀ω³))
double dipole_moment_from_lifetime(const NuclearTransition& t);

// B_vac = sqrt(μ₀ħω / (2V))
double vacuum_field(const NuclearTransition& t);

// g = sqrt(3πc³Γ / (2ω²V))
double coupling_strength(const NuclearTransition& t);

// All three at once, g taken from the closed form.
DerivedCoupling derive(const NuclearTransition& t);

struct SweepSettings {
    double delta0 = 0.0;  // sweep amplitude Δ₀, rad/s
    double rate_k = 0.0;  // tanh rate, 1/s
};

struct CollectiveRates {
    double omega_collective = 0.0;  // g√N
    double gamma_eff = 0.0;         // γ₋ + 4Ng²/κ
    double cooperativity = 0.0;     // Ng²/(κγ₋)
    double tau_eff_estimate = 0.0;  // κ/(4Ng²), +inf without an ensemble
    std::optional<double> lz_parameter;  // πΩ²/(kΔ₀) when a sweep is given
};

// n may be zero (no ensemble). Throws InvalidArgument for κ = 0 or γ₋ = 0,
// or for a sweep with non-positive Δ₀ or k.
CollectiveRates collective_rates(double g, double n, double kappa_vuv, double gamma_minus,
                                 std::optional<SweepSettings> sweep = std::nullopt);

CollectiveRates collective_rates(const ModelParams& p, std::optional<SweepSettings> sweep = std::nullopt);

} // namespace nucpol::coupling
