#pragma once

#include <string>

namespace nucpol {

// All rates and frequencies of the cavity-nucleus model, angular units.
//
// The four mode energies are read as lab-frame frequencies or as rotating-
// frame detunings depending on which frame the consumer builds in; the
// record itself does not care.
struct ModelParams {
    double omega1 = 0.0;     // pump mode (or detuning Δ₁)
    double omega2 = 0.0;     // seed/idler mode (or Δ₂)
    double omega_vuv = 0.0;  // VUV cavity mode (or Δ_VUV)
    double e_nuc = 0.0;      // nuclear transition energy (or Δ_ex)

    double g = 0.0;      // single-nucleus coupling
    double fwm_u = 0.0;  // four-wave-mixing strength U

    double pump_amp = 0.0;     // Ω_p
    double pump_center = 0.0;  // t₀
    double pump_width = 1.0;   // σ

    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa_vuv = 0.0;
    double gamma_minus = 0.0;

    long n_nuclei = 1;

    // Throws InvalidArgument naming the first violated field.
    void validate() const;

    // |2ω₁ − ω₂ − ω_VUV|, zero when the FWM process is energy-matched.
    double fwm_mismatch() const;

    // Ω_p exp(−(t − t₀)² / 2σ²)
    double pump_envelope(double t) const;
};

} // namespace nucpol
