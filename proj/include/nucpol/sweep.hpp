// sweep.hpp — photon-to-nucleus transfer by a tanh detuning sweep
//
//   i d/dt (c_C, c_N)ᵀ = [[Δ₀ tanh(kt), Ω], [Ω, 0]] (c_C, c_N)ᵀ
//
// started in the photonic state at t = −5/k. Γ_LZ = πΩ²/(kΔ₀) separates
// adiabatic transfer (Γ ≫ 1) from diabatic passage (Γ ≪ 1).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nucpol/fit.hpp"
#include "nucpol/ode.hpp"
#include "nucpol/time_series.hpp"

namespace nucpol::sweep {

using cplx = std::complex<double>;

struct SweepProtocol {
    double delta0 = 0.0;
    double rate_k = 0.0;
    double omega = 0.0;   // g√N
    double t_end = 0.0;   // 0 selects +5/k

    double t_start() const { return -5.0 / rate_k; }
    double end_time() const { return t_end > 0.0 ? t_end : 5.0 / rate_k; }
    double detuning(double t) const;
    double lz_parameter() const;

    // Throws InvalidArgument for k <= 0, Ω < 0 or |Δ₀|/Ω < 3.
    void validate() const;
    // Non-empty when 3 <= |Δ₀|/Ω < 10.
    std::vector<std::string> warnings() const;

    // k chosen so that πΩ²/(kΔ₀) equals `gamma_lz`.
    static SweepProtocol from_lz(double gamma_lz, double omega, double delta0);
};

struct SweepState {
    cplx c_photon{1.0, 0.0};
    cplx c_nuclear{0.0, 0.0};

    double norm() const { return std::norm(c_photon) + std::norm(c_nuclear); }
};

struct SweepOptions {
    ode::Tolerance tol{1e-11, 1e-13};
    std::size_t n_samples = 4001;
    double norm_tolerance = 1e-6;
};

// Throws NormError when |ψ|² drifts from its initial value by more than the
// tolerance at any stored sample.
TimeSeries<SweepState> integrate_sweep(const SweepProtocol& proto, const SweepOptions& opts = {},
                                       const SweepState& initial = {});

struct BranchPopulations {
    double p_up;
    double p_lp;
};

// Overlaps with the instantaneous eigenvectors (real, first component >= 0).
BranchPopulations project_polariton(const SweepState& state, const SweepProtocol& proto, double t);

struct SweepSample {
    double delta;
    double p_photon;
    double p_nuclear;
    double p_up;
    double p_lp;
};

TimeSeries<SweepSample> observables(const TimeSeries<SweepState>& trace, const SweepProtocol& proto);

// 10–90% rise time of P_UP between the plateaus averaged over the first and
// last 5% of the window. Throws NoJumpError when the plateaus differ by less
// than 0.01.
double jump_time(const TimeSeries<double>& p_up);

// Angular frequency of the bare photon-population oscillation from the mean
// spacing of its maxima in [from, to]. Throws OverdampedError with fewer than
// three maxima.
double beating_frequency(const TimeSeries<SweepSample>& samples, double from, double to);

struct JumpPoint {
    double rate_k;
    double gamma_lz;
    double tau_jump;
    double p_nuclear_final;
};

struct JumpScan {
    std::vector<JumpPoint> points;
    fit::PowerLawFit fit;  // τ_jump against k; exponent is the log-log slope
};

JumpScan jump_time_scan(double omega, double delta0, std::span<const double> rates_k, const SweepOptions& opts = {},
                        std::size_t jobs = 1);

} // namespace nucpol::sweep
