// maxwell_bloch.hpp — mean-field cavity/ensemble dynamics
//
//   α̇ = E(t) − (κ/2)α − iNgP
//   Ṗ = −(γ/2)P + igαZ
//   Ż = −γ(Z + 1) + 2ig(α*P − αP*)        (real: equals −4g Im[α*P])
//
// plus the Rabi-frequency estimator and the √N scaling fit built on it.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nucpol/fit.hpp"
#include "nucpol/model_params.hpp"
#include "nucpol/ode.hpp"
#include "nucpol/time_series.hpp"

namespace nucpol::maxwell_bloch {

using cplx = std::complex<double>;

struct MeanFieldState {
    cplx alpha{};
    cplx polarization{};
    double inversion = -1.0;

    static MeanFieldState ground() { return {}; }

    // max(|P| − 1, |Z| − 1, 0): how far the Bloch vector left the unit ball.
    double bloch_excess() const;
};

enum class DriveKind { off, constant, gaussian };

// Effective four-wave-mixing source E(t): a complex amplitude times a
// Gaussian, a constant, or nothing.
struct DriveProfile {
    DriveKind kind = DriveKind::off;
    cplx amplitude{};
    double center = 0.0;
    double width = 1.0;

    static DriveProfile off() { return {}; }
    static DriveProfile constant(cplx amplitude) { return {DriveKind::constant, amplitude, 0.0, 1.0}; }
    static DriveProfile gaussian(cplx amplitude, double center, double width) {
        return {DriveKind::gaussian, amplitude, center, width};
    }

    void validate() const;
    cplx operator()(double t) const;

    // Time after which a Gaussian is negligible (center + 5 width); -inf
    // for off, +inf for constant.
    double switch_off_time() const;
};

struct MbeOptions {
    ode::Tolerance tol{1e-8, 1e-10};
    std::size_t n_samples = 2001;
    // Linearised limit: Z held at its initial value.
    bool freeze_inversion = false;
};

// Trajectory sampled uniformly on [t0, t1]. Throws ConvergenceError with the
// failing time if the adaptive step collapses.
TimeSeries<MeanFieldState> integrate_mbe(const ModelParams& p, const DriveProfile& drive, double t0, double t1,
                                         const MeanFieldState& init, const MbeOptions& opts = {});

// |α|² along a trajectory.
TimeSeries<double> intensity(const TimeSeries<MeanFieldState>& trace);

// Amplitude (Rabi) angular frequency: half the dominant angular frequency of
// |α|², from the mean spacing of parabolically refined maxima at t >= discard_until.
// Throws OverdampedError with fewer than three maxima.
double extract_rabi_frequency(const TimeSeries<double>& intensity_trace, double discard_until = 0.0);

struct RabiRunSettings {
    double t_end = 0.0;            // 0: chosen from the smallest N (periods below)
    double periods = 8.0;          // intensity periods kept after the kick
    std::size_t samples_per_period = 64;
    MbeOptions mbe{};
    std::size_t jobs = 1;
};

struct RabiPoint {
    long n;
    double sqrt_n;
    double omega_rabi;
};

struct RabiScaling {
    std::vector<RabiPoint> points;
    fit::LinearFit fit;  // omega_rabi against √N; slope is the recovered g
};

// Runs the model at every N (kick from the ground state by `drive`) and fits
// Ω_R = slope·√N + intercept. Needs >= 4 distinct N.
RabiScaling rabi_scaling_fit(std::span<const long> n_values, const ModelParams& p, const DriveProfile& drive,
                             const RabiRunSettings& settings = {});

// Single-N run with the same conventions; returns the trace and Ω_R.
struct RabiRun {
    TimeSeries<MeanFieldState> trace;
    double discard_until;  // end of the kick transient
    double omega_rabi;
};
RabiRun run_rabi(const ModelParams& p, const DriveProfile& drive, const RabiRunSettings& settings = {});

// The integration part of run_rabi alone; omega_rabi is left NaN.
RabiRun simulate_rabi(const ModelParams& p, const DriveProfile& drive, const RabiRunSettings& settings = {});

} // namespace nucpol::maxwell_bloch
