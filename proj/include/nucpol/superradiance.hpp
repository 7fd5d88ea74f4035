// superradiance.hpp — collective emission on the symmetric Dicke ladder
//
// Bad-cavity effective model with the VUV mode eliminated:
//
//   H   = d(t) (J₊ + J₋) + Δ_ex J_z,     d(t) = (2gU/κ_VUV) η(t)
//   ρ̇  = −i[H, ρ] + Γ_eff D[J₋]ρ,       Γ_eff = γ₋ + 4g²/κ_VUV
//
// with η(t) a classical pump envelope standing in for a₂†a₁². ρ lives on the
// N+1 states |j = N/2, m⟩, ordered m = −j … +j.

#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nucpol/fit.hpp"
#include "nucpol/maxwell_bloch.hpp"
#include "nucpol/model_params.hpp"
#include "nucpol/ode.hpp"
#include "nucpol/time_series.hpp"

namespace nucpol::superradiance {

using maxwell_bloch::DriveProfile;

class DickeSpace {
public:
    explicit DickeSpace(long n_nuclei);

    long n_nuclei() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(n_) + 1; }
    double j() const { return 0.5 * static_cast<double>(n_); }
    double m(std::size_t k) const { return static_cast<double>(k) - j(); }

    // ⟨k+1|J₊|k⟩ = √((j − m)(j + m + 1)), k = 0 … N−1
    const std::vector<double>& ladder() const { return ladder_; }

    // Dense matrices, built on request (O(N²) memory each).
    Eigen::MatrixXd j_plus() const;
    Eigen::MatrixXd j_minus() const;
    Eigen::MatrixXd j_z() const;

private:
    long n_;
    std::vector<double> ladder_;
};

struct EffectiveModel {
    double drive_coupling = 0.0;  // 2gU/κ_VUV, multiplies η(t)
    double gamma_eff = 0.0;
    double detuning = 0.0;        // Δ_ex
    DriveProfile pump_envelope{}; // η(t), real part used
    double bad_cavity_ratio = 0.0;  // κ_VUV / (g√N)
    std::vector<std::string> warnings;

    double drive(double t) const { return drive_coupling * pump_envelope(t).real(); }
};

// Throws InvalidArgument for κ_VUV = 0. Adds a warning when κ_VUV/(g√N) < 10.
EffectiveModel build_effective_model(const ModelParams& p, const DriveProfile& pump);

// Peak η₀ of a Gaussian envelope of width σ that turns the collective spin by
// `rotation` radians: rotation = 2 ∫ d(t) dt = 2·drive_coupling·η₀·σ√(2π).
double pump_amplitude_for_rotation(double rotation, double drive_coupling, double width);

struct EmissionSample {
    double intensity;  // Γ_eff ⟨J₊J₋⟩
    double g1;         // |⟨J₋⟩| / √⟨J₊J₋⟩, 0 where ⟨J₊J₋⟩ ≤ 1e-12
    double jz;
};

struct SimulationOptions {
    ode::Tolerance tol{1e-8, 1e-10};
    std::size_t n_samples = 2001;
    bool start_inverted = false;  // |j, +j⟩ instead of |j, −j⟩
    double trace_tolerance = 1e-6;
    double positivity_tolerance = 1e-6;
    std::size_t positivity_stride = 100;
    // Step floor; a stiff run that hits it fails with a ConvergenceError
    // suggesting a shorter span.
    double min_step = 0.0;
};

TimeSeries<EmissionSample> simulate_superradiance(const EffectiveModel& model, const DickeSpace& space, double t0,
                                                  double t1, const SimulationOptions& opts = {});

struct BurstAnalysis {
    double i_max;
    double t_burst;
    double tau_eff;  // FWHM of the post-switch-off pulse
    double g1_at_peak;
    std::size_t samples_across_fwhm;
};

// Post-switch-off pulse: the highest interior maximum after `switch_off`
// and its half-height width. Throws ResolutionError when there is no such
// maximum, either half-height crossing is missing, or fewer than
// `min_samples` samples span the FWHM.
BurstAnalysis analyze_burst(const TimeSeries<EmissionSample>& trace, double switch_off, std::size_t min_samples = 10);

// Log-log fit of I_max against N. Needs >= 5 values of N spanning >= 4x.
fit::PowerLawFit peak_scaling_fit(std::span<const double> n, std::span<const double> i_max);
fit::PowerLawFit peak_scaling_fit(const std::map<long, TimeSeries<EmissionSample>>& runs, double switch_off);

// Fixed pump protocol shared by the N and κ scans.
struct Protocol {
    double g = 106.8;
    double fwm_u = 1000.0;
    double gamma_minus = 1.0 / 1740.0;
    double detuning = 0.0;
    double rotation = 0.85 * std::numbers::pi;  // collective tipping angle of the pump
    double pump_width = 2e-5;
    double pump_delay = 5.0;      // centre at pump_delay·σ; switch-off 5σ later
    double burst_windows = 20.0;  // run length after switch-off, in units of 1/(NΓ_eff)
    SimulationOptions sim{};
    std::size_t jobs = 1;
};

struct Run {
    long n;
    double kappa;
    EffectiveModel model;
    double switch_off;
    TimeSeries<EmissionSample> trace;
    BurstAnalysis burst;
};

Run run_protocol(const Protocol& protocol, long n, double kappa);

struct LifetimePoint {
    double kappa;
    double tau_eff;
};

struct LifetimeScan {
    long n;
    std::vector<LifetimePoint> points;
    fit::LinearFit fit;          // τ_eff against κ
    double fitted_constant;      // slope·N·g², so τ_eff ≈ c·κ/(Ng²)
};

LifetimeScan lifetime_vs_kappa(double g, long n, std::span<const double> kappa_values, const Protocol& protocol = {});

} // namespace nucpol::superradiance
