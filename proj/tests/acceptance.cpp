// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nucpol/coupling.hpp"
#include "nucpol/errors.hpp"
#include "nucpol/lindblad.hpp"
#include "nucpol/maxwell_bloch.hpp"
#include "nucpol/parallel.hpp"
#include "nucpol/phase_diagram.hpp"
#include "nucpol/spectrum.hpp"
#include "nucpol/superradiance.hpp"
#include "nucpol/sweep.hpp"

using namespace nucpol;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Working point of the Rabi/phase runs.
constexpr double kG = 106.8;
constexpr double kKappa = 1000.0;
constexpr double kGamma = 1.0 / 1740.0;

ModelParams rabi_params(long n, double kappa = kKappa) {
    ModelParams p;
    p.g = kG;
    p.kappa_vuv = kappa;
    p.gamma_minus = kGamma;
    p.n_nuclei = n;
    return p;
}

const maxwell_bloch::DriveProfile kKick = maxwell_bloch::DriveProfile::gaussian(40.0, 5e-4, 1e-4);

Outcome coupling_value() {
    const double g = coupling::coupling_strength(coupling::NuclearTransition::thorium229(1e-15));
    const double rel = std::abs(g - 671.13) / 671.13;
    return {rel <= 1e-3, fmt("g = %.6f rad/s, target 671.13, relative deviation %.3e (limit 1e-3)", g, rel)};
}

Outcome rabi_scaling() {
    const std::vector<long> ns{100, 200, 300, 400, 500};
    maxwell_bloch::RabiRunSettings settings;
    settings.jobs = default_jobs();
    const auto r = maxwell_bloch::rabi_scaling_fit(ns, rabi_params(100), kKick, settings);
    const double rel = std::abs(r.fit.slope - kG) / kG;
    return {rel <= 0.02 && r.fit.r_squared >= 0.999,
            fmt("slope %.4f vs g %.1f (rel %.4f, limit 0.02), r^2 %.6f (limit 0.999)", r.fit.slope, kG, rel,
                r.fit.r_squared)};
}

Outcome hopfield() {
    const auto mid = spectrum::hopfield_coefficients(0.0, kG * 10.0);
    const auto scan = spectrum::spectrum_scan(kG * 10.0, -50.0 * kG * 10.0, 50.0 * kG * 10.0, 1001);
    double worst = 0.0;
    for (const auto& pt : scan) worst = std::max(worst, std::abs(pt.photon_fraction_lp + pt.nuclear_fraction_lp - 1.0));
    const bool exact = mid.photon_lp == 0.5 && mid.nuclear_lp == 0.5 && scan[500].photon_fraction_lp == 0.5;
    return {exact && worst <= 1e-12,
            fmt("|C|^2 = %.17g, |X|^2 = %.17g at resonance; max sum-rule residue %.2e over 1001 points", mid.photon_lp,
                mid.nuclear_lp, worst)};
}

Outcome matrix_oracle() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-2000.0, 2000.0), pos(0.0, 2000.0), time(0.0, 1e-2);
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        ModelParams p;
        p.omega1 = u(rng);
        p.omega2 = u(rng);
        p.omega_vuv = u(rng);
        p.e_nuc = u(rng);
        p.g = pos(rng);
        p.fwm_u = pos(rng);
        p.pump_amp = pos(rng);
        p.pump_center = time(rng);
        p.pump_width = 1e-4 + time(rng);
        p.n_nuclei = 1 + static_cast<long>(pos(rng));
        const double t = time(rng);
        const lindblad::HamiltonianOptions opts{draw % 2 == 0, true};
        const auto a = lindblad::build_hamiltonian_explicit(p, t, opts);
        const auto b = lindblad::build_hamiltonian_operators(p, t, opts);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-12, fmt("max entrywise difference %.2e over 100 draws (limit 1e-12)", worst)};
}

Outcome master_hygiene() {
    ModelParams p = rabi_params(100);
    p.fwm_u = 1000.0;
    p.kappa1 = 10.0;
    p.kappa2 = 10.0;
    p.pump_amp = 300.0;
    p.pump_center = 2e-3;
    p.pump_width = 5e-4;
    const lindblad::HamiltonianOptions hopts{true, true};
    const auto rho0 = lindblad::DensityMatrix::basis_state(lindblad::kBasisDim, 0);
    lindblad::MasterOptions mopts;
    mopts.n_samples = 2001;
    const auto trace = lindblad::integrate_master(p, rho0, lindblad::model_collapse_operators(p, hopts), 0.0, 2e-2,
                                                  hopts, mopts);
    double tr = 0.0, herm = 0.0, lowest = 1.0;
    for (const auto& rho : trace.values) {
        tr = std::max(tr, std::abs(rho.trace() - 1.0));
        herm = std::max(herm, rho.hermiticity_residue());
        lowest = std::min(lowest, rho.min_eigenvalue());
    }
    return {tr <= 1e-9 && herm <= 1e-10 && lowest >= -1e-8,
            fmt("%.0f samples: max |Tr-1| %.2e, Hermiticity residue %.2e, min eigenvalue %.2e",
                static_cast<double>(trace.size()), tr, herm, lowest)};
}

Outcome superradiant_law() {
    superradiance::Protocol proto;
    std::vector<long> ns;
    for (long n = 50; n <= 500; n += 50) ns.push_back(n);
    const auto runs = parallel_map(ns, default_jobs(), [&](long n) { return superradiance::run_protocol(proto, n, 5e4); });
    std::vector<double> x, y;
    for (const auto& r : runs) {
        x.push_back(static_cast<double>(r.n));
        y.push_back(r.burst.i_max);
    }
    const auto fit = superradiance::peak_scaling_fit(x, y);
    const double g1 = runs.back().burst.g1_at_peak;
    return {std::abs(fit.exponent - 2.0) <= 0.1 && g1 >= 0.9,
            fmt("exponent %.4f (2.0 +- 0.1), r^2 %.6f, g1 at N=500 burst peak %.4f (>= 0.9)", fit.exponent,
                fit.r_squared, g1)};
}

Outcome lifetime() {
    const std::vector<double> kappas{2e4, 4e4, 6e4, 8e4, 1e5};
    superradiance::Protocol proto;
    proto.jobs = default_jobs();
    const auto a = superradiance::lifetime_vs_kappa(kG, 100, kappas, proto);
    const auto b = superradiance::lifetime_vs_kappa(kG, 200, kappas, proto);
    return {a.fit.r_squared >= 0.99 && b.fit.r_squared >= 0.99 && b.fit.slope < a.fit.slope,
            fmt("N=100: slope %.4e r^2 %.6f; N=200: slope %.4e r^2 %.6f", a.fit.slope, a.fit.r_squared, b.fit.slope,
                b.fit.r_squared)};
}

Outcome landau_zener() {
    const double omega = kG * 10.0, delta0 = 50.0 * omega;
    const auto slow = sweep::SweepProtocol::from_lz(30.0, omega, delta0);
    const auto fast = sweep::SweepProtocol::from_lz(0.1, omega, delta0);
    const auto slow_obs = sweep::observables(sweep::integrate_sweep(slow), slow);
    const auto fast_obs = sweep::observables(sweep::integrate_sweep(fast), fast);
    const double p_nuc = slow_obs.values.back().p_nuclear;
    const double p_ph = fast_obs.values.back().p_photon;
    const double beat = sweep::beating_frequency(fast_obs, 3.0 / fast.rate_k, 5.0 / fast.rate_k);
    const double rel = std::abs(beat - delta0) / delta0;
    return {p_nuc >= 0.99 && p_ph >= 0.5 && rel <= 0.05,
            fmt("Gamma=30: P_nuc %.5f (>= 0.99); Gamma=0.1: P_photon %.4f (>= 0.5), beating/Delta0 - 1 = %.4f (|.| <= 0.05)",
                p_nuc, p_ph, beat / delta0 - 1.0)};
}

Outcome jump_scaling() {
    const double omega = kG * 10.0, delta0 = 50.0 * omega;
    std::vector<double> ks;
    for (int i = 0; i <= 8; ++i) {
        // diabatic side of the crossing, Gamma_LZ from 1e-2 down to 1e-4
        const double gamma_lz = 1e-2 * std::pow(10.0, -2.0 * i / 8.0);
        ks.push_back(sweep::SweepProtocol::from_lz(gamma_lz, omega, delta0).rate_k);
    }
    const auto scan = sweep::jump_time_scan(omega, delta0, ks, {}, default_jobs());
    return {std::abs(scan.fit.exponent + 1.0) <= 0.05,
            fmt("log-log slope %.4f over k in [%.4g, %.4g] (-1.00 +- 0.05), r^2 %.6f", scan.fit.exponent, ks.front(),
                ks.back(), scan.fit.r_squared)};
}

Outcome phase_crossover() {
    const auto working = phase_diagram::classify(rabi_params(100));
    const long n = 400;
    const double boundary = 4.0 * kG * std::sqrt(static_cast<double>(n)) - kGamma;
    bool below_ok = false, above_ok = false;
    double omega_below = 0.0;
    try {
        omega_below = maxwell_bloch::run_rabi(rabi_params(n, 0.5 * boundary), kKick).omega_rabi;
        below_ok = true;
    } catch (const OverdampedError&) {
    }
    try {
        maxwell_bloch::run_rabi(rabi_params(n, 2.0 * boundary), kKick);
    } catch (const OverdampedError&) {
        above_ok = true;
    }
    const bool strong = working.regime == phase_diagram::Regime::strong;
    return {strong && below_ok && above_ok,
            std::string("working point ") + std::string(phase_diagram::regime_name(working.regime)) +
                fmt("; N=400 boundary kappa %.1f, Omega_R at kappa/2 %.1f", boundary, omega_below) +
                "; oscillatory below: " + (below_ok ? "yes" : "no") + ", overdamped at 2x: " + (above_ok ? "yes" : "no")};
}

Outcome linearized_limit() {
    ModelParams p;
    p.g = kG;
    p.n_nuclei = 100;
    const double omega = kG * 10.0;
    const double t_end = 10.0 * 2.0 * std::numbers::pi / omega;
    maxwell_bloch::MbeOptions opts;
    opts.freeze_inversion = true;
    opts.tol = {1e-11, 1e-13};
    opts.n_samples = 4001;
    maxwell_bloch::MeanFieldState init;
    init.alpha = 1.0;
    const auto trace = maxwell_bloch::integrate_mbe(p, maxwell_bloch::DriveProfile::off(), 0.0, t_end, init, opts);
    double worst = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double t = trace.t[i];
        const std::complex<double> alpha = std::cos(omega * t);
        const std::complex<double> pol{0.0, -std::sin(omega * t) / 10.0};
        const auto& s = trace.values[i];
        worst = std::max({worst, std::abs(s.alpha - alpha), std::abs(s.polarization - pol) * 10.0});
    }
    return {worst <= 1e-6, fmt("max deviation %.2e relative to |alpha0| over 10 periods (limit 1e-6)", worst)};
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "coupling value", 1e-3, coupling_value},
        {2, "sqrt(N) Rabi scaling", 30.0, rabi_scaling},
        {3, "Hopfield resonance and sum rule", 1.0, hopfield},
        {4, "11-state matrix oracle", 1.0, matrix_oracle},
        {5, "master-equation hygiene", 60.0, master_hygiene},
        {6, "superradiant N^2 law", 600.0, superradiant_law},
        {7, "lifetime tunability", 600.0, lifetime},
        {8, "Landau-Zener regimes", 10.0, landau_zener},
        {9, "jump-time scaling", 60.0, jump_scaling},
        {10, "phase classification and crossover", 120.0, phase_crossover},
        {11, "linearized-limit equivalence", 5.0, linearized_limit},
    };

    // Optional arguments select criteria by number.
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

    int failures = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome out{false, ""};
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("error: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = elapsed <= c.budget_s;
        const bool pass = out.ok && in_time;
        if (!pass) ++failures;
        std::printf("[%s] criterion %2d  %-36s %s; runtime %.3g s (limit %g s%s)\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, out.detail.c_str(), elapsed, c.budget_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
