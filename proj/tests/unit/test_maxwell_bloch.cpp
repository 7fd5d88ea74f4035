#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "nucpol/errors.hpp"
#include "nucpol/maxwell_bloch.hpp"

using namespace nucpol;
using namespace nucpol::maxwell_bloch;

namespace {

ModelParams params(double g, long n, double kappa, double gamma) {
    ModelParams p;
    p.g = g;
    p.n_nuclei = n;
    p.kappa_vuv = kappa;
    p.gamma_minus = gamma;
    return p;
}

} // namespace

TEST_CASE("frozen inversion with losses matches the matrix exponential") {
    // (α, P) obey a constant linear system once Z = −1
    const double g = 5.0, kappa = 40.0, gamma = 6.0;
    const long n = 9;
    const auto p = params(g, n, kappa, gamma);
    MbeOptions opts;
    opts.freeze_inversion = true;
    opts.tol = {1e-11, 1e-13};
    opts.n_samples = 51;
    MeanFieldState init;
    init.alpha = {0.3, -0.2};
    init.polarization = {0.0, 0.1};
    const auto trace = integrate_mbe(p, DriveProfile::off(), 0.0, 0.5, init, opts);

    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix2cd a;
    a << -kappa / 2.0, -i * double(n) * g, -i * g, -gamma / 2.0;
    Eigen::Vector2cd y0(init.alpha, init.polarization);
    double worst = 0.0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const Eigen::Matrix2cd m = (a * trace.t[k]).exp();
        const Eigen::Vector2cd y = m * y0;
        worst = std::max(worst, std::abs(trace.values[k].alpha - y(0)));
        worst = std::max(worst, std::abs(trace.values[k].polarization - y(1)));
        CHECK(trace.values[k].inversion == -1.0);
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("lossless dynamics stays inside the Bloch sphere and conserves excitations") {
    // N|α|² + N(Z+1)/2 is a constant of motion without losses or drive
    const auto p = params(20.0, 50, 0.0, 0.0);
    MbeOptions opts;
    opts.tol = {1e-11, 1e-13};
    MeanFieldState init;
    init.alpha = {1.5, 0.0};
    const auto trace = integrate_mbe(p, DriveProfile::off(), 0.0, 0.1, init, opts);
    const double n = 50.0;
    const double c0 = std::norm(init.alpha) + n * (init.inversion + 1.0) / 2.0;
    for (const auto& s : trace.values) {
        CHECK(s.bloch_excess() < 1e-8);
        CHECK(std::norm(s.alpha) + n * (s.inversion + 1.0) / 2.0 == doctest::Approx(c0).epsilon(1e-8));
    }
}

TEST_CASE("drive profiles") {
    const auto gsn = DriveProfile::gaussian(2.0, 1.0, 0.5);
    CHECK(gsn(1.0).real() == doctest::Approx(2.0));
    CHECK(gsn(1.5).real() == doctest::Approx(2.0 * std::exp(-0.5)));
    CHECK(std::abs(DriveProfile::off()(3.0)) == 0.0);
    CHECK(DriveProfile::constant(4.0)(100.0).real() == 4.0);
    CHECK(gsn.switch_off_time() > 1.0);
    CHECK_THROWS(DriveProfile::gaussian(1.0, 0.0, 0.0).validate());
}

TEST_CASE("cavity alone relaxes to the driven steady state") {
    // α̇ = E − κα/2 with no nuclei coupled: α → 2E/κ
    auto p = params(0.0, 1, 100.0, 1.0);
    MbeOptions opts;
    opts.n_samples = 11;
    const auto trace = integrate_mbe(p, DriveProfile::constant(5.0), 0.0, 1.0, MeanFieldState::ground(), opts);
    CHECK(trace.values.back().alpha.real() == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("frequency extraction on a synthetic cos^2 trace") {
    TimeSeries<double> tr;
    const double w = 123.0;
    for (int i = 0; i < 4000; ++i) {
        const double t = 1e-4 * i;
        tr.push_back(t, std::exp(-2.0 * t) * std::pow(std::cos(w * t), 2));
    }
    CHECK(extract_rabi_frequency(tr) == doctest::Approx(w).epsilon(1e-4));

    TimeSeries<double> flat;
    for (int i = 0; i < 100; ++i) flat.push_back(i, std::exp(-0.1 * i));
    CHECK_THROWS_AS(extract_rabi_frequency(flat), OverdampedError);
}

TEST_CASE("kicked run recovers g sqrt(N) in the strong-coupling regime") {
    const auto p = params(106.8, 400, 1000.0, 1.0 / 1740.0);
    const auto run = run_rabi(p, DriveProfile::gaussian(40.0, 5e-4, 1e-4));
    CHECK(run.omega_rabi == doctest::Approx(106.8 * 20.0).epsilon(0.02));
    const auto sim = simulate_rabi(p, DriveProfile::gaussian(40.0, 5e-4, 1e-4));
    CHECK(std::isnan(sim.omega_rabi));
    CHECK(sim.discard_until == run.discard_until);
}

TEST_CASE("at N = 100 the ringing follows the damped normal-mode frequency") {
    // linear modes of the lossy (α, P) pair ring at sqrt(Ng² − (κ − γ)²/16)
    const double g = 106.8, kappa = 1000.0, gamma = 1.0 / 1740.0;
    const auto run = run_rabi(params(g, 100, kappa, gamma), DriveProfile::gaussian(40.0, 5e-4, 1e-4));
    const double damped = std::sqrt(100.0 * g * g - std::pow(kappa - gamma, 2) / 16.0);
    CHECK(run.omega_rabi == doctest::Approx(damped).epsilon(5e-3));
    // so the undamped g√N is missed by about 3%
    CHECK(std::abs(run.omega_rabi / (g * 10.0) - 1.0) > 0.02);
}

TEST_CASE("overdamped run is reported, and the scan needs four N") {
    const auto p = params(10.0, 100, 1e5, 1.0);
    CHECK_THROWS_AS(run_rabi(p, DriveProfile::gaussian(40.0, 5e-4, 1e-4)), OverdampedError);
    const std::vector<long> three{100, 200, 300};
    CHECK_THROWS_AS(rabi_scaling_fit(three, params(106.8, 1, 1000.0, 1e-3), DriveProfile::gaussian(40.0, 5e-4, 1e-4)),
                    DegenerateError);
}
