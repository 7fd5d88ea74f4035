#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "nucpol/errors.hpp"
#include "nucpol/sweep.hpp"

using namespace nucpol;
using namespace nucpol::sweep;

namespace {

// second-order Magnus stepping in the lab frame
Eigen::Vector2cd magnus(const SweepProtocol& p, int steps) {
    const std::complex<double> i(0.0, 1.0);
    Eigen::Vector2cd psi(1.0, 0.0);
    const double t0 = p.t_start(), h = (p.end_time() - t0) / steps;
    for (int s = 0; s < steps; ++s) {
        const double tm = t0 + (s + 0.5) * h;
        Eigen::Matrix2cd hm;
        hm << p.detuning(tm), p.omega, p.omega, 0.0;
        psi = (Eigen::Matrix2cd(-i * h * hm)).exp() * psi;
    }
    return psi;
}

} // namespace

TEST_CASE("co-rotating integration matches a lab-frame Magnus propagator") {
    for (double gamma : {0.3, 3.0}) {
        const auto p = SweepProtocol::from_lz(gamma, 1.0, 20.0);
        SweepOptions o;
        o.n_samples = 11;
        const auto tr = integrate_sweep(p, o);
        const auto ref = magnus(p, 40000);
        CHECK(std::norm(tr.values.back().c_nuclear) == doctest::Approx(std::norm(ref(1))).epsilon(1e-5));
        CHECK(std::norm(tr.values.back().c_photon) == doctest::Approx(std::norm(ref(0))).epsilon(1e-5));
    }
}

TEST_CASE("norm is conserved and branch populations sum to one") {
    const auto p = SweepProtocol::from_lz(1.0, 1068.0, 53400.0);
    SweepOptions o;
    o.n_samples = 401;
    const auto obs = observables(integrate_sweep(p, o), p);
    for (const auto& s : obs.values) {
        CHECK(s.p_photon + s.p_nuclear == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(s.p_up + s.p_lp == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("adiabatic and diabatic limits") {
    const double omega = 1068.0, delta0 = 50.0 * omega;
    const auto slow = SweepProtocol::from_lz(30.0, omega, delta0);
    const auto end_slow = integrate_sweep(slow).values.back();
    CHECK(std::norm(end_slow.c_nuclear) > 0.99);

    const auto fast = SweepProtocol::from_lz(0.05, omega, delta0);
    const auto obs = observables(integrate_sweep(fast), fast);
    CHECK(obs.values.back().p_photon > 0.8);
    // after resonance the photon population beats at about Δ₀
    const double w = beating_frequency(obs, 3.0 / fast.rate_k, 5.0 / fast.rate_k);
    CHECK(w == doctest::Approx(delta0).epsilon(0.05));
}

TEST_CASE("branch projection at resonance") {
    SweepProtocol p{10.0, 1.0, 2.0, 0.0};
    SweepState photon;
    const auto b = project_polariton(photon, p, 0.0);
    CHECK(b.p_up == doctest::Approx(0.5));
    CHECK(b.p_lp == doctest::Approx(0.5));
    // far below resonance the upper branch is nuclear
    const auto far = project_polariton(photon, p, -20.0);
    CHECK(far.p_lp > 0.95);
}

TEST_CASE("protocol checks") {
    const auto p = SweepProtocol::from_lz(2.0, 3.0, 60.0);
    CHECK(p.lz_parameter() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p.end_time() == doctest::Approx(-p.t_start()));
    CHECK(p.detuning(1e9) == doctest::Approx(60.0));
    CHECK_THROWS_AS((SweepProtocol{20.0, 1.0, 10.0, 0.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS((SweepProtocol{60.0, 0.0, 3.0, 0.0}).validate(), InvalidArgument);
    CHECK((SweepProtocol{60.0, 1.0, 12.0, 0.0}).warnings().size() == 1);
    CHECK((SweepProtocol{60.0, 1.0, 3.0, 0.0}).warnings().empty());
    CHECK_THROWS_AS(SweepProtocol::from_lz(0.0, 1.0, 10.0), InvalidArgument);
}

TEST_CASE("jump time of a tanh step") {
    // 10-90% rise of (1 + tanh(t/w))/2 is 2w·atanh(0.8)
    TimeSeries<double> tr;
    const double w = 0.7;
    for (int i = 0; i <= 4000; ++i) {
        const double t = -20.0 + 0.01 * i;
        tr.push_back(t, 0.5 * (1.0 + std::tanh(t / w)));
    }
    CHECK(jump_time(tr) == doctest::Approx(2.0 * w * std::atanh(0.8)).epsilon(1e-3));

    TimeSeries<double> flat;
    for (int i = 0; i < 100; ++i) flat.push_back(i, 0.3);
    CHECK_THROWS_AS(jump_time(flat), NoJumpError);
}

TEST_CASE("jump time scales as 1/k in the diabatic range") {
    const double omega = 1068.0, delta0 = 50.0 * omega;
    std::vector<double> ks;
    for (double g : {1e-3, 3e-3, 1e-2}) ks.push_back(SweepProtocol::from_lz(g, omega, delta0).rate_k);
    const auto scan = jump_time_scan(omega, delta0, ks);
    CHECK(scan.fit.exponent == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(scan.points.size() == 3);
}
