// ode.hpp — adaptive Dormand-Prince 5(4) integrator with 4th-order dense output
//
// State is any dense Eigen object (vector or matrix, real or complex). The
// right-hand side writes into a preallocated derivative:
//
//     rhs(t, y, dydt)
//
// Samples are delivered to an observer at caller-chosen times through the
// continuous extension, so the step size is decoupled from the output grid.
// Observers may throw to abort the integration.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nucpol/errors.hpp"

namespace nucpol::ode {

struct Tolerance {
    double rtol = 1e-8;
    double atol = 1e-10;
};

struct Options {
    Tolerance tol{};
    double initial_step = 0.0;  // 0 selects a step from the local derivative
    double max_step = 0.0;      // 0 means unbounded
    double min_step = 0.0;      // failure floor; 0 uses the round-off limit
    std::size_t max_steps = 100'000'000;
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

// Uniform grid of n points covering [t0, t1] inclusive.
inline std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = t0;
        return grid;
    }
    const double dt = (t1 - t0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid[i] = t0 + dt * static_cast<double>(i);
    grid.back() = t1;
    return grid;
}

namespace detail {

// Dormand & Prince (1980) coefficients; dense output after Hairer, Norsett & Wanner.
struct Dopri5Tableau {
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

template <class State>
double error_norm(const State& err, const State& y0, const State& y1, const Tolerance& tol) {
    const auto scale = (tol.atol + tol.rtol * y0.array().abs().max(y1.array().abs())).eval();
    const double sum = (err.array().abs() / scale).square().sum();
    return std::sqrt(sum / static_cast<double>(err.size()));
}

} // namespace detail

// Integrates from t0 to t1 (t1 > t0) and calls observer(t, y) at every time in
// `samples` (ascending, inside [t0, t1]). Returns step statistics.
template <class State, class Rhs, class Observer>
Stats integrate(Rhs&& rhs, State y, double t0, double t1, std::span<const double> samples,
                const Options& opts, Observer&& observer) {
    using T = detail::Dopri5Tableau;
    if (!(t1 > t0)) throw InvalidArgument("ode::integrate requires t1 > t0");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i] < samples[i - 1]) throw InvalidArgument("sample times must be ascending");
    if (!samples.empty() && (samples.front() < t0 || samples.back() > t1))
        throw InvalidArgument("sample times must lie inside the integration span");

    Stats stats;
    std::size_t next_sample = 0;
    while (next_sample < samples.size() && samples[next_sample] <= t0) {
        observer(samples[next_sample], y);
        ++next_sample;
    }

    State k1 = State::Zero(y.rows(), y.cols());
    State k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1, k7 = k1;
    State y_stage = k1, y_new = k1, err = k1;
    State r2 = k1, r3 = k1, r4 = k1, r5 = k1;

    const double span = t1 - t0;
    const double max_step = opts.max_step > 0.0 ? std::min(opts.max_step, span) : span;
    const double min_step = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t0), std::abs(t1));
    const double step_floor = std::max(min_step, opts.min_step);

    double t = t0;
    rhs(t, y, k1);
    ++stats.rhs_evaluations;

    double h = opts.initial_step;
    if (h <= 0.0) {
        // Scaled-norm heuristic: first step moves y by ~1% of its own size.
        const auto scale = (opts.tol.atol + opts.tol.rtol * y.array().abs()).eval();
        const double d0 = std::sqrt((y.array().abs() / scale).square().mean());
        const double d1 = std::sqrt((k1.array().abs() / scale).square().mean());
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
        h = std::clamp(h, 1e-12 * span, 0.01 * span);
    }
    h = std::min(h, max_step);

    bool last_rejected = false;
    while (t < t1) {
        if (stats.accepted + stats.rejected >= opts.max_steps)
            throw ConvergenceError("ode: step budget exhausted", t);
        if (h < step_floor) throw ConvergenceError("ode: step size fell below the floor at requested tolerance", t);
        if (t + h > t1) h = t1 - t;

        y_stage = y + h * T::a21 * k1;
        rhs(t + T::c2 * h, y_stage, k2);
        y_stage = y + h * (T::a31 * k1 + T::a32 * k2);
        rhs(t + T::c3 * h, y_stage, k3);
        y_stage = y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3);
        rhs(t + T::c4 * h, y_stage, k4);
        y_stage = y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4);
        rhs(t + T::c5 * h, y_stage, k5);
        y_stage = y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5);
        rhs(t + h, y_stage, k6);
        y_new = y + h * (T::a71 * k1 + T::a73 * k3 + T::a74 * k4 + T::a75 * k5 + T::a76 * k6);
        rhs(t + h, y_new, k7);
        stats.rhs_evaluations += 6;

        err = h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
        const double e = detail::error_norm(err, y, y_new, opts.tol);
        if (!std::isfinite(e)) {
            if (h <= step_floor) throw ConvergenceError("ode: non-finite state", t);
            h *= 0.1;
            last_rejected = true;
            ++stats.rejected;
            continue;
        }

        if (e <= 1.0) {
            const double t_new = t + h;
            if (next_sample < samples.size() && samples[next_sample] <= t_new) {
                r2 = y_new - y;
                r3 = h * k1 - r2;
                r4 = r2 - h * k7 - r3;
                r5 = h * (T::d1 * k1 + T::d3 * k3 + T::d4 * k4 + T::d5 * k5 + T::d6 * k6 + T::d7 * k7);
                while (next_sample < samples.size() && samples[next_sample] <= t_new) {
                    const double ts = samples[next_sample];
                    if (ts == t_new) {
                        observer(ts, y_new);
                    } else {
                        const double theta = (ts - t) / h;
                        const double theta1 = 1.0 - theta;
                        y_stage = y + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
                        observer(ts, y_stage);
                    }
                    ++next_sample;
                }
            }
            t = (t_new >= t1 || t1 - t_new < min_step) ? t1 : t_new;
            y.swap(y_new);
            k1.swap(k7);
            ++stats.accepted;

            double factor = 0.9 * std::pow(std::max(e, 1e-10), -0.2);
            factor = std::clamp(factor, 0.2, 10.0);
            if (last_rejected) factor = std::min(factor, 1.0);
            h = std::min(h * factor, max_step);
            last_rejected = false;
        } else {
            ++stats.rejected;
            h *= std::max(0.2, 0.9 * std::pow(e, -0.2));
            last_rejected = true;
        }
    }
    while (next_sample < samples.size()) {
        observer(samples[next_sample], y);
        ++next_sample;
    }
    return stats;
}

} // namespace nucpol::ode
