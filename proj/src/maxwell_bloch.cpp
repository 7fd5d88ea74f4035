#include "nucpol/maxwell_bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include <Eigen/Core>

#include "nucpol/errors.hpp"
#include "nucpol/parallel.hpp"
#include "nucpol/signal.hpp"

namespace nucpol::maxwell_bloch {

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;

Vec5 pack(const MeanFieldState& s) {
    Vec5 v;
    v << s.alpha.real(), s.alpha.imag(), s.polarization.real(), s.polarization.imag(), s.inversion;
    return v;
}

MeanFieldState unpack(const Vec5& v) { return {{v[0], v[1]}, {v[2], v[3]}, v[4]}; }

} // namespace

double MeanFieldState::bloch_excess() const {
    return std::max({std::abs(polarization) - 1.0, std::abs(inversion) - 1.0, 0.0});
}

void DriveProfile::validate() const {
    if (kind == DriveKind::gaussian && !(width > 0.0)) throw InvalidArgument("DriveProfile: gaussian width must be > 0");
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
        throw InvalidArgument("DriveProfile: amplitude must be finite");
}

cplx DriveProfile::operator()(double t) const {
    switch (kind) {
    case DriveKind::off:
        return {};
    case DriveKind::constant:
        return amplitude;
    case DriveKind::gaussian: {
        const double x = (t - center) / width;
        return amplitude * std::exp(-0.5 * x * x);
    }
    }
    return {};
}

double DriveProfile::switch_off_time() const {
    switch (kind) {
    case DriveKind::off:
        return -std::numeric_limits<double>::infinity();
    case DriveKind::constant:
        return std::numeric_limits<double>::infinity();
    case DriveKind::gaussian:
        return center + 5.0 * width;
    }
    return 0.0;
}

TimeSeries<MeanFieldState> integrate_mbe(const ModelParams& p, const DriveProfile& drive, double t0, double t1,
                                         const MeanFieldState& init, const MbeOptions& opts) {
    p.validate();
    drive.validate();
    if (!(t1 > t0)) throw InvalidArgument("integrate_mbe: need t1 > t0");
    if (opts.n_samples < 2) throw InvalidArgument("integrate_mbe: need at least two samples");

    const double n = static_cast<double>(p.n_nuclei);
    const double g = p.g, half_kappa = 0.5 * p.kappa_vuv, gamma = p.gamma_minus;
    const bool frozen = opts.freeze_inversion;
    const cplx i_unit{0.0, 1.0};

    auto rhs = [&](double t, const Vec5& y, Vec5& dy) {
        const cplx alpha{y[0], y[1]}, pol{y[2], y[3]};
        const double z = y[4];
        const cplx d_alpha = drive(t) - half_kappa * alpha - i_unit * (n * g) * pol;
        const cplx d_pol = -0.5 * gamma * pol + i_unit * g * alpha * z;
        dy[0] = d_alpha.real();
        dy[1] = d_alpha.imag();
        dy[2] = d_pol.real();
        dy[3] = d_pol.imag();
        dy[4] = frozen ? 0.0 : -gamma * (z + 1.0) - 4.0 * g * std::imag(std::conj(alpha) * pol);
    };

    ode::Options ode_opts;
    ode_opts.tol = opts.tol;
    if (drive.kind == DriveKind::gaussian) ode_opts.max_step = 0.5 * drive.width;

    const auto grid = ode::uniform_grid(t0, t1, opts.n_samples);
    TimeSeries<MeanFieldState> out;
    out.reserve(grid.size());
    ode::integrate(rhs, pack(init), t0, t1, grid, ode_opts,
                   [&](double t, const Vec5& y) { out.push_back(t, unpack(y)); });

    out.metadata["model"] = "maxwell_bloch";
    out.metadata["n_nuclei"] = std::to_string(p.n_nuclei);
    out.metadata["rtol"] = std::to_string(opts.tol.rtol);
    out.metadata["atol"] = std::to_string(opts.tol.atol);
    return out;
}

TimeSeries<double> intensity(const TimeSeries<MeanFieldState>& trace) {
    return trace.map([](const MeanFieldState& s) { return std::norm(s.alpha); });
}

double extract_rabi_frequency(const TimeSeries<double>& trace, double discard_until) {
    const std::size_t first = signal::lower_index(trace.t, discard_until);
    double peak_value = 0.0;
    for (std::size_t i = first; i < trace.size(); ++i) peak_value = std::max(peak_value, trace.values[i]);
    const auto peaks = signal::local_maxima(trace.t, trace.values, first, 1e-10 * peak_value);
    if (peaks.size() < 3)
        throw OverdampedError("extract_rabi_frequency: " + std::to_string(peaks.size()) +
                              " maxima after the transient, need 3 (overdamped or too short a run)");
    const double spacing = (peaks.back().time - peaks.front().time) / static_cast<double>(peaks.size() - 1);
    // |α|² repeats every half amplitude period
    return std::numbers::pi / spacing;
}

RabiRun simulate_rabi(const ModelParams& p, const DriveProfile& drive, const RabiRunSettings& settings) {
    const double omega = p.g * std::sqrt(static_cast<double>(p.n_nuclei));
    if (!(omega > 0.0)) throw InvalidArgument("run_rabi: g*sqrt(N) must be > 0");
    const double kick_end = std::max(0.0, drive.kind == DriveKind::gaussian ? drive.switch_off_time() : 0.0);
    const double intensity_period = std::numbers::pi / omega;
    const double t_end = settings.t_end > 0.0 ? settings.t_end : kick_end + settings.periods * intensity_period;

    MbeOptions mbe = settings.mbe;
    const double dt = intensity_period / static_cast<double>(settings.samples_per_period);
    mbe.n_samples = std::max<std::size_t>(mbe.n_samples, static_cast<std::size_t>(std::ceil(t_end / dt)) + 1);

    RabiRun run;
    run.trace = integrate_mbe(p, drive, 0.0, t_end, MeanFieldState::ground(), mbe);
    run.discard_until = kick_end;
    run.omega_rabi = std::numeric_limits<double>::quiet_NaN();
    return run;
}

RabiRun run_rabi(const ModelParams& p, const DriveProfile& drive, const RabiRunSettings& settings) {
    auto run = simulate_rabi(p, drive, settings);
    run.omega_rabi = extract_rabi_frequency(intensity(run.trace), run.discard_until);
    return run;
}

RabiScaling rabi_scaling_fit(std::span<const long> n_values, const ModelParams& p, const DriveProfile& drive,
                             const RabiRunSettings& settings) {
    const std::set<long> distinct(n_values.begin(), n_values.end());
    if (distinct.size() < 4) throw DegenerateError("rabi_scaling_fit: need at least 4 distinct N values");

    const std::vector<long> ns(n_values.begin(), n_values.end());
    struct Outcome {
        bool ok;
        RabiPoint point;
        std::string error;
    };
    const auto outcomes = parallel_map(ns, settings.jobs, [&](long n) -> Outcome {
        ModelParams q = p;
        q.n_nuclei = n;
        try {
            const auto run = run_rabi(q, drive, settings);
            return {true, {n, std::sqrt(static_cast<double>(n)), run.omega_rabi}, {}};
        } catch (const OverdampedError& e) {
            return {false, {n, std::sqrt(static_cast<double>(n)), 0.0}, e.what()};
        }
    });

    RabiScaling out;
    std::string failures;
    for (const auto& o : outcomes) {
        if (o.ok)
            out.points.push_back(o.point);
        else
            failures += " N=" + std::to_string(o.point.n) + ": " + o.error + ";";
    }
    std::set<long> usable;
    for (const auto& pt : out.points) usable.insert(pt.n);
    if (usable.size() < 4) throw OverdampedError("rabi_scaling_fit: fewer than 4 usable points;" + failures);

    std::vector<double> x, y;
    for (const auto& pt : out.points) {
        x.push_back(pt.sqrt_n);
        y.push_back(pt.omega_rabi);
    }
    out.fit = fit::linear(x, y);
    return out;
}

} // namespace nucpol::maxwell_bloch
