#include "nucpol/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Core>

#include "nucpol/errors.hpp"
#include "nucpol/parallel.hpp"
#include "nucpol/signal.hpp"
#include "nucpol/spectrum.hpp"

namespace nucpol::sweep {

double SweepProtocol::detuning(double t) const { return delta0 * std::tanh(rate_k * t); }

double SweepProtocol::lz_parameter() const {
    return std::numbers::pi * omega * omega / (rate_k * std::abs(delta0));
}

void SweepProtocol::validate() const {
    if (!(rate_k > 0.0) || !std::isfinite(rate_k)) throw InvalidArgument("SweepProtocol.rate_k must be > 0");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw InvalidArgument("SweepProtocol.omega must be >= 0");
    if (!std::isfinite(delta0) || delta0 == 0.0) throw InvalidArgument("SweepProtocol.delta0 must be non-zero");
    if (std::abs(delta0) < 3.0 * omega)
        throw InvalidArgument("SweepProtocol: |delta0|/omega must be >= 3 (far-detuned sweep)");
    if (t_end != 0.0 && !(t_end > t_start())) throw InvalidArgument("SweepProtocol.t_end must follow t_start");
}

std::vector<std::string> SweepProtocol::warnings() const {
    std::vector<std::string> w;
    if (std::abs(delta0) < 10.0 * omega)
        w.push_back("|delta0|/omega = " + std::to_string(std::abs(delta0) / omega) +
                    " < 10: the sweep does not start far detuned");
    return w;
}

SweepProtocol SweepProtocol::from_lz(double gamma_lz, double omega, double delta0) {
    if (!(gamma_lz > 0.0)) throw InvalidArgument("SweepProtocol::from_lz: gamma_lz must be > 0");
    SweepProtocol p;
    p.delta0 = delta0;
    p.omega = omega;
    p.rate_k = std::numbers::pi * omega * omega / (gamma_lz * std::abs(delta0));
    return p;
}

TimeSeries<SweepState> integrate_sweep(const SweepProtocol& proto, const SweepOptions& opts,
                                       const SweepState& initial) {
    proto.validate();
    if (opts.n_samples < 2) throw InvalidArgument("integrate_sweep: need at least two samples");
    const double norm0 = initial.norm();
    if (!(norm0 > 0.0)) throw InvalidArgument("integrate_sweep: zero initial state");

    // Integrated in the frame co-rotating with the photon energy,
    // c_C = e^{−iφ(t)} b_C with φ = ∫Δ dt, so the right-hand side scales with Ω
    // rather than Δ₀.
    const double t0 = proto.t_start(), t1 = proto.end_time();
    auto log_cosh = [](double x) {
        const double a = std::abs(x);
        return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
    };
    const double phase0 = log_cosh(proto.rate_k * t0);
    auto phase = [&](double t) { return proto.delta0 / proto.rate_k * (log_cosh(proto.rate_k * t) - phase0); };

    using Vec = Eigen::Vector2cd;
    const cplx mi{0.0, -1.0};
    auto rhs = [&](double t, const Vec& y, Vec& dy) {
        const cplx rot = std::polar(1.0, phase(t));
        dy[0] = mi * proto.omega * rot * y[1];
        dy[1] = mi * proto.omega * std::conj(rot) * y[0];
    };

    const auto grid = ode::uniform_grid(t0, t1, opts.n_samples);
    ode::Options ode_opts;
    ode_opts.tol = opts.tol;

    TimeSeries<SweepState> out;
    out.reserve(grid.size());
    ode::integrate(rhs, Vec(initial.c_photon, initial.c_nuclear), t0, t1, grid, ode_opts,
                   [&](double t, const Vec& y) {
                       SweepState s{std::polar(1.0, -phase(t)) * y[0], y[1]};
                       const double drift = std::abs(s.norm() - norm0);
                       if (drift > opts.norm_tolerance)
                           throw NormError("integrate_sweep: norm drifted by " + std::to_string(drift), t);
                       out.push_back(t, s);
                   });
    out.metadata["model"] = "sweep";
    out.metadata["rate_k"] = std::to_string(proto.rate_k);
    out.metadata["gamma_lz"] = std::to_string(proto.lz_parameter());
    return out;
}

namespace {

// Real eigenvector of [[Δ, Ω], [Ω, 0]] for eigenvalue e, first component >= 0.
// (Ω, e − Δ) and (e, Ω) are both eigenvectors; the longer one is used so the
// Ω → 0 limit stays defined.
std::pair<double, double> branch_vector(double delta, double omega, double e) {
    double x = omega, y = e - delta;
    if (std::hypot(e, omega) > std::hypot(x, y)) {
        x = e;
        y = omega;
    }
    const double n = std::hypot(x, y);
    x /= n;
    y /= n;
    if (x < 0.0 || (x == 0.0 && y < 0.0)) {
        x = -x;
        y = -y;
    }
    return {x, y};
}

} // namespace

BranchPopulations project_polariton(const SweepState& state, const SweepProtocol& proto, double t) {
    const double delta = proto.detuning(t);
    const auto e = spectrum::polariton_energies(delta, proto.omega);
    const auto [ux, uy] = branch_vector(delta, proto.omega, e.upper);
    const auto [lx, ly] = branch_vector(delta, proto.omega, e.lower);
    return {std::norm(ux * state.c_photon + uy * state.c_nuclear), std::norm(lx * state.c_photon + ly * state.c_nuclear)};
}

TimeSeries<SweepSample> observables(const TimeSeries<SweepState>& trace, const SweepProtocol& proto) {
    TimeSeries<SweepSample> out;
    out.metadata = trace.metadata;
    out.reserve(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double t = trace.t[i];
        const auto& s = trace.values[i];
        const auto b = project_polariton(s, proto, t);
        out.push_back(t, {proto.detuning(t), std::norm(s.c_photon), std::norm(s.c_nuclear), b.p_up, b.p_lp});
    }
    return out;
}

double jump_time(const TimeSeries<double>& p_up) {
    const std::size_t n = p_up.size();
    if (n < 40) throw InvalidArgument("jump_time: need at least 40 samples");
    const std::size_t edge = std::max<std::size_t>(1, n / 20);
    const auto& v = p_up.values;
    const double early = std::accumulate(v.begin(), v.begin() + static_cast<long>(edge), 0.0) / static_cast<double>(edge);
    const double late = std::accumulate(v.end() - static_cast<long>(edge), v.end(), 0.0) / static_cast<double>(edge);
    const double jump = late - early;
    if (std::abs(jump) < 0.01)
        throw NoJumpError("jump_time: P_UP changes by " + std::to_string(jump) + " (< 0.01), no transition");

    const auto t10 = signal::first_crossing(p_up.t, v, early + 0.1 * jump);
    const auto t90 = signal::first_crossing(p_up.t, v, early + 0.9 * jump);
    if (!t10 || !t90 || *t90 < *t10) throw NoJumpError("jump_time: P_UP does not cross the 10% and 90% levels in order");
    return *t90 - *t10;
}

double beating_frequency(const TimeSeries<SweepSample>& samples, double from, double to) {
    std::vector<double> t, y;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples.t[i] < from || samples.t[i] > to) continue;
        t.push_back(samples.t[i]);
        y.push_back(samples.values[i].p_photon);
    }
    const auto peaks = signal::local_maxima(t, y);
    if (peaks.size() < 3) throw OverdampedError("beating_frequency: fewer than three maxima in the window");
    const double spacing = (peaks.back().time - peaks.front().time) / static_cast<double>(peaks.size() - 1);
    return 2.0 * std::numbers::pi / spacing;
}

JumpScan jump_time_scan(double omega, double delta0, std::span<const double> rates_k, const SweepOptions& opts,
                        std::size_t jobs) {
    const std::vector<double> ks(rates_k.begin(), rates_k.end());
    JumpScan scan;
    scan.points = parallel_map(ks, jobs, [&](double k) {
        SweepProtocol proto{delta0, k, omega, 0.0};
        const auto trace = integrate_sweep(proto, opts);
        const auto obs = observables(trace, proto);
        const auto p_up = obs.map([](const SweepSample& s) { return s.p_up; });
        return JumpPoint{k, proto.lz_parameter(), jump_time(p_up), obs.values.back().p_nuclear};
    });
    std::vector<double> x, y;
    for (const auto& p : scan.points) {
        x.push_back(p.rate_k);
        y.push_back(p.tau_jump);
    }
    scan.fit = fit::power_law(x, y);
    return scan;
}

} // namespace nucpol::sweep
