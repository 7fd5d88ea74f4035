#include "nucpol/superradiance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "nucpol/errors.hpp"
#include "nucpol/parallel.hpp"
#include "nucpol/signal.hpp"

namespace nucpol::superradiance {

namespace {

using CMatrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Banded right-hand side of the Dicke master equation. cm[a] = ⟨a|J₊|a−1⟩,
// cu[a] = ⟨a+1|J₊|a⟩ (zero off the ladder), occ[a] = ⟨a|J₊J₋|a⟩.
class DickeRhs {
public:
    DickeRhs(const EffectiveModel& model, const DickeSpace& space) : model_(model), d_(static_cast<long>(space.dim())) {
        const auto& c = space.ladder();
        cm_.assign(d_, 0.0);
        cu_.assign(d_, 0.0);
        occ_.assign(d_, 0.0);
        m_.resize(d_);
        for (long a = 0; a < d_; ++a) {
            if (a > 0) cm_[a] = c[a - 1];
            if (a + 1 < d_) cu_[a] = c[a];
            occ_[a] = cm_[a] * cm_[a];
            m_[a] = space.m(static_cast<std::size_t>(a));
        }
    }

    void operator()(double t, const CMatrix& rho, CMatrix& drho) const {
        const double drive = model_.drive(t);
        const double delta = model_.detuning;
        const double gamma = model_.gamma_eff;
        const cplx mi{0.0, -1.0};
        const cplx* r = rho.data();
        cplx* out = drho.data();
        const long d = d_;
        for (long b = 0; b < d; ++b) {
            const cplx* col = r + b * d;
            const cplx* left = b > 0 ? r + (b - 1) * d : nullptr;
            const cplx* right = b + 1 < d ? r + (b + 1) * d : nullptr;
            for (long a = 0; a < d; ++a) {
                cplx comm = 0.0;
                if (a > 0) comm += cm_[a] * col[a - 1];
                if (a + 1 < d) comm += cu_[a] * col[a + 1];
                if (left) comm -= cm_[b] * left[a];
                if (right) comm -= cu_[b] * right[a];
                cplx v = mi * (drive * comm + delta * (m_[a] - m_[b]) * col[a]);
                cplx diss = -0.5 * (occ_[a] + occ_[b]) * col[a];
                if (right && a + 1 < d) diss += cu_[a] * cu_[b] * right[a + 1];
                out[a + b * d] = v + gamma * diss;
            }
        }
    }

    double occupation(long a) const { return occ_[a]; }
    double raising(long a) const { return cu_[a]; }
    double m(long a) const { return m_[a]; }

private:
    const EffectiveModel& model_;
    long d_;
    std::vector<double> cm_, cu_, occ_, m_;
};

EmissionSample observe(const DickeRhs& rhs, const CMatrix& rho, double gamma_eff) {
    const long d = rho.rows();
    double jpjm = 0.0, jz = 0.0;
    cplx jm = 0.0;
    for (long a = 0; a < d; ++a) {
        const double p = rho(a, a).real();
        jpjm += rhs.occupation(a) * p;
        jz += rhs.m(a) * p;
        // Tr(J₋ρ) = Σ ⟨a|J₋|a+1⟩ ρ(a+1, a)
        if (a + 1 < d) jm += rhs.raising(a) * rho(a + 1, a);
    }
    const double g1 = jpjm > 1e-12 ? std::abs(jm) / std::sqrt(jpjm) : 0.0;
    return {gamma_eff * jpjm, g1, jz};
}

void check_state(const CMatrix& rho, double t, bool eigen_check, const SimulationOptions& opts) {
    const double drift = std::abs(rho.trace() - 1.0);
    if (drift > opts.trace_tolerance)
        throw TraceError("simulate_superradiance: trace drifted by " + std::to_string(drift), t);
    if (!eigen_check) return;
    const CMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    const double lowest = es.eigenvalues().minCoeff();
    if (lowest < -opts.positivity_tolerance)
        throw PositivityError("simulate_superradiance: eigenvalue " + std::to_string(lowest), t);
}

} // namespace

DickeSpace::DickeSpace(long n_nuclei) : n_(n_nuclei) {
    if (n_nuclei < 1) throw InvalidArgument("DickeSpace: n_nuclei must be >= 1");
    ladder_.resize(static_cast<std::size_t>(n_));
    for (std::size_t k = 0; k < ladder_.size(); ++k) {
        const double mk = m(k);
        ladder_[k] = std::sqrt((j() - mk) * (j() + mk + 1.0));
    }
}

Eigen::MatrixXd DickeSpace::j_plus() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index k = 0; k + 1 < d; ++k) jp(k + 1, k) = ladder_[static_cast<std::size_t>(k)];
    return jp;
}

Eigen::MatrixXd DickeSpace::j_minus() const { return j_plus().transpose(); }

Eigen::MatrixXd DickeSpace::j_z() const {
    Eigen::VectorXd diag(static_cast<Eigen::Index>(dim()));
    for (std::size_t k = 0; k < dim(); ++k) diag[static_cast<Eigen::Index>(k)] = m(k);
    return diag.asDiagonal();
}

EffectiveModel build_effective_model(const ModelParams& p, const DriveProfile& pump) {
    p.validate();
    pump.validate();
    if (!(p.kappa_vuv > 0.0)) throw InvalidArgument("build_effective_model: kappa_vuv must be > 0");
    EffectiveModel m;
    m.drive_coupling = 2.0 * p.g * p.fwm_u / p.kappa_vuv;
    m.gamma_eff = p.gamma_minus + 4.0 * p.g * p.g / p.kappa_vuv;
    m.detuning = p.e_nuc;
    m.pump_envelope = pump;
    const double collective = p.g * std::sqrt(static_cast<double>(p.n_nuclei));
    m.bad_cavity_ratio = collective > 0.0 ? p.kappa_vuv / collective : std::numeric_limits<double>::infinity();
    if (m.bad_cavity_ratio < 10.0)
        m.warnings.push_back("kappa_vuv/(g*sqrt(N)) = " + std::to_string(m.bad_cavity_ratio) +
                             " < 10: the cavity is not in the bad-cavity limit");
    return m;
}

double pump_amplitude_for_rotation(double rotation, double drive_coupling, double width) {
    if (!(drive_coupling > 0.0) || !(width > 0.0))
        throw InvalidArgument("pump_amplitude_for_rotation: drive coupling and width must be > 0");
    return rotation / (2.0 * drive_coupling * width * std::sqrt(2.0 * std::numbers::pi));
}

TimeSeries<EmissionSample> simulate_superradiance(const EffectiveModel& model, const DickeSpace& space, double t0,
                                                  double t1, const SimulationOptions& opts) {
    if (!(t1 > t0)) throw InvalidArgument("simulate_superradiance: need t1 > t0");
    if (opts.n_samples < 2) throw InvalidArgument("simulate_superradiance: need at least two samples");
    if (!(model.gamma_eff >= 0.0)) throw InvalidArgument("simulate_superradiance: gamma_eff must be >= 0");
    model.pump_envelope.validate();

    const long d = static_cast<long>(space.dim());
    CMatrix rho = CMatrix::Zero(d, d);
    if (opts.start_inverted)
        rho(d - 1, d - 1) = 1.0;
    else
        rho(0, 0) = 1.0;

    DickeRhs rhs(model, space);
    const auto grid = ode::uniform_grid(t0, t1, opts.n_samples);
    TimeSeries<EmissionSample> out;
    out.reserve(grid.size());
    const std::size_t stride = std::max<std::size_t>(opts.positivity_stride, 1);

    auto store = [&](double t, const CMatrix& state) {
        const std::size_t i = out.size();
        check_state(state, t, i % stride == 0 || i + 1 == grid.size(), opts);
        out.push_back(t, observe(rhs, state, model.gamma_eff));
    };

    ode::Options ode_opts;
    ode_opts.tol = opts.tol;
    ode_opts.min_step = opts.min_step;

    // While the pump is on the step is capped at half its width; afterwards
    // the step is free.
    const bool pulsed = model.pump_envelope.kind == maxwell_bloch::DriveKind::gaussian && model.drive_coupling != 0.0;
    const double split = pulsed ? std::clamp(model.pump_envelope.switch_off_time(), t0, t1) : t0;

    try {
        auto first_tail = grid.begin();
        if (split > t0) {
            first_tail = std::upper_bound(grid.begin(), grid.end(), split);
            std::vector<double> head(grid.begin(), first_tail);
            if (head.empty() || head.back() != split) head.push_back(split);
            ode::Options pulse_opts = ode_opts;
            pulse_opts.max_step = 0.5 * model.pump_envelope.width;
            const std::size_t keep = static_cast<std::size_t>(first_tail - grid.begin());
            std::size_t seen = 0;
            ode::integrate(rhs, rho, t0, split, head, pulse_opts, [&](double t, const CMatrix& state) {
                if (seen < keep) store(t, state);
                if (seen + 1 == head.size()) rho = state;
                ++seen;
            });
        }
        if (split < t1) {
            std::vector<double> tail(first_tail, grid.end());
            ode::integrate(rhs, rho, split, t1, tail, ode_opts, store);
        }
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string(e.what()) + "; the run is stiff for N = " + std::to_string(space.n_nuclei()) +
                                   ", shorten the time span or relax the tolerance",
                               e.time());
    }

    out.metadata["model"] = "dicke";
    out.metadata["n_nuclei"] = std::to_string(space.n_nuclei());
    out.metadata["gamma_eff"] = std::to_string(model.gamma_eff);
    return out;
}

BurstAnalysis analyze_burst(const TimeSeries<EmissionSample>& trace, double switch_off, std::size_t min_samples) {
    std::vector<double> intensity(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) intensity[i] = trace.values[i].intensity;

    const std::size_t first = signal::lower_index(trace.t, switch_off);
    const auto peaks = signal::local_maxima(trace.t, intensity, first);
    if (peaks.empty()) throw ResolutionError("analyze_burst: no intensity maximum after the pump switch-off");
    const auto peak = *std::max_element(peaks.begin(), peaks.end(),
                                        [](const auto& x, const auto& y) { return x.value < y.value; });

    const double half = 0.5 * peak.value;
    const std::span<const double> ts(trace.t), ys(intensity);
    const auto rise = signal::last_crossing(ts.first(peak.index + 1), ys.first(peak.index + 1), half, first);
    const auto fall = signal::first_crossing(ts, ys, half, peak.index);
    if (!rise || !fall)
        throw ResolutionError("analyze_burst: the post-pump pulse does not cross half maximum on both sides");

    BurstAnalysis b;
    b.i_max = peak.value;
    b.t_burst = peak.time;
    b.tau_eff = *fall - *rise;
    b.g1_at_peak = trace.values[peak.index].g1;
    b.samples_across_fwhm = signal::lower_index(trace.t, *fall) - signal::lower_index(trace.t, *rise);
    if (b.samples_across_fwhm < min_samples)
        throw ResolutionError("analyze_burst: only " + std::to_string(b.samples_across_fwhm) +
                              " samples across the FWHM, need " + std::to_string(min_samples));
    return b;
}

fit::PowerLawFit peak_scaling_fit(std::span<const double> n, std::span<const double> i_max) {
    if (n.size() != i_max.size()) throw InvalidArgument("peak_scaling_fit: N and I_max lengths differ");
    const std::set<double> distinct(n.begin(), n.end());
    if (distinct.size() < 5) throw DegenerateError("peak_scaling_fit: need at least 5 distinct N");
    if (*distinct.rbegin() < 4.0 * *distinct.begin())
        throw DegenerateError("peak_scaling_fit: N values must span at least a factor of 4");
    return fit::power_law(n, i_max);
}

fit::PowerLawFit peak_scaling_fit(const std::map<long, TimeSeries<EmissionSample>>& runs, double switch_off) {
    std::vector<double> n, i_max;
    for (const auto& [count, trace] : runs) {
        n.push_back(static_cast<double>(count));
        try {
            i_max.push_back(analyze_burst(trace, switch_off, 0).i_max);
        } catch (const ResolutionError& e) {
            throw ResolutionError("peak_scaling_fit: N = " + std::to_string(count) + ": " + e.what());
        }
    }
    return peak_scaling_fit(n, i_max);
}

Run run_protocol(const Protocol& protocol, long n, double kappa) {
    ModelParams p;
    p.g = protocol.g;
    p.fwm_u = protocol.fwm_u;
    p.gamma_minus = protocol.gamma_minus;
    p.kappa_vuv = kappa;
    p.e_nuc = protocol.detuning;
    p.n_nuclei = n;

    const double center = protocol.pump_delay * protocol.pump_width;
    auto model = build_effective_model(p, DriveProfile::off());
    const double eta0 = pump_amplitude_for_rotation(protocol.rotation, model.drive_coupling, protocol.pump_width);
    model.pump_envelope = DriveProfile::gaussian(eta0, center, protocol.pump_width);

    const double switch_off = model.pump_envelope.switch_off_time();
    const double collective_rate = static_cast<double>(n) * model.gamma_eff;
    const double t_end = switch_off + protocol.burst_windows / collective_rate;

    const DickeSpace space(n);
    Run run{n, kappa, model, switch_off, simulate_superradiance(model, space, 0.0, t_end, protocol.sim), {}};
    run.trace.metadata["kappa_vuv"] = std::to_string(kappa);
    run.burst = analyze_burst(run.trace, switch_off);
    return run;
}

LifetimeScan lifetime_vs_kappa(double g, long n, std::span<const double> kappa_values, const Protocol& protocol) {
    if (kappa_values.size() < 2) throw DegenerateError("lifetime_vs_kappa: need at least two kappa values");
    Protocol proto = protocol;
    proto.g = g;
    const std::vector<double> kappas(kappa_values.begin(), kappa_values.end());
    const auto runs = parallel_map(kappas, protocol.jobs, [&](double kappa) { return run_protocol(proto, n, kappa); });

    LifetimeScan scan;
    scan.n = n;
    std::vector<double> x, y;
    for (const auto& r : runs) {
        scan.points.push_back({r.kappa, r.burst.tau_eff});
        x.push_back(r.kappa);
        y.push_back(r.burst.tau_eff);
    }
    scan.fit = fit::linear(x, y);
    scan.fitted_constant = scan.fit.slope * static_cast<double>(n) * g * g;
    return scan;
}

} // namespace nucpol::superradiance
