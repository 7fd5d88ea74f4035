#include "nucpol/cli/experiments.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>

#include "nucpol/coupling.hpp"
#include "nucpol/errors.hpp"
#include "nucpol/lindblad.hpp"
#include "nucpol/maxwell_bloch.hpp"
#include "nucpol/parallel.hpp"
#include "nucpol/phase_diagram.hpp"
#include "nucpol/spectrum.hpp"
#include "nucpol/superradiance.hpp"
#include "nucpol/sweep.hpp"

namespace nucpol::cli {

namespace {

// ---- model fields -----------------------------------------------------------

enum class FieldKind { rate, time, count };

struct ModelField {
    const char* key;
    FieldKind kind;
    std::function<void(ModelParams&, double)> set;
    std::function<double(const ModelParams&)> get;
};

#define NUCPOL_FIELD(name, kind)                                                      \
    ModelField {                                                                      \
        #name, kind, [](ModelParams& p, double v) { p.name = v; },                    \
            [](const ModelParams& p) { return static_cast<double>(p.name); }          \
    }

const std::vector<ModelField>& model_fields() {
    static const std::vector<ModelField> fields{
        NUCPOL_FIELD(omega1, FieldKind::rate),       NUCPOL_FIELD(omega2, FieldKind::rate),
        NUCPOL_FIELD(omega_vuv, FieldKind::rate),    NUCPOL_FIELD(e_nuc, FieldKind::rate),
        NUCPOL_FIELD(g, FieldKind::rate),            NUCPOL_FIELD(fwm_u, FieldKind::rate),
        NUCPOL_FIELD(pump_amp, FieldKind::rate),     NUCPOL_FIELD(pump_center, FieldKind::time),
        NUCPOL_FIELD(pump_width, FieldKind::time),   NUCPOL_FIELD(kappa1, FieldKind::rate),
        NUCPOL_FIELD(kappa2, FieldKind::rate),       NUCPOL_FIELD(kappa_vuv, FieldKind::rate),
        NUCPOL_FIELD(gamma_minus, FieldKind::rate),
        ModelField{"n_nuclei", FieldKind::count, [](ModelParams& p, double v) { p.n_nuclei = static_cast<long>(v); },
                   [](const ModelParams& p) { return static_cast<double>(p.n_nuclei); }},
    };
    return fields;
}

#undef NUCPOL_FIELD

Json model_json(const ModelParams& p) {
    Json j = Json::object();
    for (const auto& f : model_fields()) {
        if (f.kind == FieldKind::count)
            j[f.key] = p.n_nuclei;
        else
            j[f.key] = f.get(p);
    }
    return j;
}

// Reads [model]. Physical rates have no defaults, so every field the
// experiment uses must be given.
ModelParams read_model(const Config& cfg, RunContext& ctx, const std::vector<std::string>& required) {
    ModelParams p;
    auto load = [&](const std::string& key) {
        for (const auto& f : model_fields()) {
            if (key != f.key) continue;
            if (f.kind == FieldKind::count) {
                f.set(p, static_cast<double>(cfg.integer("model", key)));
            } else {
                const double v = cfg.number("model", key);
                f.set(p, f.kind == FieldKind::rate ? ctx.in(v) : v);
            }
            return;
        }
        throw InvalidArgument("read_model: no model field named " + key);
    };
    for (const auto& k : required) load(k);
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(cfg.origin() + ": [model] " + e.what());
    }
    ctx.parameters["model"] = model_json(p);
    return p;
}

ode::Tolerance read_tolerance(const Config& cfg, ode::Tolerance fallback) {
    ode::Tolerance tol{cfg.number("solver", "rtol", fallback.rtol), cfg.number("solver", "atol", fallback.atol)};
    if (!(tol.rtol > 0.0) || !(tol.atol > 0.0)) throw ConfigError(cfg.origin() + ": solver tolerances must be > 0");
    return tol;
}

std::size_t read_count(const Config& cfg, const std::string& section, const std::string& key, long fallback,
                       long minimum) {
    const long v = cfg.integer(section, key, fallback);
    if (v < minimum)
        throw ConfigError(cfg.origin() + ": '" + section + "." + key + "' must be >= " + std::to_string(minimum));
    return static_cast<std::size_t>(v);
}

maxwell_bloch::DriveProfile read_drive(const Config& cfg, RunContext& ctx) {
    using maxwell_bloch::DriveProfile;
    const std::string kind = cfg.text("drive", "kind");
    DriveProfile d;
    Json j = Json::object();
    j["kind"] = kind;
    if (kind == "off") {
        d = DriveProfile::off();
    } else if (kind == "constant") {
        d = DriveProfile::constant(ctx.in(cfg.number("drive", "amplitude")));
        j["amplitude"] = d.amplitude.real();
    } else if (kind == "gaussian") {
        const double amp = ctx.in(cfg.number("drive", "amplitude"));
        const double center = cfg.number("drive", "center");
        const double width = cfg.number("drive", "width");
        if (!(width > 0.0)) throw ConfigError(cfg.origin() + ": 'drive.width' must be > 0");
        d = DriveProfile::gaussian(amp, center, width);
        j["amplitude"] = amp;
        j["center"] = center;
        j["width"] = width;
    } else {
        throw ConfigError(cfg.origin() + ": 'drive.kind' must be off, constant or gaussian, got '" + kind + "'");
    }
    ctx.parameters["drive"] = j;
    return d;
}

Json power_fit_json(const fit::PowerLawFit& f) {
    return Json{{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"r_squared", f.r_squared}};
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// ---- coupling ---------------------------------------------------------------

void run_coupling(const Config& cfg, RunContext& ctx) {
    coupling::NuclearTransition t;
    t.wavelength = cfg.number("transition", "wavelength");
    t.vacuum_lifetime = cfg.number("transition", "vacuum_lifetime");
    t.effective_mode_volume = cfg.number("transition", "mode_volume");

    const bool ensemble = cfg.has_section("ensemble");
    double n = 0.0, kappa = 0.0, gamma = 0.0;
    std::optional<coupling::SweepSettings> sweep;
    if (ensemble) {
        n = static_cast<double>(cfg.integer("ensemble", "n_nuclei"));
        kappa = ctx.in(cfg.number("ensemble", "kappa_vuv"));
        gamma = ctx.in(cfg.number("ensemble", "gamma_minus"));
        if (cfg.has("ensemble", "delta0") || cfg.has("ensemble", "rate_k"))
            sweep = coupling::SweepSettings{ctx.in(cfg.number("ensemble", "delta0")), cfg.number("ensemble", "rate_k")};
    }
    cfg.reject_unknown();

    try {
        t.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(cfg.origin() + ": [transition] " + e.what());
    }
    ctx.parameters["transition"] = Json{{"wavelength", t.wavelength},
                                        {"vacuum_lifetime", t.vacuum_lifetime},
                                        {"mode_volume", t.effective_mode_volume}};

    const auto d = coupling::derive(t);
    const std::string u(unit_name(ctx.unit));
    CsvTable table({"quantity", "value", "unit"});
    table.add({std::string("g"), ctx.out(d.g), u});
    table.add({std::string("transition_frequency"), ctx.out(t.angular_frequency()), u});
    table.add({std::string("transition_moment"), d.transition_moment, std::string("J/T")});
    table.add({std::string("transition_moment_over_nuclear_magneton"),
               d.transition_moment / constants::nuclear_magneton, std::string("1")});
    table.add({std::string("vacuum_field"), d.vacuum_field, std::string("T")});
    Json summary{{"g", ctx.out(d.g)},
                 {"transition_moment", d.transition_moment},
                 {"vacuum_field", d.vacuum_field},
                 {"unit", u}};

    if (ensemble) {
        ctx.parameters["ensemble"] = Json{{"n_nuclei", n}, {"kappa_vuv", kappa}, {"gamma_minus", gamma}};
        const auto r = coupling::collective_rates(d.g, n, kappa, gamma, sweep);
        table.add({std::string("omega_collective"), ctx.out(r.omega_collective), u});
        table.add({std::string("gamma_eff"), ctx.out(r.gamma_eff), u});
        table.add({std::string("cooperativity"), r.cooperativity, std::string("1")});
        table.add({std::string("tau_eff_estimate"), r.tau_eff_estimate, std::string("s")});
        summary["omega_collective"] = ctx.out(r.omega_collective);
        summary["gamma_eff"] = ctx.out(r.gamma_eff);
        summary["cooperativity"] = r.cooperativity;
        summary["tau_eff_estimate"] = number_or_null(r.tau_eff_estimate);
        if (r.lz_parameter) {
            table.add({std::string("lz_parameter"), *r.lz_parameter, std::string("1")});
            summary["lz_parameter"] = *r.lz_parameter;
        }
    }
    ctx.write_csv(".csv", table);
    ctx.write_json("_summary.json", summary);
    ctx.results["g"] = ctx.out(d.g);
}

// ---- spectrum ---------------------------------------------------------------

void run_spectrum(const Config& cfg, RunContext& ctx) {
    const auto p = read_model(cfg, ctx, {"g", "n_nuclei"});
    const double lo = ctx.in(cfg.number("scan", "delta_min"));
    const double hi = ctx.in(cfg.number("scan", "delta_max"));
    const auto points = read_count(cfg, "scan", "points", 1001, 2);
    cfg.reject_unknown();
    if (!(lo < hi)) throw ConfigError(cfg.origin() + ": need scan.delta_min < scan.delta_max");

    const double omega = p.g * std::sqrt(static_cast<double>(p.n_nuclei));
    const auto scan = spectrum::spectrum_scan(omega, lo, hi, static_cast<int>(points));
    CsvTable table({"delta", "e_upper", "e_lower", "c2_lp", "x2_lp"});
    for (const auto& pt : scan)
        table.add({ctx.out(pt.detuning), ctx.out(pt.e_upper), ctx.out(pt.e_lower), pt.photon_fraction_lp,
                   pt.nuclear_fraction_lp});
    ctx.write_csv(".csv", table);
    ctx.write_json("_summary.json", Json{{"omega", ctx.out(omega)},
                                         {"vacuum_rabi_splitting", ctx.out(2.0 * omega)},
                                         {"points", points},
                                         {"unit", std::string(unit_name(ctx.unit))}});
    ctx.results["vacuum_rabi_splitting"] = ctx.out(2.0 * omega);
}

// ---- rabi -------------------------------------------------------------------

maxwell_bloch::RabiRunSettings read_rabi_settings(const Config& cfg, RunContext& ctx) {
    maxwell_bloch::RabiRunSettings s;
    s.t_end = cfg.number("run", "t_end", 0.0);
    s.periods = cfg.number("run", "periods", s.periods);
    s.samples_per_period = read_count(cfg, "run", "samples_per_period", 64, 8);
    s.mbe.n_samples = read_count(cfg, "run", "min_samples", 2001, 2);
    s.mbe.freeze_inversion = cfg.flag("run", "freeze_inversion", false);
    s.mbe.tol = read_tolerance(cfg, s.mbe.tol);
    s.jobs = ctx.jobs;
    if (!(s.periods > 0.0)) throw ConfigError(cfg.origin() + ": 'run.periods' must be > 0");
    return s;
}

void run_rabi(const Config& cfg, RunContext& ctx) {
    const bool scan = cfg.has("scan", "n_values");
    std::vector<std::string> required{"g", "kappa_vuv", "gamma_minus"};
    if (!scan) required.push_back("n_nuclei");
    const auto p = read_model(cfg, ctx, required);
    const auto drive = read_drive(cfg, ctx);
    std::vector<long> ns;
    if (scan) ns = cfg.integers("scan", "n_values");
    const auto settings = read_rabi_settings(cfg, ctx);
    cfg.reject_unknown();

    if (scan) {
        ctx.parameters["n_values"] = ns;
        const auto r = maxwell_bloch::rabi_scaling_fit(ns, p, drive, settings);
        CsvTable table({"sqrt_n", "omega_rabi"});
        Json points = Json::array();
        for (const auto& pt : r.points) {
            table.add({pt.sqrt_n, ctx.out(pt.omega_rabi)});
            points.push_back(Json{{"n", pt.n}, {"sqrt_n", pt.sqrt_n}, {"omega_rabi", ctx.out(pt.omega_rabi)}});
        }
        ctx.write_csv(".csv", table);
        Json fit{{"slope", ctx.out(r.fit.slope)},
                 {"intercept", ctx.out(r.fit.intercept)},
                 {"r_squared", r.fit.r_squared},
                 {"g_input", ctx.out(p.g)},
                 {"slope_relative_deviation", (r.fit.slope - p.g) / p.g},
                 {"unit", std::string(unit_name(ctx.unit))},
                 {"points", points}};
        ctx.write_json("_fit.json", fit);
        ctx.results["slope"] = ctx.out(r.fit.slope);
        ctx.results["r_squared"] = r.fit.r_squared;
        return;
    }

    const auto run = maxwell_bloch::simulate_rabi(p, drive, settings);
    CsvTable table({"t", "re_alpha", "im_alpha", "abs_alpha_sq", "re_P", "im_P", "Z"});
    for (std::size_t i = 0; i < run.trace.size(); ++i) {
        const auto& s = run.trace.values[i];
        table.add({run.trace.t[i], s.alpha.real(), s.alpha.imag(), std::norm(s.alpha), s.polarization.real(),
                   s.polarization.imag(), s.inversion});
    }
    ctx.write_csv(".csv", table);
    Json summary{{"n", p.n_nuclei}, {"g_sqrt_n", ctx.out(p.g * std::sqrt(static_cast<double>(p.n_nuclei)))}};
    try {
        const double w = maxwell_bloch::extract_rabi_frequency(maxwell_bloch::intensity(run.trace), run.discard_until);
        summary["omega_rabi"] = ctx.out(w);
        summary["overdamped"] = false;
        ctx.results["omega_rabi"] = ctx.out(w);
    } catch (const OverdampedError& e) {
        summary["omega_rabi"] = nullptr;
        summary["overdamped"] = true;
        ctx.warn(e.what());
    }
    summary["unit"] = std::string(unit_name(ctx.unit));
    ctx.write_json("_summary.json", summary);
}

// ---- lindblad11 -------------------------------------------------------------

void run_lindblad11(const Config& cfg, RunContext& ctx) {
    const auto p = read_model(cfg, ctx,
                              {"g", "fwm_u", "pump_amp", "pump_center", "pump_width", "kappa1", "kappa2", "kappa_vuv",
                               "gamma_minus", "n_nuclei", "omega1", "omega2", "omega_vuv", "e_nuc"});
    const double t_end = cfg.number("run", "t_end");
    const auto samples = read_count(cfg, "run", "samples", 1001, 2);
    const std::string initial = cfg.text("run", "initial_state", "0110");
    lindblad::HamiltonianOptions hopts;
    hopts.collective_scaling = cfg.flag("run", "collective_scaling", true);
    lindblad::MasterOptions mopts;
    mopts.tol = read_tolerance(cfg, mopts.tol);
    mopts.n_samples = samples;
    cfg.reject_unknown();

    if (!(t_end > 0.0)) throw ConfigError(cfg.origin() + ": 'run.t_end' must be > 0");
    std::size_t start = lindblad::kBasisDim;
    for (std::size_t k = 0; k < lindblad::kBasisDim; ++k) {
        const auto& b = lindblad::kBasis[k];
        if (initial == std::to_string(b.n1) + std::to_string(b.n2) + std::to_string(b.n_vuv) + std::to_string(b.n_nuc))
            start = k;
    }
    if (start == lindblad::kBasisDim)
        throw ConfigError(cfg.origin() + ": 'run.initial_state' must name one of the 11 basis states, e.g. 0110");
    if (p.fwm_mismatch() > 0.0)
        ctx.warn("four-wave mixing is not energy matched: |2w1 - w2 - w_vuv| = " +
                 std::to_string(ctx.out(p.fwm_mismatch())));
    ctx.parameters["run"] = Json{{"t_end", t_end},
                                 {"samples", samples},
                                 {"initial_state", initial},
                                 {"collective_scaling", hopts.collective_scaling}};

    const auto rho0 = lindblad::DensityMatrix::basis_state(lindblad::kBasisDim, start);
    const auto trace =
        lindblad::integrate_master(p, rho0, lindblad::model_collapse_operators(p, hopts), 0.0, t_end, hopts, mopts);

    std::vector<std::string> header{"t"};
    for (const auto& b : lindblad::kBasis)
        header.push_back("p_" + std::to_string(b.n1) + std::to_string(b.n2) + std::to_string(b.n_vuv) +
                         std::to_string(b.n_nuc));
    for (const char* h : {"n_pump", "n_seed", "n_vuv", "n_nuc", "purity"}) header.push_back(h);
    CsvTable table(header);
    const lindblad::Matrix number[] = {lindblad::number_operator(lindblad::Mode::pump),
                                       lindblad::number_operator(lindblad::Mode::seed),
                                       lindblad::number_operator(lindblad::Mode::vuv),
                                       lindblad::number_operator(lindblad::Mode::nucleus)};
    double drift = 0.0, herm = 0.0, lowest = 1.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& rho = trace.values[i];
        std::vector<Cell> row{trace.t[i]};
        for (std::size_t k = 0; k < lindblad::kBasisDim; ++k) row.emplace_back(rho.population(k));
        for (const auto& n : number) row.emplace_back(lindblad::expectation(rho, n).real());
        row.emplace_back(rho.purity());
        table.add(std::move(row));
        drift = std::max(drift, std::abs(rho.trace() - 1.0));
        herm = std::max(herm, rho.hermiticity_residue());
        lowest = std::min(lowest, rho.min_eigenvalue());
    }
    ctx.write_csv(".csv", table);
    ctx.write_text("_hamiltonian.txt", "basis\n" + lindblad::format_basis() + "\nH(t = pump_center), rad/s\n" +
                                           lindblad::format_matrix(lindblad::build_hamiltonian_explicit(
                                               p, p.pump_center, hopts)));
    Json summary{{"max_trace_drift", drift},
                 {"max_hermiticity_residue", herm},
                 {"min_eigenvalue", lowest},
                 {"fwm_mismatch", ctx.out(p.fwm_mismatch())},
                 {"final_n_vuv", lindblad::expectation(trace.values.back(), number[2]).real()},
                 {"final_n_nuc", lindblad::expectation(trace.values.back(), number[3]).real()}};
    ctx.write_json("_summary.json", summary);
    ctx.results["max_trace_drift"] = drift;
    ctx.results["min_eigenvalue"] = lowest;
}

// ---- superradiance / lifetime -----------------------------------------------

superradiance::Protocol read_protocol(const Config& cfg, RunContext& ctx, const ModelParams& p) {
    superradiance::Protocol proto;
    proto.g = p.g;
    proto.fwm_u = p.fwm_u;
    proto.gamma_minus = p.gamma_minus;
    proto.detuning = p.e_nuc;
    proto.rotation = cfg.number("pump", "rotation_over_pi") * std::numbers::pi;
    proto.pump_width = cfg.number("pump", "width");
    proto.pump_delay = cfg.number("pump", "delay", proto.pump_delay);
    proto.burst_windows = cfg.number("run", "burst_windows", proto.burst_windows);
    proto.sim.n_samples = read_count(cfg, "run", "samples", 2001, 16);
    proto.sim.positivity_stride = read_count(cfg, "run", "positivity_stride", 100, 1);
    proto.sim.tol = read_tolerance(cfg, proto.sim.tol);
    proto.jobs = ctx.jobs;
    if (!(proto.pump_width > 0.0)) throw ConfigError(cfg.origin() + ": 'pump.width' must be > 0");
    if (!(proto.burst_windows > 0.0)) throw ConfigError(cfg.origin() + ": 'run.burst_windows' must be > 0");
    ctx.parameters["protocol"] = Json{{"rotation", proto.rotation},
                                      {"pump_width", proto.pump_width},
                                      {"pump_delay", proto.pump_delay},
                                      {"burst_windows", proto.burst_windows},
                                      {"samples", proto.sim.n_samples}};
    return proto;
}

void run_superradiance(const Config& cfg, RunContext& ctx) {
    const auto p = read_model(cfg, ctx, {"g", "fwm_u", "kappa_vuv", "gamma_minus", "e_nuc"});
    const auto proto = read_protocol(cfg, ctx, p);
    const auto ns = cfg.integers("scan", "n_values");
    cfg.reject_unknown();
    ctx.parameters["n_values"] = ns;

    const auto runs =
        parallel_map(ns, ctx.jobs, [&](long n) { return superradiance::run_protocol(proto, n, p.kappa_vuv); });

    CsvTable summary({"n", "kappa", "i_max", "t_burst", "tau_eff", "g1_at_peak"});
    Json per_run = Json::array();
    std::vector<double> xs, ys;
    for (const auto& r : runs) {
        for (const auto& w : r.model.warnings) ctx.warn("N=" + std::to_string(r.n) + ": " + w);
        CsvTable trace({"t", "intensity", "g1", "jz"});
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            const auto& s = r.trace.values[i];
            trace.add({r.trace.t[i], ctx.out(s.intensity), s.g1, s.jz});
        }
        ctx.write_csv("_N" + std::to_string(r.n) + ".csv", trace);
        summary.add({static_cast<double>(r.n), ctx.out(r.kappa), ctx.out(r.burst.i_max), r.burst.t_burst,
                     r.burst.tau_eff, r.burst.g1_at_peak});
        per_run.push_back(Json{{"N", r.n},
                               {"kappa", ctx.out(r.kappa)},
                               {"i_max", ctx.out(r.burst.i_max)},
                               {"t_burst", r.burst.t_burst},
                               {"tau_eff", r.burst.tau_eff},
                               {"g1_at_peak", r.burst.g1_at_peak}});
        xs.push_back(static_cast<double>(r.n));
        ys.push_back(r.burst.i_max);
    }
    ctx.write_csv(".csv", summary);
    Json doc{{"unit", std::string(unit_name(ctx.unit))}, {"runs", per_run}, {"fit", nullptr}};
    try {
        const auto f = superradiance::peak_scaling_fit(xs, ys);
        doc["fit"] = power_fit_json(f);
        ctx.results["exponent"] = f.exponent;
    } catch (const DegenerateError& e) {
        ctx.log(std::string("no N^2 fit: ") + e.what());
    }
    ctx.write_json("_fit.json", doc);
}

void run_lifetime(const Config& cfg, RunContext& ctx) {
    const auto p = read_model(cfg, ctx, {"g", "fwm_u", "gamma_minus", "e_nuc"});
    const auto proto = read_protocol(cfg, ctx, p);
    const auto ns = cfg.integers("scan", "n_values");
    auto kappas = cfg.numbers("scan", "kappa_values");
    cfg.reject_unknown();
    for (auto& k : kappas) k = ctx.in(k);
    ctx.parameters["n_values"] = ns;
    ctx.parameters["kappa_values"] = kappas;

    CsvTable table({"n", "kappa", "tau_eff"});
    Json scans = Json::array();
    std::vector<double> slopes;
    for (long n : ns) {
        const auto scan = superradiance::lifetime_vs_kappa(p.g, n, kappas, proto);
        for (const auto& pt : scan.points) table.add({static_cast<double>(n), ctx.out(pt.kappa), pt.tau_eff});
        // τ is a time and κ a rate, so the slope picks up the inverse rate unit
        scans.push_back(Json{{"N", n},
                             {"slope", scan.fit.slope / ctx.out(1.0)},
                             {"intercept", scan.fit.intercept},
                             {"r_squared", scan.fit.r_squared},
                             {"fitted_constant_angular", scan.fitted_constant}});
        slopes.push_back(scan.fit.slope);
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < slopes.size(); ++i)
        if (ns[i] > ns[i - 1] && !(slopes[i] < slopes[i - 1])) decreasing = false;
    ctx.write_csv(".csv", table);
    ctx.write_json("_fit.json", Json{{"unit", std::string(unit_name(ctx.unit))},
                                     {"scans", scans},
                                     {"slope_decreases_with_n", decreasing}});
    ctx.results["slope_decreases_with_n"] = decreasing;
}

// ---- sweep ------------------------------------------------------------------

void run_sweep(const Config& cfg, RunContext& ctx) {
    const double delta0 = ctx.in(cfg.number("sweep", "delta0"));
    const double omega = ctx.in(cfg.number("sweep", "omega"));
    std::optional<sweep::SweepProtocol> single;
    if (cfg.has("sweep", "rate_k") && cfg.has("sweep", "gamma_lz"))
        throw ConfigError(cfg.origin() + ": give either sweep.rate_k or sweep.gamma_lz, not both");
    if (cfg.has("sweep", "rate_k"))
        single = sweep::SweepProtocol{delta0, cfg.number("sweep", "rate_k"), omega, 0.0};
    else if (cfg.has("sweep", "gamma_lz"))
        single = sweep::SweepProtocol::from_lz(cfg.number("sweep", "gamma_lz"), omega, delta0);

    std::vector<double> scan_k;
    if (cfg.has("scan", "rate_k_values") && cfg.has("scan", "gamma_lz_values"))
        throw ConfigError(cfg.origin() + ": give either scan.rate_k_values or scan.gamma_lz_values, not both");
    if (cfg.has("scan", "rate_k_values")) scan_k = cfg.numbers("scan", "rate_k_values");
    if (cfg.has("scan", "gamma_lz_values"))
        for (double g : cfg.numbers("scan", "gamma_lz_values"))
            scan_k.push_back(sweep::SweepProtocol::from_lz(g, omega, delta0).rate_k);
    if (!single && scan_k.empty())
        throw ConfigError(cfg.origin() + ": 'sweep.rate_k' (or sweep.gamma_lz) or a [scan] list is required");

    sweep::SweepOptions opts;
    opts.n_samples = read_count(cfg, "run", "samples", 4001, 40);
    opts.tol = read_tolerance(cfg, opts.tol);
    const double beat_from = cfg.number("analysis", "beat_from", 3.0);
    const double beat_to = cfg.number("analysis", "beat_to", 5.0);
    cfg.reject_unknown();

    ctx.parameters["sweep"] = Json{{"delta0", delta0}, {"omega", omega}};
    const sweep::SweepProtocol probe{delta0, single ? single->rate_k : scan_k.front(), omega, 0.0};
    try {
        probe.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(cfg.origin() + ": " + e.what());
    }
    for (const auto& w : probe.warnings()) ctx.warn(w);

    if (single) {
        ctx.parameters["sweep"]["rate_k"] = single->rate_k;
        const auto obs = sweep::observables(sweep::integrate_sweep(*single, opts), *single);
        CsvTable table({"t", "delta", "p_photon", "p_nuclear", "p_up", "p_lp"});
        for (std::size_t i = 0; i < obs.size(); ++i) {
            const auto& s = obs.values[i];
            table.add({obs.t[i], ctx.out(s.delta), s.p_photon, s.p_nuclear, s.p_up, s.p_lp});
        }
        ctx.write_csv(".csv", table);
        Json summary{{"k", single->rate_k},
                     {"gamma_lz", single->lz_parameter()},
                     {"tau_jump", nullptr},
                     {"p_nuclear_final", obs.values.back().p_nuclear},
                     {"p_photon_final", obs.values.back().p_photon},
                     {"beating_frequency", nullptr},
                     {"unit", std::string(unit_name(ctx.unit))}};
        try {
            summary["tau_jump"] = sweep::jump_time(obs.map([](const sweep::SweepSample& s) { return s.p_up; }));
        } catch (const NoJumpError& e) {
            ctx.log(e.what());
        }
        try {
            summary["beating_frequency"] =
                ctx.out(sweep::beating_frequency(obs, beat_from / single->rate_k, beat_to / single->rate_k));
        } catch (const OverdampedError& e) {
            ctx.log(e.what());
        }
        ctx.write_json("_summary.json", summary);
        ctx.results["p_nuclear_final"] = obs.values.back().p_nuclear;
    }

    if (!scan_k.empty()) {
        ctx.parameters["scan_rate_k"] = scan_k;
        const auto scan = sweep::jump_time_scan(omega, delta0, scan_k, opts, ctx.jobs);
        CsvTable table({"k", "gamma_lz", "tau_jump", "p_nuclear_final"});
        Json points = Json::array();
        for (const auto& pt : scan.points) {
            table.add({pt.rate_k, pt.gamma_lz, pt.tau_jump, pt.p_nuclear_final});
            points.push_back(Json{{"k", pt.rate_k},
                                  {"gamma_lz", pt.gamma_lz},
                                  {"tau_jump", pt.tau_jump},
                                  {"p_nuclear_final", pt.p_nuclear_final}});
        }
        ctx.write_csv("_scan.csv", table);
        ctx.write_json("_fit.json", Json{{"fit", power_fit_json(scan.fit)}, {"points", points}});
        ctx.results["jump_exponent"] = scan.fit.exponent;
    }
}

// ---- phase diagram ----------------------------------------------------------

void run_phase_diagram(const Config& cfg, RunContext& ctx) {
    const auto p = read_model(cfg, ctx, {"g", "gamma_minus"});
    const phase_diagram::Range kappa{ctx.in(cfg.number("grid", "kappa_min")), ctx.in(cfg.number("grid", "kappa_max")),
                                     read_count(cfg, "grid", "kappa_points", 200, 2)};
    const phase_diagram::Range sqrt_n{cfg.number("grid", "sqrt_n_min"), cfg.number("grid", "sqrt_n_max"),
                                      read_count(cfg, "grid", "sqrt_n_points", 100, 1)};
    const bool snap = cfg.flag("grid", "snap_to_integer", false);
    cfg.reject_unknown();
    ctx.parameters["grid"] = Json{{"kappa_min", kappa.lo},   {"kappa_max", kappa.hi},   {"kappa_points", kappa.n},
                                  {"sqrt_n_min", sqrt_n.lo}, {"sqrt_n_max", sqrt_n.hi}, {"sqrt_n_points", sqrt_n.n},
                                  {"snap_to_integer", snap}};

    phase_diagram::PhaseGrid grid;
    try {
        grid = phase_diagram::grid_scan(kappa, sqrt_n, p, snap);
    } catch (const InvalidArgument& e) {
        throw ConfigError(cfg.origin() + ": [grid] " + e.what());
    }
    CsvTable table({"kappa", "sqrt_n", "regime", "margin_sc", "margin_coop"});
    std::map<std::string, std::size_t> counts;
    for (const auto& pt : grid.points) {
        const std::string regime(phase_diagram::regime_name(pt.regime));
        table.add({ctx.out(pt.kappa_vuv), pt.sqrt_n, regime, pt.margin_sc, pt.margin_coop});
        ++counts[regime];
    }
    auto polyline = [&](const std::vector<phase_diagram::BoundaryPoint>& pts) {
        Json arr = Json::array();
        for (const auto& b : pts) arr.push_back(Json{{"sqrt_n", b.sqrt_n}, {"kappa", ctx.out(b.kappa_vuv)}});
        return arr;
    };
    ctx.write_csv(".csv", table);
    ctx.write_json("_boundaries.json", Json{{"unit", std::string(unit_name(ctx.unit))},
                                            {"strong_coupling", polyline(grid.strong_boundary)},
                                            {"cooperativity", polyline(grid.cooperativity_boundary)}});
    Json c = Json::object();
    for (const char* r : {"weak", "collective", "strong"}) c[r] = counts[r];
    ctx.results["regime_counts"] = c;
}

using Runner = void (*)(const Config&, RunContext&);

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> table{
        {"coupling", run_coupling},         {"spectrum", run_spectrum},
        {"rabi", run_rabi},                 {"lindblad11", run_lindblad11},
        {"superradiance", run_superradiance}, {"lifetime", run_lifetime},
        {"sweep", run_sweep},               {"phase-diagram", run_phase_diagram},
    };
    return table;
}

} // namespace

const std::vector<ExperimentInfo>& experiments() {
    static const std::vector<ExperimentInfo> list{
        {"coupling", "Fig. 2 (g)", "single-nucleus coupling g from wavelength, lifetime and mode volume"},
        {"spectrum", "Fig. 2e", "polariton branches and Hopfield fractions against detuning"},
        {"rabi", "Fig. 2c", "mean-field Rabi oscillations and the sqrt(N) scaling fit"},
        {"lindblad11", "Fig. 2a,b", "11-state master equation with pump, four-wave mixing and losses"},
        {"superradiance", "Fig. S1", "Dicke-ladder superradiant bursts and the N^2 peak law"},
        {"lifetime", "Fig. S2", "burst width tau_eff against kappa_VUV"},
        {"sweep", "Fig. 4", "tanh detuning sweep, polariton projection and jump times"},
        {"phase-diagram", "Fig. 3", "weak / collective / strong regimes over (kappa_VUV, sqrt(N))"},
    };
    return list;
}

std::string list_experiments() {
    std::size_t width = 0;
    for (const auto& e : experiments()) width = std::max(width, e.name.size() + e.figure.size() + 5);
    std::string out;
    for (const auto& e : experiments()) {
        std::string head = e.name + " → " + e.figure;
        const std::size_t shown = e.name.size() + e.figure.size() + 3;
        out += head + std::string(width - shown, ' ') + e.description + '\n';
    }
    return out;
}

void run_experiment(const std::string& name, const Config& cfg, RunContext& ctx) {
    const auto it = runners().find(name);
    if (it == runners().end()) throw ConfigError("unknown experiment '" + name + "'");
    it->second(cfg, ctx);
}

int run_from_config(const std::string& config_path, const std::string& expected, const RunOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    std::string stage = "configuration";
    try {
        const Config cfg = Config::load(config_path);
        std::string name = expected;
        if (cfg.has("", "experiment")) {
            name = cfg.text("", "experiment");
            if (!expected.empty() && name != expected)
                throw ConfigError(config_path + ": 'experiment' is '" + name + "' but the subcommand is '" + expected +
                                  "'");
        } else if (expected.empty()) {
            throw ConfigError(config_path + ": 'experiment' is required but missing");
        } else {
            cfg.text("", "experiment", expected);
        }
        if (!runners().count(name)) throw ConfigError(config_path + ": unknown experiment '" + name + "'");

        const std::string unit = cfg.text("", "unit");
        RunContext ctx;
        if (unit == "Hz")
            ctx.unit = RateUnit::hertz;
        else if (unit == "rad/s")
            ctx.unit = RateUnit::rad_per_s;
        else
            throw ConfigError(config_path + ": 'unit' must be Hz or rad/s, got '" + unit + "'");
        ctx.stem = cfg.text("", "name", name);
        if (ctx.stem.find('/') != std::string::npos) throw ConfigError(config_path + ": 'name' must not contain '/'");
        ctx.out_dir = opts.out_dir;
        ctx.jobs = opts.jobs.value_or(default_jobs());
        ctx.verbose = opts.verbose;

        stage = name;
        ctx.log("running " + name + " from " + config_path);
        run_experiment(name, cfg, ctx);

        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        Json manifest{{"tool", "nucpol"},
                      {"version", kVersion},
                      {"experiment", name},
                      {"unit", unit},
                      {"config_file", config_path},
                      {"resolved_config", cfg.resolved_text()},
                      {"parameters_rad_per_s", ctx.parameters},
                      {"results", ctx.results},
                      {"warnings", ctx.warnings},
                      {"outputs", ctx.outputs},
                      {"jobs", ctx.jobs},
                      {"wall_clock_seconds", elapsed}};
        ctx.write_json("_manifest.json", manifest);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error in " << stage << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error in " << stage << ": " << e.what() << '\n';
        return 1;
    }
}

} // namespace nucpol::cli
