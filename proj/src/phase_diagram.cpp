#include "nucpol/phase_diagram.hpp"

#include <cmath>

#include "nucpol/errors.hpp"

namespace nucpol::phase_diagram {

std::string_view regime_name(Regime r) {
    switch (r) {
    case Regime::weak:
        return "weak";
    case Regime::collective:
        return "collective";
    case Regime::strong:
        return "strong";
    }
    return "?";
}

PhasePoint classify(double g, double n, double kappa_vuv, double gamma_minus) {
    if (!(gamma_minus > 0.0)) throw InvalidArgument("classify: gamma_minus must be > 0 (cooperativity undefined)");
    if (!(g >= 0.0) || !(n >= 0.0) || !(kappa_vuv >= 0.0))
        throw InvalidArgument("classify: g, N and kappa_vuv must be >= 0");
    const double sqrt_n = std::sqrt(n);
    const double loss = kappa_vuv + gamma_minus;
    PhasePoint pt;
    pt.kappa_vuv = kappa_vuv;
    pt.sqrt_n = sqrt_n;
    pt.margin_sc = (4.0 * g * sqrt_n - loss) / loss;
    pt.margin_coop = n * g * g / (kappa_vuv * gamma_minus) - 1.0;
    if (pt.margin_sc > 0.0)
        pt.regime = Regime::strong;
    else if (pt.margin_coop > 0.0)
        pt.regime = Regime::collective;
    else
        pt.regime = Regime::weak;
    return pt;
}

PhasePoint classify(const ModelParams& p) {
    p.validate();
    return classify(p.g, static_cast<double>(p.n_nuclei), p.kappa_vuv, p.gamma_minus);
}

namespace {

void add_crossing(std::vector<BoundaryPoint>& out, const PhasePoint& a, const PhasePoint& b, double ma, double mb) {
    if ((ma > 0.0) == (mb > 0.0)) return;
    const double f = ma / (ma - mb);
    const double la = std::log(a.kappa_vuv), lb = std::log(b.kappa_vuv);
    out.push_back({a.sqrt_n, std::exp(la + f * (lb - la))});
}

} // namespace

PhaseGrid grid_scan(const Range& kappa, const Range& sqrt_n, const ModelParams& base, bool snap_to_integer) {
    if (kappa.n < 2 || !(kappa.lo > 0.0) || !(kappa.hi > kappa.lo))
        throw InvalidArgument("grid_scan: kappa range needs 0 < lo < hi and n >= 2");
    if (sqrt_n.n < 1 || !(sqrt_n.lo >= 0.0) || !(sqrt_n.hi >= sqrt_n.lo))
        throw InvalidArgument("grid_scan: sqrt_n range needs 0 <= lo <= hi and n >= 1");

    const double log_lo = std::log(kappa.lo), log_hi = std::log(kappa.hi);
    std::vector<double> kappas(kappa.n);
    for (std::size_t i = 0; i < kappa.n; ++i)
        kappas[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(kappa.n - 1));
    kappas.front() = kappa.lo;
    kappas.back() = kappa.hi;

    PhaseGrid grid;
    grid.points.reserve(kappa.n * sqrt_n.n);
    for (std::size_t j = 0; j < sqrt_n.n; ++j) {
        const double s = sqrt_n.n == 1 ? sqrt_n.lo
                                       : sqrt_n.lo + (sqrt_n.hi - sqrt_n.lo) * static_cast<double>(j) /
                                                         static_cast<double>(sqrt_n.n - 1);
        double n = s * s;
        if (snap_to_integer) n = std::max(1.0, std::round(n));
        const std::size_t row = grid.points.size();
        for (double k : kappas) grid.points.push_back(classify(base.g, n, k, base.gamma_minus));
        for (std::size_t i = 0; i + 1 < kappa.n; ++i) {
            const auto& a = grid.points[row + i];
            const auto& b = grid.points[row + i + 1];
            add_crossing(grid.strong_boundary, a, b, a.margin_sc, b.margin_sc);
            add_crossing(grid.cooperativity_boundary, a, b, a.margin_coop, b.margin_coop);
        }
    }
    return grid;
}

} // namespace nucpol::phase_diagram
