#include "nucpol/spectrum.hpp"

#include <cmath>

#include "nucpol/errors.hpp"

namespace nucpol::spectrum {

BranchEnergies polariton_energies(double delta, double omega) {
    if (!(omega >= 0.0)) throw InvalidArgument("polariton_energies: omega must be >= 0");
    const double root = std::hypot(delta, 2.0 * omega);
    return {0.5 * (delta + root), 0.5 * (delta - root)};
}

HopfieldFractions hopfield_coefficients(double delta, double omega) {
    if (!(omega >= 0.0)) throw InvalidArgument("hopfield_coefficients: omega must be >= 0");
    if (delta == 0.0 && omega == 0.0)
        throw DegenerateError("hopfield_coefficients: delta = omega = 0 has no unique eigenbasis");
    const double ratio = delta / std::hypot(delta, 2.0 * omega);
    const double c_lp = 0.5 * (1.0 - ratio);
    const double x_lp = 0.5 * (1.0 + ratio);
    return {c_lp, x_lp, x_lp, c_lp};
}

std::vector<PolaritonPoint> spectrum_scan(double omega, double lo, double hi, int n_points) {
    if (n_points < 2) throw InvalidArgument("spectrum_scan: n_points must be >= 2");
    if (!(lo < hi)) throw InvalidArgument("spectrum_scan: need lo < hi");
    std::vector<PolaritonPoint> out;
    out.reserve(static_cast<std::size_t>(n_points));
    const double step = (hi - lo) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        // symmetric grids hit 0 exactly at the centre
        const double delta = (i == n_points - 1) ? hi : lo + step * i;
        const double d = (std::abs(delta) < 1e-14 * (std::abs(lo) + std::abs(hi))) ? 0.0 : delta;
        const auto e = polariton_energies(d, omega);
        const auto f = hopfield_coefficients(d, omega);
        out.push_back({d, e.upper, e.lower, f.photon_lp, f.nuclear_lp});
    }
    return out;
}

} // namespace nucpol::spectrum
