#include "nucpol/coupling.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nucpol/errors.hpp"
#include "nucpol/units.hpp"

namespace nucpol::coupling {

using namespace nucpol::constants;

NuclearTransition NuclearTransition::thorium229(double effective_mode_volume) {
    return {148.3821e-9, 1740.0, effective_mode_volume};
}

void NuclearTransition::validate() const {
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw InvalidArgument("NuclearTransition.wavelength must be > 0");
    if (!(vacuum_lifetime > 0.0) || !std::isfinite(vacuum_lifetime))
        throw InvalidArgument("NuclearTransition.vacuum_lifetime must be > 0");
    if (!(effective_mode_volume > 0.0) || !std::isfinite(effective_mode_volume))
        throw InvalidArgument("NuclearTransition.effective_mode_volume must be > 0");
    const double w = angular_frequency();
    if (!std::isfinite(w) || !(w > 0.0)) throw InvalidArgument("NuclearTransition: angular frequency not finite");
}

double NuclearTransition::angular_frequency() const { return two_pi * speed_of_light / wavelength; }

double NuclearTransition::vacuum_decay_rate() const { return 1.0 / vacuum_lifetime; }

double dipole_moment_from_lifetime(const NuclearTransition& t) {
    t.validate();
    const double w = t.angular_frequency();
    const double c3 = speed_of_light * speed_of_light * speed_of_light;
    return std::sqrt(3.0 * std::numbers::pi * hbar * c3 * t.vacuum_decay_rate() /
                     (vacuum_permeability * w * w * w));
}

double vacuum_field(const NuclearTransition& t) {
    t.validate();
    return std::sqrt(vacuum_permeability * hbar * t.angular_frequency() / (2.0 * t.effective_mode_volume));
}

double coupling_strength(const NuclearTransition& t) {
    t.validate();
    const double w = t.angular_frequency();
    const double c3 = speed_of_light * speed_of_light * speed_of_light;
    return std::sqrt(3.0 * std::numbers::pi * c3 * t.vacuum_decay_rate() / (2.0 * w * w * t.effective_mode_volume));
}

DerivedCoupling derive(const NuclearTransition& t) {
    return {coupling_strength(t), dipole_moment_from_lifetime(t), vacuum_field(t)};
}

CollectiveRates collective_rates(double g, double n, double kappa_vuv, double gamma_minus,
                                 std::optional<SweepSettings> sweep) {
    if (!(g >= 0.0) || !(n >= 0.0)) throw InvalidArgument("collective_rates: g and N must be >= 0");
    if (!(kappa_vuv > 0.0)) throw InvalidArgument("collective_rates: kappa_vuv must be > 0");
    if (!(gamma_minus > 0.0)) throw InvalidArgument("collective_rates: gamma_minus must be > 0");

    CollectiveRates r;
    const double ng2 = n * g * g;
    r.omega_collective = g * std::sqrt(n);
    r.gamma_eff = gamma_minus + 4.0 * ng2 / kappa_vuv;
    r.cooperativity = ng2 / (kappa_vuv * gamma_minus);
    r.tau_eff_estimate = ng2 > 0.0 ? kappa_vuv / (4.0 * ng2) : std::numeric_limits<double>::infinity();
    if (sweep) {
        if (!(sweep->delta0 > 0.0) || !(sweep->rate_k > 0.0))
            throw InvalidArgument("collective_rates: sweep needs delta0 > 0 and k > 0");
        r.lz_parameter = std::numbers::pi * r.omega_collective * r.omega_collective / (sweep->rate_k * sweep->delta0);
    }
    return r;
}

CollectiveRates collective_rates(const ModelParams& p, std::optional<SweepSettings> sweep) {
    p.validate();
    return collective_rates(p.g, static_cast<double>(p.n_nuclei), p.kappa_vuv, p.gamma_minus, sweep);
}

} // namespace nucpol::coupling
