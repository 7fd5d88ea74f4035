#include "nucpol/model_params.hpp"

#include <cmath>

#include "nucpol/errors.hpp"

namespace nucpol {

namespace {

void require(bool ok, const char* field, const char* condition) {
    if (!ok) throw InvalidArgument(std::string("ModelParams.") + field + " must be " + condition);
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

void ModelParams::validate() const {
    require(finite(omega1) && finite(omega2) && finite(omega_vuv) && finite(e_nuc), "mode energies",
            "finite");
    require(finite(g) && g >= 0.0, "g", ">= 0");
    require(finite(fwm_u) && fwm_u >= 0.0, "fwm_u", ">= 0");
    require(finite(pump_amp) && pump_amp >= 0.0, "pump_amp", ">= 0");
    require(finite(pump_center), "pump_center", "finite");
    require(finite(pump_width) && pump_width > 0.0, "pump_width", "> 0");
    require(finite(kappa1) && kappa1 >= 0.0, "kappa1", ">= 0");
    require(finite(kappa2) && kappa2 >= 0.0, "kappa2", ">= 0");
    require(finite(kappa_vuv) && kappa_vuv >= 0.0, "kappa_vuv", ">= 0");
    require(finite(gamma_minus) && gamma_minus >= 0.0, "gamma_minus", ">= 0");
    require(n_nuclei >= 1, "n_nuclei", ">= 1");
}

double ModelParams::fwm_mismatch() const { return std::abs(2.0 * omega1 - omega2 - omega_vuv); }

double ModelParams::pump_envelope(double t) const {
    const double x = (t - pump_center) / pump_width;
    return pump_amp * std::exp(-0.5 * x * x);
}

} // namespace nucpol
