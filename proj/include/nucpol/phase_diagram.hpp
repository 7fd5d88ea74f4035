// phase_diagram.hpp — weak / collective / strong regimes in the (κ_VUV, √N) plane
//
//   strong      4g√N > κ_VUV + γ₋
//   collective  otherwise, if C = Ng²/(κ_VUV γ₋) > 1
//   weak        otherwise
//
// Equality falls to the lower regime.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "nucpol/model_params.hpp"

namespace nucpol::phase_diagram {

enum class Regime { weak, collective, strong };

std::string_view regime_name(Regime r);

struct PhasePoint {
    double kappa_vuv;
    double sqrt_n;
    Regime regime;
    double margin_sc;    // (4g√N − (κ+γ₋)) / (κ+γ₋)
    double margin_coop;  // C − 1
};

// Throws InvalidArgument when γ₋ = 0.
PhasePoint classify(const ModelParams& p);

// Continuum version: N may be any non-negative real.
PhasePoint classify(double g, double n, double kappa_vuv, double gamma_minus);

struct Range {
    double lo;
    double hi;
    std::size_t n;
};

struct BoundaryPoint {
    double sqrt_n;
    double kappa_vuv;
};

struct PhaseGrid {
    std::vector<PhasePoint> points;  // √N outer, κ inner
    std::vector<BoundaryPoint> strong_boundary;       // margin_sc = 0
    std::vector<BoundaryPoint> cooperativity_boundary;  // margin_coop = 0
};

// κ log-spaced over `kappa`, √N linear over `sqrt_n`; g and γ₋ from `base`.
// Boundaries are sign changes of each margin along κ at fixed √N,
// interpolated linearly in log κ. `snap_to_integer` rounds N to the nearest
// integer (at least 1) before classifying.
PhaseGrid grid_scan(const Range& kappa, const Range& sqrt_n, const ModelParams& base, bool snap_to_integer = false);

} // namespace nucpol::phase_diagram
