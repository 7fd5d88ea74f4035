#pragma once

#include <span>

namespace nucpol::fit {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Throws DegenerateError
// when fewer than two points are given or all x coincide.
LinearFit linear(std::span<const double> x, std::span<const double> y);

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;  // of the log-log regression
};

// y = prefactor * x^exponent via least squares on (ln x, ln y). All inputs
// must be strictly positive.
PowerLawFit power_law(std::span<const double> x, std::span<const double> y);

} // namespace nucpol::fit
