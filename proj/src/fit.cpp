#include "nucpol/fit.hpp"

#include <cmath>
#include <vector>

#include "nucpol/errors.hpp"

namespace nucpol::fit {

LinearFit linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("linear fit: x and y differ in length");
    if (x.size() < 2) throw DegenerateError("linear fit: need at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 1e-300 * (1.0 + mx * mx))) throw DegenerateError("linear fit: all x values coincide");

    LinearFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (out.slope * x[i] + out.intercept);
        ss_res += r * r;
    }
    out.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return out;
}

PowerLawFit power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("power-law fit: x and y differ in length");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("power-law fit: inputs must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const LinearFit lf = linear(lx, ly);
    return {lf.slope, std::exp(lf.intercept), lf.r_squared};
}

} // namespace nucpol::fit
