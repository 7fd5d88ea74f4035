#include "nucpol/signal.hpp"

#include <algorithm>
#include <cmath>

#include "nucpol/errors.hpp"

namespace nucpol::signal {

std::vector<Peak> local_maxima(std::span<const double> t, std::span<const double> y, std::size_t first,
                               double floor) {
    if (t.size() != y.size()) throw InvalidArgument("local_maxima: t and y differ in length");
    std::vector<Peak> peaks;
    if (y.size() < 3) return peaks;
    for (std::size_t i = std::max<std::size_t>(first, 1); i + 1 < y.size(); ++i) {
        const double ym = y[i - 1], y0 = y[i], yp = y[i + 1];
        if (!(y0 > ym && y0 > yp) || y0 <= floor) continue;
        const double hl = t[i] - t[i - 1], hr = t[i + 1] - t[i];
        // vertex of the parabola through the three (possibly non-uniform) samples
        const double d1 = (y0 - ym) / hl, d2 = (yp - y0) / hr;
        const double curvature = (d2 - d1) / (hl + hr);  // half the second derivative
        double tv = t[i], yv = y0;
        if (curvature < 0.0) {
            const double slope_mid = d1 + curvature * hl;  // derivative at t[i]
            const double shift = -slope_mid / (2.0 * curvature);
            if (std::abs(shift) <= std::max(hl, hr)) {
                tv = t[i] + shift;
                yv = y0 + slope_mid * shift + curvature * shift * shift;
            }
        }
        peaks.push_back({tv, yv, i});
    }
    return peaks;
}

std::optional<double> first_crossing(std::span<const double> t, std::span<const double> y, double level,
                                     std::size_t first) {
    for (std::size_t i = first + 1; i < y.size(); ++i) {
        const double a = y[i - 1] - level, b = y[i] - level;
        if (a == 0.0) return t[i - 1];
        if ((a < 0.0) != (b < 0.0) || b == 0.0) {
            const double frac = a / (a - b);
            return t[i - 1] + frac * (t[i] - t[i - 1]);
        }
    }
    return std::nullopt;
}

std::optional<double> last_crossing(std::span<const double> t, std::span<const double> y, double level,
                                    std::size_t first) {
    for (std::size_t i = y.size(); i-- > first + 1;) {
        const double a = y[i - 1] - level, b = y[i] - level;
        if (b == 0.0) return t[i];
        if ((a < 0.0) != (b < 0.0) || a == 0.0) {
            const double frac = a / (a - b);
            return t[i - 1] + frac * (t[i] - t[i - 1]);
        }
    }
    return std::nullopt;
}

std::size_t lower_index(std::span<const double> t, double time) {
    return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), time) - t.begin());
}

} // namespace nucpol::signal
