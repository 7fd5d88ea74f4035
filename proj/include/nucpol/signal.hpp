// signal.hpp — peak and level-crossing utilities on sampled traces
#pragma once

#include <optional>
#include <span>
#include <vector>

namespace nucpol::signal {

struct Peak {
    double time;   // parabolic-vertex estimate
    double value;  // parabola value at the vertex
    std::size_t index;
};

// Strict interior local maxima of `y` at indices >= `first`, each refined by
// the vertex of the parabola through the three neighbouring samples. Maxima
// below `floor` are ignored (integration noise on a vanishing signal).
std::vector<Peak> local_maxima(std::span<const double> t, std::span<const double> y,
                               std::size_t first = 0, double floor = 0.0);

// First time at or after index `first` where y crosses `level`, linearly
// interpolated between the bracketing samples.
std::optional<double> first_crossing(std::span<const double> t, std::span<const double> y,
                                     double level, std::size_t first = 0);

// Last crossing of `level` searching backwards from the end down to `first`.
std::optional<double> last_crossing(std::span<const double> t, std::span<const double> y,
                                    double level, std::size_t first = 0);

// Index of the first sample with t >= time (size() when none).
std::size_t lower_index(std::span<const double> t, double time);

} // namespace nucpol::signal
