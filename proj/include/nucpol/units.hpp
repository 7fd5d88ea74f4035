#pragma once

#include <numbers>
#include <string_view>

namespace nucpol {

// CODATA 2018 recommended values (SI).
namespace constants {
inline constexpr double speed_of_light = 299792458.0;           // m/s, exact
inline constexpr double hbar = 1.054571817e-34;                 // J s, exact
inline constexpr double vacuum_permeability = 1.25663706212e-6; // N/A^2
inline constexpr double nuclear_magneton = 5.0507837461e-27;    // J/T
} // namespace constants

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Rates are angular (rad/s) everywhere inside the library. The CLI converts
// once on input and once on output according to the declared unit.
enum class RateUnit { hertz, rad_per_s };

constexpr double to_angular(double value, RateUnit unit) {
    return unit == RateUnit::hertz ? value * two_pi : value;
}

constexpr double from_angular(double value, RateUnit unit) {
    return unit == RateUnit::hertz ? value / two_pi : value;
}

constexpr std::string_view unit_name(RateUnit unit) {
    return unit == RateUnit::hertz ? "Hz" : "rad/s";
}

} // namespace nucpol
