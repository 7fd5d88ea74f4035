// spectrum.hpp — single-excitation polariton branches
//
// H = [[Δ, Ω], [Ω, 0]] in the (photon, nucleus) basis with Ω = g√N.
// The lower-branch eigenvector is taken as (Ω, E_LP − Δ)ᵀ up to
// normalization, so the LP is photon-like for Δ → −∞ and nucleus-like for
// Δ → +∞.

#pragma once

#include <vector>

namespace nucpol::spectrum {

struct BranchEnergies {
    double upper;
    double lower;
};

struct HopfieldFractions {
    double photon_lp;
    double nuclear_lp;
    double photon_up;
    double nuclear_up;
};

struct PolaritonPoint {
    double detuning;
    double e_upper;
    double e_lower;
    double photon_fraction_lp;
    double nuclear_fraction_lp;
};

// E± = Δ/2 ± ½√(Δ² + 4Ω²). Requires omega >= 0.
BranchEnergies polariton_energies(double delta, double omega);

// Throws DegenerateError when Δ = Ω = 0.
HopfieldFractions hopfield_coefficients(double delta, double omega);

// n_points >= 2 uniformly spaced detunings in [lo, hi].
std::vector<PolaritonPoint> spectrum_scan(double omega, double lo, double hi, int n_points);

} // namespace nucpol::spectrum
