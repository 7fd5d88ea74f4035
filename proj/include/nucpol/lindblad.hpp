// lindblad.hpp — dense master-equation integration and the 11-state
// cavity/nucleus model
//
//   ρ̇ = −i[H(t), ρ] + Σ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})
//
// The 11-state model lives in a fixed, ordered subset of the product space
// (pump n₁ ≤ 2) ⊗ (seed n₂ ≤ 1) ⊗ (VUV n ≤ 1) ⊗ (nucleus 0/1). Its
// Hamiltonian is written down entry by entry, and is also assembled from
// ladder operators on the 24-dimensional product space and projected; the
// two must agree.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nucpol/model_params.hpp"
#include "nucpol/ode.hpp"
#include "nucpol/time_series.hpp"

namespace nucpol::lindblad {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct BasisState {
    int n1;
    int n2;
    int n_vuv;
    int n_nuc;

    bool operator==(const BasisState&) const = default;
    std::string label() const;  // "|n1 n2 nvuv nuc>" without spaces, e.g. |2000>
};

inline constexpr std::size_t kBasisDim = 11;

inline constexpr std::array<BasisState, kBasisDim> kBasis{{
    {2, 0, 0, 0},
    {0, 1, 1, 0},
    {0, 1, 0, 1},
    {1, 0, 0, 0},
    {1, 1, 1, 0},
    {0, 0, 1, 0},
    {0, 0, 0, 1},
    {1, 0, 1, 0},
    {0, 1, 0, 0},
    {1, 0, 0, 1},
    {1, 1, 0, 1},
}};

// Position in kBasis; throws InvalidArgument for states outside it.
std::size_t basis_index(const BasisState& s);

struct HamiltonianOptions {
    // Multiplies g by √N (Holstein-Primakoff collective excitation). Off
    // reproduces the single-excitation matrix as written.
    bool collective_scaling = false;
    // Only consulted by the operator builder: false adds g(a_VUV J₊ + a_VUV† J₋).
    bool rotating_wave = true;
};

// Entry-by-entry matrix in kBasis order, pump envelope evaluated at t. The
// mode energies of `p` enter the diagonal as given, so lab-frame frequencies
// and rotating-frame detunings are both valid inputs.
Matrix build_hamiltonian_explicit(const ModelParams& p, double t, const HamiltonianOptions& opts = {});

// Product-space dimensions (pump, seed, VUV, nucleus) and the ladder
// operators acting on it, index = ((n1·2 + n2)·2 + n_vuv)·2 + nuc.
inline constexpr std::array<int, 4> kFockDims{3, 2, 2, 2};
inline constexpr int kFockDim = 24;

struct FockOperators {
    Matrix a1;
    Matrix a2;
    Matrix a_vuv;
    Matrix j_minus;
    Matrix j_plus;
    // Occupation numbers; equal to a†a (J₊J₋) but with exact integer entries.
    Matrix n1;
    Matrix n2;
    Matrix n_vuv;
    Matrix n_nuc;
    Matrix identity;
};
const FockOperators& fock_operators();

// 24×11 isometry whose columns are the kBasis states.
const Matrix& basis_isometry();

// P† A P for a product-space operator A.
Matrix project(const Matrix& full);

// Full product-space Hamiltonian (before projection).
Matrix build_hamiltonian_fock(const ModelParams& p, double t, const HamiltonianOptions& opts = {});

Matrix build_hamiltonian_operators(const ModelParams& p, double t, const HamiltonianOptions& opts = {});

enum class Mode { pump, seed, vuv, nucleus };

// Occupation number of a mode, diagonal in kBasis.
Matrix number_operator(Mode m);

struct CollapseOperator {
    std::string name;
    double rate;
    Matrix op;  // the dissipator uses √rate · op
};

// √κ₁ a₁, √κ₂ a₂, √κ_VUV a_VUV, √γ₋ J₋ projected onto kBasis (zero rates
// dropped). Decays that would leave the basis have no counterpart here.
std::vector<CollapseOperator> model_collapse_operators(const ModelParams& p, const HamiltonianOptions& opts = {});

struct DensityMatrix {
    Matrix entries;

    static DensityMatrix pure(const Eigen::VectorXcd& psi);
    static DensityMatrix basis_state(std::size_t dim, std::size_t k);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
    cplx trace() const { return entries.trace(); }
    double hermiticity_residue() const;  // max |ρ − ρ†|
    double min_eigenvalue() const;
    double purity() const;               // Tr ρ²
    double population(std::size_t k) const { return entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real(); }

    // Square, unit trace to 1e-9, Hermitian to 1e-12, min eigenvalue >= −1e-8.
    void validate() const;
};

// Tr(op ρ). Throws InvalidArgument on a dimension mismatch.
cplx expectation(const DensityMatrix& rho, const Matrix& op);

using HamiltonianFn = std::function<Matrix(double)>;

struct MasterOptions {
    ode::Tolerance tol{1e-9, 1e-11};
    std::size_t n_samples = 1001;
    double max_step = 0.0;
    // Checked at every stored sample.
    double trace_tolerance = 1e-6;
    double positivity_tolerance = 1e-6;
    std::size_t positivity_stride = 1;  // eigenvalue check on every k-th sample
};

// Uniformly sampled trajectory on [t0, t1]. Throws TraceError or
// PositivityError (with the sample time) when a stored state violates the
// configured tolerances, ConvergenceError when the step size collapses.
TimeSeries<DensityMatrix> integrate_master(const HamiltonianFn& h, const DensityMatrix& rho0,
                                           const std::vector<CollapseOperator>& collapse, double t0, double t1,
                                           const MasterOptions& opts = {});

// 11-state model run: explicit Hamiltonian, the given collapse operators,
// steps bounded by half the pump width while the pump is on.
TimeSeries<DensityMatrix> integrate_master(const ModelParams& p, const DensityMatrix& rho0,
                                           const std::vector<CollapseOperator>& collapse, double t0, double t1,
                                           const HamiltonianOptions& hopts = {}, const MasterOptions& opts = {});

// Plain-text dumps for debugging.
std::string format_matrix(const Matrix& m, int precision = 6);
std::string format_basis();

} // namespace nucpol::lindblad
