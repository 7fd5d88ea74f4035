#include "nucpol/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "nucpol/errors.hpp"

namespace nucpol::lindblad {

namespace {

using Index = Eigen::Index;

Matrix ladder(int levels) {
    Matrix a = Matrix::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix number(int levels) {
    Matrix n = Matrix::Zero(levels, levels);
    for (int k = 0; k < levels; ++k) n(k, k) = k;
    return n;
}

// op on slot `which`, identity elsewhere
Matrix embed(const Matrix& local, int which) {
    Matrix out = Matrix::Identity(1, 1);
    for (int k = 0; k < 4; ++k) {
        const Matrix factor = (k == which) ? local : Matrix::Identity(kFockDims[k], kFockDims[k]);
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

int fock_index(const BasisState& s) { return ((s.n1 * 2 + s.n2) * 2 + s.n_vuv) * 2 + s.n_nuc; }

double coupling(const ModelParams& p, const HamiltonianOptions& opts) {
    return opts.collective_scaling ? p.g * std::sqrt(static_cast<double>(p.n_nuclei)) : p.g;
}

double occupation(const BasisState& s, Mode m) {
    switch (m) {
    case Mode::pump:
        return s.n1;
    case Mode::seed:
        return s.n2;
    case Mode::vuv:
        return s.n_vuv;
    case Mode::nucleus:
        return s.n_nuc;
    }
    return 0.0;
}

} // namespace

std::string BasisState::label() const {
    return "|" + std::to_string(n1) + std::to_string(n2) + std::to_string(n_vuv) + std::to_string(n_nuc) + ">";
}

std::size_t basis_index(const BasisState& s) {
    for (std::size_t k = 0; k < kBasisDim; ++k)
        if (kBasis[k] == s) return k;
    throw InvalidArgument("basis_index: " + s.label() + " is not one of the 11 model states");
}

Matrix build_hamiltonian_explicit(const ModelParams& p, double t, const HamiltonianOptions& opts) {
    p.validate();
    Matrix h = Matrix::Zero(kBasisDim, kBasisDim);
    for (std::size_t k = 0; k < kBasisDim; ++k) {
        const auto& s = kBasis[k];
        h(static_cast<Index>(k), static_cast<Index>(k)) =
            s.n1 * p.omega1 + s.n2 * p.omega2 + s.n_vuv * p.omega_vuv + s.n_nuc * p.e_nuc;
    }

    const double g = coupling(p, opts);
    const double pump = p.pump_envelope(t);
    const double sqrt2 = std::sqrt(2.0);

    // 1-based positions, upper triangle; mirrored below
    const struct {
        int row, col;
        double value;
    } couplings[] = {
        {1, 2, sqrt2 * p.fwm_u}, {1, 4, sqrt2 * pump},
        {2, 3, g},  {5, 11, g},  {6, 7, g},  {8, 10, g},
        {2, 5, pump}, {3, 11, pump}, {6, 8, pump}, {7, 10, pump},
    };
    for (const auto& c : couplings) {
        h(c.row - 1, c.col - 1) = c.value;
        h(c.col - 1, c.row - 1) = c.value;
    }
    return h;
}

const FockOperators& fock_operators() {
    static const FockOperators ops = [] {
        FockOperators o;
        o.a1 = embed(ladder(kFockDims[0]), 0);
        o.a2 = embed(ladder(kFockDims[1]), 1);
        o.a_vuv = embed(ladder(kFockDims[2]), 2);
        o.j_minus = embed(ladder(kFockDims[3]), 3);
        o.j_plus = o.j_minus.adjoint();
        o.n1 = embed(number(kFockDims[0]), 0);
        o.n2 = embed(number(kFockDims[1]), 1);
        o.n_vuv = embed(number(kFockDims[2]), 2);
        o.n_nuc = embed(number(kFockDims[3]), 3);
        o.identity = Matrix::Identity(kFockDim, kFockDim);
        return o;
    }();
    return ops;
}

const Matrix& basis_isometry() {
    static const Matrix iso = [] {
        Matrix m = Matrix::Zero(kFockDim, kBasisDim);
        for (std::size_t k = 0; k < kBasisDim; ++k) m(fock_index(kBasis[k]), static_cast<Index>(k)) = 1.0;
        return m;
    }();
    return iso;
}

Matrix project(const Matrix& full) {
    if (full.rows() != kFockDim || full.cols() != kFockDim)
        throw InvalidArgument("project: expected a 24x24 product-space operator");
    const Matrix& iso = basis_isometry();
    return iso.adjoint() * full * iso;
}

Matrix build_hamiltonian_fock(const ModelParams& p, double t, const HamiltonianOptions& opts) {
    p.validate();
    const auto& o = fock_operators();
    const Matrix a1d = o.a1.adjoint(), a2d = o.a2.adjoint(), avd = o.a_vuv.adjoint();

    Matrix h = p.omega1 * o.n1 + p.omega2 * o.n2 + p.omega_vuv * o.n_vuv + p.e_nuc * o.n_nuc;

    const Matrix fwm = avd * a2d * o.a1 * o.a1;
    h += p.fwm_u * (fwm + fwm.adjoint());

    const double g = coupling(p, opts);
    h += g * (avd * o.j_minus + o.a_vuv * o.j_plus);
    if (!opts.rotating_wave) h += g * (o.a_vuv * o.j_minus + avd * o.j_plus);

    h += p.pump_envelope(t) * (o.a1 + a1d);
    return h;
}

Matrix build_hamiltonian_operators(const ModelParams& p, double t, const HamiltonianOptions& opts) {
    return project(build_hamiltonian_fock(p, t, opts));
}

Matrix number_operator(Mode m) {
    Matrix n = Matrix::Zero(kBasisDim, kBasisDim);
    for (std::size_t k = 0; k < kBasisDim; ++k)
        n(static_cast<Index>(k), static_cast<Index>(k)) = occupation(kBasis[k], m);
    return n;
}

std::vector<CollapseOperator> model_collapse_operators(const ModelParams& p, const HamiltonianOptions& opts) {
    p.validate();
    const auto& o = fock_operators();
    const double j_scale = opts.collective_scaling ? static_cast<double>(p.n_nuclei) : 1.0;
    std::vector<CollapseOperator> out;
    auto add = [&](const char* name, double rate, const Matrix& full) {
        if (rate > 0.0) out.push_back({name, rate, project(full)});
    };
    add("a1", p.kappa1, o.a1);
    add("a2", p.kappa2, o.a2);
    add("a_vuv", p.kappa_vuv, o.a_vuv);
    add("j_minus", p.gamma_minus * j_scale, o.j_minus);
    return out;
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw InvalidArgument("DensityMatrix::pure: zero state vector");
    const Eigen::VectorXcd u = psi / norm;
    return {u * u.adjoint()};
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t k) {
    if (k >= dim) throw InvalidArgument("DensityMatrix::basis_state: index out of range");
    Matrix m = Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    m(static_cast<Index>(k), static_cast<Index>(k)) = 1.0;
    return {m};
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("DensityMatrix::maximally_mixed: dim must be >= 1");
    return {Matrix::Identity(static_cast<Index>(dim), static_cast<Index>(dim)) / static_cast<double>(dim)};
}

double DensityMatrix::hermiticity_residue() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
    const Matrix herm = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (entries * entries).trace().real(); }

void DensityMatrix::validate() const {
    if (entries.rows() == 0 || entries.rows() != entries.cols())
        throw InvalidArgument("DensityMatrix: must be a non-empty square matrix");
    if (std::abs(trace() - 1.0) > 1e-9) throw InvalidArgument("DensityMatrix: trace differs from 1");
    if (hermiticity_residue() > 1e-12) throw InvalidArgument("DensityMatrix: not Hermitian");
    if (min_eigenvalue() < -1e-8) throw InvalidArgument("DensityMatrix: negative eigenvalue");
}

cplx expectation(const DensityMatrix& rho, const Matrix& op) {
    if (op.rows() != rho.entries.rows() || op.cols() != rho.entries.cols())
        throw InvalidArgument("expectation: operator and density matrix dimensions differ");
    return op.cwiseProduct(rho.entries.transpose()).sum();
}

TimeSeries<DensityMatrix> integrate_master(const HamiltonianFn& h, const DensityMatrix& rho0,
                                           const std::vector<CollapseOperator>& collapse, double t0, double t1,
                                           const MasterOptions& opts) {
    rho0.validate();
    const Index d = rho0.entries.rows();
    if (!(t1 > t0)) throw InvalidArgument("integrate_master: need t1 > t0");
    if (opts.n_samples < 2) throw InvalidArgument("integrate_master: need at least two samples");

    std::vector<Matrix> jumps;
    Matrix decay = Matrix::Zero(d, d);  // ½ Σ L†L
    for (const auto& c : collapse) {
        if (c.op.rows() != d || c.op.cols() != d)
            throw InvalidArgument("integrate_master: collapse operator '" + c.name + "' has the wrong dimension");
        if (!(c.rate >= 0.0)) throw InvalidArgument("integrate_master: negative rate for '" + c.name + "'");
        const Matrix l = std::sqrt(c.rate) * c.op;
        decay += 0.5 * l.adjoint() * l;
        jumps.push_back(l);
    }
    {
        const Matrix h0 = h(t0);
        if (h0.rows() != d || h0.cols() != d)
            throw InvalidArgument("integrate_master: Hamiltonian dimension does not match rho0");
    }

    const cplx i_unit{0.0, 1.0};
    Matrix c(d, d);
    // ρ̇ = C + C† with C = −i(H − i·½ΣL†L)ρ + ½ΣLρL†, Hermitian by construction
    auto rhs = [&](double t, const Matrix& rho, Matrix& drho) {
        c.noalias() = (-i_unit) * (h(t) * rho);
        c.noalias() -= decay * rho;
        for (const auto& l : jumps) c.noalias() += 0.5 * (l * rho * l.adjoint());
        drho = c + c.adjoint();
    };

    ode::Options ode_opts;
    ode_opts.tol = opts.tol;
    ode_opts.max_step = opts.max_step;

    const auto grid = ode::uniform_grid(t0, t1, opts.n_samples);
    TimeSeries<DensityMatrix> out;
    out.reserve(grid.size());
    const std::size_t stride = std::max<std::size_t>(opts.positivity_stride, 1);
    std::size_t sample = 0;
    ode::integrate(rhs, Matrix(rho0.entries), t0, t1, grid, ode_opts, [&](double t, const Matrix& rho) {
        DensityMatrix state{rho};
        const double drift = std::abs(state.trace() - 1.0);
        if (drift > opts.trace_tolerance)
            throw TraceError("integrate_master: trace drifted by " + std::to_string(drift), t);
        if (sample % stride == 0 || sample + 1 == grid.size()) {
            const double lowest = state.min_eigenvalue();
            if (lowest < -opts.positivity_tolerance)
                throw PositivityError("integrate_master: eigenvalue " + std::to_string(lowest), t);
        }
        ++sample;
        out.push_back(t, std::move(state));
    });
    out.metadata["dim"] = std::to_string(d);
    out.metadata["rtol"] = std::to_string(opts.tol.rtol);
    out.metadata["atol"] = std::to_string(opts.tol.atol);
    return out;
}

TimeSeries<DensityMatrix> integrate_master(const ModelParams& p, const DensityMatrix& rho0,
                                           const std::vector<CollapseOperator>& collapse, double t0, double t1,
                                           const HamiltonianOptions& hopts, const MasterOptions& opts) {
    p.validate();
    if (rho0.dim() != kBasisDim) throw InvalidArgument("integrate_master: the model needs an 11x11 density matrix");
    MasterOptions o = opts;
    if (p.pump_amp > 0.0) {
        const double bound = 0.5 * p.pump_width;
        o.max_step = o.max_step > 0.0 ? std::min(o.max_step, bound) : bound;
    }
    auto h = [&](double t) { return build_hamiltonian_explicit(p, t, hopts); };
    auto out = integrate_master(h, rho0, collapse, t0, t1, o);
    out.metadata["model"] = "lindblad11";
    out.metadata["n_nuclei"] = std::to_string(p.n_nuclei);
    return out;
}

std::string format_matrix(const Matrix& m, int precision) {
    std::ostringstream os;
    char buf[96];
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            const cplx v = m(r, c);
            if (v.imag() == 0.0)
                std::snprintf(buf, sizeof buf, "%*.*g", precision + 8, precision, v.real());
            else
                std::snprintf(buf, sizeof buf, "%*.*g%+.*gi", precision + 8, precision, v.real(), precision, v.imag());
            os << buf << (c + 1 == m.cols() ? "" : " ");
        }
        os << '\n';
    }
    return os.str();
}

std::string format_basis() {
    std::ostringstream os;
    for (std::size_t k = 0; k < kBasisDim; ++k) os << k + 1 << ' ' << kBasis[k].label() << '\n';
    return os.str();
}

} // namespace nucpol::lindblad
