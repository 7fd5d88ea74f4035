#include <cmath>
#include <random>

#include "doctest.h"
#include "nucpol/errors.hpp"
#include "nucpol/lindblad.hpp"

using namespace nucpol;
using namespace nucpol::lindblad;

namespace {

ModelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-50.0, 50.0), pos(0.0, 50.0);
    ModelParams p;
    p.omega1 = u(rng);
    p.omega2 = u(rng);
    p.omega_vuv = u(rng);
    p.e_nuc = u(rng);
    p.g = pos(rng);
    p.fwm_u = pos(rng);
    p.pump_amp = pos(rng);
    p.pump_center = pos(rng) * 1e-3;
    p.pump_width = 1e-3 + pos(rng) * 1e-4;
    p.n_nuclei = 1 + static_cast<long>(pos(rng));
    return p;
}

std::size_t idx(int n1, int n2, int nv, int nn) { return basis_index({n1, n2, nv, nn}); }

} // namespace

TEST_CASE("basis is the ordered 11-state set") {
    CHECK(kBasis.size() == 11);
    CHECK(kBasis[0].label() == "|2000>");
    CHECK(idx(1, 1, 0, 1) == 10);
    CHECK_THROWS_AS(basis_index({0, 0, 0, 0}), InvalidArgument);
    CHECK(format_basis().find("|0110>") != std::string::npos);
}

TEST_CASE("explicit and operator Hamiltonians agree on random draws") {
    std::mt19937_64 rng(7);
    for (int draw = 0; draw < 50; ++draw) {
        const auto p = random_params(rng);
        for (bool collective : {false, true}) {
            HamiltonianOptions o;
            o.collective_scaling = collective;
            const double t = p.pump_center + 0.3 * p.pump_width;
            const Matrix a = build_hamiltonian_explicit(p, t, o);
            const Matrix b = build_hamiltonian_operators(p, t, o);
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("counter-rotating terms vanish inside the 11-state basis") {
    // they connect the basis only to states with two extra excitations
    std::mt19937_64 rng(11);
    const auto p = random_params(rng);
    HamiltonianOptions rwa, full;
    full.rotating_wave = false;
    const Matrix fa = build_hamiltonian_fock(p, 0.0, rwa);
    const Matrix fb = build_hamiltonian_fock(p, 0.0, full);
    CHECK((fa - fb).cwiseAbs().maxCoeff() > 0.0);
    CHECK((fb - fb.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((project(fa) - project(fb)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the isometry is orthonormal and number operators are diagonal") {
    const Matrix& v = basis_isometry();
    CHECK(v.rows() == kFockDim);
    CHECK(v.cols() == 11);
    CHECK((v.adjoint() * v - Matrix::Identity(11, 11)).cwiseAbs().maxCoeff() < 1e-15);
    const Matrix n1 = number_operator(Mode::pump);
    CHECK(n1(0, 0).real() == 2.0);
    CHECK((n1 - Matrix(n1.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    CHECK((project(fock_operators().n_nuc) - number_operator(Mode::nucleus)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-nucleus vacuum Rabi oscillation") {
    // |0110> <-> |0101> through g alone: P(t) = cos^2(g t)
    ModelParams p;
    p.g = 40.0;
    const auto rho0 = DensityMatrix::basis_state(11, idx(0, 1, 1, 0));
    MasterOptions o;
    o.tol = {1e-11, 1e-13};
    o.n_samples = 101;
    const auto tr = integrate_master(p, rho0, {}, 0.0, 0.2, {}, o);
    double worst = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double c = std::cos(p.g * tr.t[k]);
        worst = std::max(worst, std::abs(tr.values[k].population(idx(0, 1, 1, 0)) - c * c));
        worst = std::max(worst, std::abs(tr.values[k].population(idx(0, 1, 0, 1)) - (1.0 - c * c)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("cavity decay is exponential and feeds the lower state") {
    ModelParams p;
    p.kappa_vuv = 30.0;
    const auto ops = model_collapse_operators(p);
    REQUIRE(ops.size() == 1);
    MasterOptions o;
    o.n_samples = 21;
    const auto tr = integrate_master(p, DensityMatrix::basis_state(11, idx(0, 1, 1, 0)), ops, 0.0, 0.1, {}, o);
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double e = std::exp(-p.kappa_vuv * tr.t[k]);
        CHECK(tr.values[k].population(idx(0, 1, 1, 0)) == doctest::Approx(e).epsilon(1e-7));
        CHECK(tr.values[k].population(idx(0, 1, 0, 0)) == doctest::Approx(1.0 - e).epsilon(1e-7));
    }
}

TEST_CASE("with strong coupling the sector population decays at kappa/2") {
    // both normal modes of |0110>, |0101> are half photon
    ModelParams p;
    p.g = 200.0;
    p.kappa_vuv = 20.0;
    MasterOptions o;
    o.n_samples = 41;
    const auto tr = integrate_master(p, DensityMatrix::basis_state(11, idx(0, 1, 1, 0)), model_collapse_operators(p),
                                     0.0, 0.2, {}, o);
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double left = tr.values[k].population(idx(0, 1, 1, 0)) + tr.values[k].population(idx(0, 1, 0, 1));
        CHECK(left == doctest::Approx(std::exp(-0.5 * p.kappa_vuv * tr.t[k])).epsilon(0.03));
    }
}

TEST_CASE("collective scaling multiplies g by sqrt(N) and gamma by N") {
    ModelParams p;
    p.g = 2.0;
    p.gamma_minus = 0.5;
    p.n_nuclei = 16;
    HamiltonianOptions o;
    o.collective_scaling = true;
    const Matrix h = build_hamiltonian_explicit(p, 0.0, o);
    CHECK(std::abs(h(idx(0, 1, 1, 0), idx(0, 1, 0, 1))) == doctest::Approx(8.0));
    bool found = false;
    for (const auto& c : model_collapse_operators(p, o))
        if (c.rate == doctest::Approx(8.0)) found = true;
    CHECK(found);
}

TEST_CASE("pumped, lossy run keeps a physical density matrix") {
    ModelParams p;
    p.g = 106.8;
    p.fwm_u = 1000.0;
    p.pump_amp = 300.0;
    p.pump_center = 2e-3;
    p.pump_width = 5e-4;
    p.kappa1 = p.kappa2 = 10.0;
    p.kappa_vuv = 1000.0;
    p.gamma_minus = 1.0 / 1740.0;
    p.n_nuclei = 100;
    HamiltonianOptions ho;
    ho.collective_scaling = true;
    MasterOptions o;
    o.n_samples = 201;
    const auto tr = integrate_master(p, DensityMatrix::basis_state(11, 0), model_collapse_operators(p, ho), 0.0, 0.01,
                                     ho, o);
    for (const auto& rho : tr.values) {
        CHECK(std::abs(rho.trace() - 1.0) < 1e-9);
        CHECK(rho.hermiticity_residue() < 1e-10);
        CHECK(rho.min_eigenvalue() > -1e-8);
        CHECK(rho.purity() <= 1.0 + 1e-9);
    }
    // population has left |2000> through four-wave mixing
    CHECK(tr.values.back().population(0) < 0.99);
}

TEST_CASE("density matrix helpers") {
    const auto mixed = DensityMatrix::maximally_mixed(4);
    CHECK(mixed.purity() == doctest::Approx(0.25));
    CHECK(mixed.min_eigenvalue() == doctest::Approx(0.25));
    Eigen::VectorXcd psi(2);
    psi << 1.0, std::complex<double>(0.0, 1.0);
    const auto pure = DensityMatrix::pure(psi / std::sqrt(2.0));
    CHECK(pure.purity() == doctest::Approx(1.0));
    CHECK(pure.hermiticity_residue() < 1e-16);
    DensityMatrix bad{Matrix::Identity(2, 2)};
    CHECK_THROWS(bad.validate());
    CHECK_THROWS_AS(expectation(pure, Matrix::Identity(3, 3)), InvalidArgument);
}

TEST_CASE("trace violations are reported with the sample time") {
    // a non-Hermitian "Hamiltonian" leaks norm
    HamiltonianFn h = [](double) {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = std::complex<double>(0.0, -5.0);
        return m;
    };
    CHECK_THROWS_AS(integrate_master(h, DensityMatrix::basis_state(2, 0), {}, 0.0, 1.0), TraceError);
}
