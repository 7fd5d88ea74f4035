#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "doctest.h"
#include "nucpol/ode.hpp"

using namespace nucpol;

TEST_CASE("exponential decay matches exp(-t) at every sample") {
    Eigen::VectorXd y(1);
    y << 1.0;
    const auto grid = ode::uniform_grid(0.0, 5.0, 101);
    double worst = 0.0;
    ode::Options opts;
    opts.tol = {1e-10, 1e-12};
    ode::integrate([](double, const Eigen::VectorXd& s, Eigen::VectorXd& d) { d = -s; }, y, 0.0, 5.0, grid, opts,
                   [&](double t, const Eigen::VectorXd& s) { worst = std::max(worst, std::abs(s(0) - std::exp(-t))); });
    CHECK(worst < 1e-8);
}

TEST_CASE("harmonic oscillator keeps phase over many periods") {
    Eigen::Vector2d y(1.0, 0.0);
    const double w = 3.0, t1 = 20.0 * 2.0 * M_PI / w;
    const auto grid = ode::uniform_grid(0.0, t1, 401);
    double worst = 0.0;
    ode::Options opts;
    opts.tol = {1e-11, 1e-13};
    ode::integrate(
        [w](double, const Eigen::Vector2d& s, Eigen::Vector2d& d) { d << s(1), -w * w * s(0); }, y, 0.0, t1, grid,
        opts, [&](double t, const Eigen::Vector2d& s) { worst = std::max(worst, std::abs(s(0) - std::cos(w * t))); });
    CHECK(worst < 1e-7);
}

TEST_CASE("dense output lands between steps for a polynomial") {
    // y' = 3t^2 is integrated exactly by a 4th order interpolant
    Eigen::VectorXd y = Eigen::VectorXd::Zero(1);
    std::vector<double> grid{0.1, 0.33, 0.77, 1.0};
    std::vector<double> got;
    ode::integrate([](double t, const Eigen::VectorXd&, Eigen::VectorXd& d) { d(0) = 3.0 * t * t; }, y, 0.0, 1.0,
                   grid, {}, [&](double, const Eigen::VectorXd& s) { got.push_back(s(0)); });
    REQUIRE(got.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(got[i] == doctest::Approx(std::pow(grid[i], 3)).epsilon(1e-12));
}

TEST_CASE("complex matrix state") {
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Identity(2, 2);
    const std::complex<double> i(0.0, 1.0);
    Eigen::MatrixXcd last;
    const std::vector<double> grid{1.0};
    ode::Options opts;
    opts.tol = {1e-11, 1e-13};
    ode::integrate([&](double, const Eigen::MatrixXcd& s, Eigen::MatrixXcd& d) { d = -i * s; }, y, 0.0, 1.0, grid,
                   opts, [&](double, const Eigen::MatrixXcd& s) { last = s; });
    CHECK(std::abs(last(0, 0) - std::exp(-i)) < 1e-9);
    CHECK(std::abs(last(0, 1)) < 1e-12);
}

TEST_CASE("argument checks and failures") {
    Eigen::VectorXd y = Eigen::VectorXd::Ones(1);
    auto rhs = [](double, const Eigen::VectorXd& s, Eigen::VectorXd& d) { d = s; };
    auto none = [](double, const Eigen::VectorXd&) {};
    std::vector<double> bad{0.5, 0.2};
    CHECK_THROWS_AS(ode::integrate(rhs, y, 1.0, 0.0, std::vector<double>{}, {}, none), InvalidArgument);
    CHECK_THROWS_AS(ode::integrate(rhs, y, 0.0, 1.0, bad, {}, none), InvalidArgument);
    CHECK_THROWS_AS(ode::integrate(rhs, y, 0.0, 1.0, std::vector<double>{2.0}, {}, none), InvalidArgument);

    // finite-time blow-up of y' = y^2 at t = 1
    auto blow = [](double, const Eigen::VectorXd& s, Eigen::VectorXd& d) { d = s.array().square(); };
    CHECK_THROWS_AS(ode::integrate(blow, y, 0.0, 2.0, std::vector<double>{}, {}, none), ConvergenceError);

    ode::Options tight;
    tight.max_steps = 5;
    CHECK_THROWS_AS(ode::integrate(rhs, y, 0.0, 10.0, std::vector<double>{}, tight, none), ConvergenceError);
}

TEST_CASE("uniform grid endpoints are exact") {
    const auto g = ode::uniform_grid(0.1, 0.7, 7);
    CHECK(g.front() == 0.1);
    CHECK(g.back() == 0.7);
    CHECK(ode::uniform_grid(2.0, 3.0, 1).size() == 1);
}
