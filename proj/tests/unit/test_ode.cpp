#include <gtest/gtest.h>

#include <cmath>

#include "qabsorb/error.hpp"
#include "qabsorb/ode.hpp"

using namespace qabsorb;

namespace {

OdeState scalar(std::complex<double> v) {
    OdeState y(1);
    y[0] = v;
    return y;
}

} // namespace

TEST(Dopri5, ExponentialDecayOnGrid) {
    auto rhs = [](double, const OdeState& y, OdeState& dy) {
        dy = -y;
        return true;
    };
    const auto grid = uniform_grid(0.0, 5.0, 101);
    double worst = 0.0;
    std::size_t calls = 0;
    integrate_dopri5(rhs, scalar(1.0), 0.0, 5.0, {}, grid,
                     [&](double t, const OdeState& y) {
                         worst = std::max(worst, std::abs(y[0] - std::exp(-t)));
                         EXPECT_EQ(t, grid[calls]);
                         ++calls;
                     });
    EXPECT_EQ(calls, grid.size());
    EXPECT_LT(worst, 1e-9);
}

TEST(Dopri5, DenseOutputBetweenLargeSteps) {
    // Few accepted steps, many report times: accuracy relies on the
    // continuous extension.
    auto rhs = [](double, const OdeState& y, OdeState& dy) {
        dy[0] = std::complex<double>(0.0, 1.0) * y[0];
        return true;
    };
    OdeOptions opts;
    opts.tol = {1e-6, 1e-9};
    const auto grid = uniform_grid(0.0, 6.0, 2001);
    double worst = 0.0;
    const auto stats = integrate_dopri5(
        rhs, scalar(1.0), 0.0, 6.0, {}, grid,
        [&](double t, const OdeState& y) {
            worst = std::max(worst, std::abs(y[0] - std::polar(1.0, t)));
        },
        opts);
    EXPECT_LT(stats.accepted, 200u);
    EXPECT_LT(worst, 1e-5);
}

TEST(Dopri5, ComplexOscillatorAtTightTolerance) {
    auto rhs = [](double, const OdeState& y, OdeState& dy) {
        dy[0] = y[1];
        dy[1] = -4.0 * y[0];
        return true;
    };
    OdeState y0(2);
    y0 << std::complex<double>(1.0, 1.0), 0.0;
    OdeOptions opts;
    opts.tol = {1e-12, 1e-14};
    OdeState last;
    integrate_dopri5(rhs, y0, 0.0, 10.0, {}, std::vector<double>{10.0},
                     [&](double, const OdeState& y) { last = y; }, opts);
    EXPECT_LT(std::abs(last[0] - std::complex<double>(1.0, 1.0) * std::cos(20.0)), 1e-10);
}

TEST(Dopri5, RestartsAtBreakpoints) {
    // y' = max(0, t - 1): y'' jumps at t = 1, and each piece is a quadratic
    // the method integrates exactly.
    auto rhs = [](double t, const OdeState&, OdeState& dy) {
        dy[0] = std::max(0.0, t - 1.0);
        return true;
    };
    const std::vector<double> bp{1.0};
    const auto grid = uniform_grid(0.0, 3.0, 31);
    double worst = 0.0;
    integrate_dopri5(rhs, scalar(0.0), 0.0, 3.0, bp, grid, [&](double t, const OdeState& y) {
        worst = std::max(worst, std::abs(y[0].real() - 0.5 * std::pow(std::max(0.0, t - 1.0), 2)));
    });
    EXPECT_LT(worst, 1e-13);
}

TEST(Dopri5, SingularRhsRaisesDivergence) {
    auto rhs = [](double t, const OdeState& y, OdeState& dy) {
        if (t > 0.5) return false;
        dy = y;
        return true;
    };
    try {
        integrate_dopri5(rhs, scalar(1.0), 0.0, 1.0, {}, std::vector<double>{1.0},
                         [](double, const OdeState&) {});
        FAIL() << "expected DivergentCoupling";
    } catch (const DivergentCoupling& e) {
        EXPECT_GT(e.time(), 0.5);
    }
}

TEST(Dopri5, MaxStepsExceeded) {
    auto rhs = [](double, const OdeState& y, OdeState& dy) {
        dy = -1e6 * y;
        return true;
    };
    OdeOptions opts;
    opts.max_steps = 10;
    EXPECT_THROW(integrate_dopri5(rhs, scalar(1.0), 0.0, 1.0, {}, std::vector<double>{1.0},
                                  [](double, const OdeState&) {}, opts),
                 IntegrationFailure);
}

TEST(Dopri5, RejectsBadArguments) {
    auto rhs = [](double, const OdeState& y, OdeState& dy) {
        dy = y;
        return true;
    };
    auto obs = [](double, const OdeState&) {};
    EXPECT_THROW(integrate_dopri5(rhs, scalar(1.0), 1.0, 0.0, {}, {}, obs), InvalidParameter);
    EXPECT_THROW(integrate_dopri5(rhs, scalar(1.0), 0.0, 1.0, {}, std::vector<double>{0.5, 0.2},
                                  obs),
                 InvalidParameter);
    EXPECT_THROW(integrate_dopri5(rhs, scalar(1.0), 0.0, 1.0, {}, std::vector<double>{2.0}, obs),
                 InvalidParameter);
    OdeOptions bad;
    bad.tol.rel = 0.0;
    EXPECT_THROW(integrate_dopri5(rhs, scalar(1.0), 0.0, 1.0, {}, {}, obs, bad),
                 InvalidParameter);
}

TEST(Dopri5, TinyStartTimeScale) {
    // Start near 1e-20 as the exact-absorber seed does.
    auto rhs = [](double t, const OdeState&, OdeState& dy) {
        dy[0] = 0.5 / std::sqrt(t);
        return true;
    };
    const double t0 = 1.4e-20;
    OdeOptions opts;
    opts.initial_step = 1e-3 * t0;
    opts.tol = {1e-10, 1e-22};
    OdeState last;
    integrate_dopri5(rhs, scalar(std::sqrt(t0)), t0, 1e-7, {}, std::vector<double>{1e-7},
                     [&](double, const OdeState& y) { last = y; }, opts);
    EXPECT_NEAR(last[0].real(), std::sqrt(1e-7), 1e-12);
}

TEST(UniformGrid, EndpointsExact) {
    const auto g = uniform_grid(1e-20, 1.3e-7, 2001);
    EXPECT_EQ(g.size(), 2001u);
    EXPECT_EQ(g.front(), 1e-20);
    EXPECT_EQ(g.back(), 1.3e-7);
    EXPECT_THROW(uniform_grid(0.0, 1.0, 1), InvalidParameter);
}
