#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qabsorb {

using OdeState = Eigen::VectorXcd;

// Returns false if the right-hand side is singular at t.
using OdeRhs = std::function<bool(double t, const OdeState& y, OdeState& dydt)>;

// Called once per reporting time, in increasing order.
using OdeObserver = std::function<void(double t, const OdeState& y)>;

struct Tolerances {
    double rel = 1e-9;
    double abs = 1e-12;
};

struct OdeOptions {
    Tolerances tol;
    double initial_step = 0.0; // 0: automatic
    std::size_t max_steps = 50'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

// Adaptive Dormand-Prince 5(4) with FSAL and the fourth-order continuous
// extension. Steps never cross a breakpoint: the integration restarts there
// so that kinks in the coupling schedules do not pollute the error
// estimator. Reporting times inside a step are filled by dense output;
// a reporting time that coincides with a breakpoint or the end gets the
// exact step value.
//
// `report_times` must be sorted and lie in [t0, t1]. Throws
// DivergentCoupling if the right-hand side reports a singularity and
// IntegrationFailure on step-size underflow or when max_steps is exceeded.
OdeStats integrate_dopri5(const OdeRhs& rhs, OdeState y0, double t0, double t1,
                          std::span<const double> breakpoints,
                          std::span<const double> report_times, const OdeObserver& observer,
                          const OdeOptions& options = {});

std::vector<double> uniform_grid(double t0, double t1, std::size_t points);

} // namespace qabsorb
