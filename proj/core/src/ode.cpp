#include "qabsorb/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qabsorb/error.hpp"

namespace qabsorb {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Fifth minus fourth order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

double error_norm(const OdeState& err, const OdeState& y0, const OdeState& y1,
                  const Tolerances& tol) {
    double sum = 0.0;
    const auto n = err.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale = tol.abs + tol.rel * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(err[i]) / scale;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(std::max<Eigen::Index>(n, 1)));
}

class Stepper {
public:
    Stepper(const OdeRhs& rhs, const OdeOptions& options, OdeStats& stats)
        : rhs_(rhs), options_(options), stats_(stats) {}

    void eval(double t, const OdeState& y, OdeState& out) {
        out.resize(y.size());
        ++stats_.rhs_evaluations;
        if (!rhs_(t, y, out)) {
            throw DivergentCoupling("right-hand side is singular at t = " + std::to_string(t), t);
        }
    }

    double initial_step(double t0, const OdeState& y0, const OdeState& f0, double span) {
        if (options_.initial_step > 0.0) return std::min(options_.initial_step, span);
        const auto& tol = options_.tol;
        double d0 = 0, d1n = 0;
        for (Eigen::Index i = 0; i < y0.size(); ++i) {
            const double sc = tol.abs + tol.rel * std::abs(y0[i]);
            d0 += std::norm(y0[i]) / (sc * sc);
            d1n += std::norm(f0[i]) / (sc * sc);
        }
        d0 = std::sqrt(d0 / y0.size());
        d1n = std::sqrt(d1n / y0.size());
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1n;
        h0 = std::min(h0, span);
        OdeState y1 = y0 + h0 * f0;
        OdeState f1;
        eval(t0 + h0, y1, f1);
        double d2 = 0;
        for (Eigen::Index i = 0; i < y0.size(); ++i) {
            const double sc = tol.abs + tol.rel * std::abs(y0[i]);
            d2 += std::norm(f1[i] - f0[i]) / (sc * sc);
        }
        d2 = std::sqrt(d2 / y0.size()) / h0;
        const double dmax = std::max(d1n, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6 * span, h0 * 1e-3)
                                        : std::pow(0.01 / dmax, 1.0 / 5.0);
        return std::min({100 * h0, h1, span});
    }

    // Integrate on [ta, tb] with no breakpoint inside; reports fall in (ta, tb].
    void segment(double ta, double tb, OdeState& y, std::span<const double> reports,
                 std::size_t& next_report, const OdeObserver& observer, double& h) {
        const auto n = y.size();
        OdeState k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
        double t = ta;
        eval(t, y, k1);
        if (h <= 0.0) h = initial_step(t, y, k1, tb - ta);
        double fac_max = kFacMax;
        while (t < tb) {
            if (stats_.accepted + stats_.rejected >= options_.max_steps) {
                throw IntegrationFailure("maximum number of steps exceeded", t);
            }
            bool last = false;
            double h_proposed = h;
            if (t + 1.01 * h >= tb) {
                h = tb - t;
                last = true;
            }
            const double min_step = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(t);
            if (!(h > min_step)) {
                throw IntegrationFailure("step size underflow at t = " + std::to_string(t), t);
            }

            ytmp = y + h * a21 * k1;
            eval(t + c2 * h, ytmp, k2);
            ytmp = y + h * (a31 * k1 + a32 * k2);
            eval(t + c3 * h, ytmp, k3);
            ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
            eval(t + c4 * h, ytmp, k4);
            ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            eval(t + c5 * h, ytmp, k5);
            ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            const double t_new = last ? tb : t + h;
            eval(t_new, ytmp, k6);
            ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
            eval(t_new, ynew, k7);
            err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double en = error_norm(err, y, ynew, options_.tol);
            if (!std::isfinite(en)) {
                ++stats_.rejected;
                h *= kFacMin;
                fac_max = 1.0;
                continue;
            }
            double fac = en == 0.0 ? kFacMax : kSafety * std::pow(en, -0.2);
            if (en <= 1.0) {
                ++stats_.accepted;
                // Dense output for reports strictly inside the step.
                while (next_report < reports.size() && reports[next_report] < t_new) {
                    const double theta = (reports[next_report] - t) / h;
                    const double theta1 = 1.0 - theta;
                    ytmp = y + theta * (ynew - y) +
                           theta * theta1 *
                               ((h * k1 - (ynew - y)) +
                                theta * (((ynew - y) - h * k7 - (h * k1 - (ynew - y))) +
                                         theta1 * h *
                                             (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 +
                                              d7 * k7)));
                    observer(reports[next_report], ytmp);
                    ++next_report;
                }
                t = t_new;
                y = ynew;
                k1 = k7;
                while (next_report < reports.size() && reports[next_report] == t) {
                    observer(t, y);
                    ++next_report;
                }
                if (last) {
                    h = std::max(h, h_proposed);
                    break;
                }
                h *= std::clamp(fac, kFacMin, fac_max);
                fac_max = kFacMax;
            } else {
                ++stats_.rejected;
                h *= std::clamp(fac, kFacMin, 1.0);
                fac_max = 1.0;
            }
        }
    }

private:
    const OdeRhs& rhs_;
    const OdeOptions& options_;
    OdeStats& stats_;
};

} // namespace

std::vector<double> uniform_grid(double t0, double t1, std::size_t points) {
    if (points < 2) {
        throw InvalidParameter("uniform_grid: need at least 2 points");
    }
    std::vector<double> grid(points);
    const double span = t1 - t0;
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = t0 + span * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    grid.back() = t1;
    return grid;
}

OdeStats integrate_dopri5(const OdeRhs& rhs, OdeState y0, double t0, double t1,
                          std::span<const double> breakpoints,
                          std::span<const double> report_times, const OdeObserver& observer,
                          const OdeOptions& options) {
    if (!(t1 >= t0)) {
        throw InvalidParameter("integrate_dopri5: t1 must not precede t0");
    }
    if (!(options.tol.rel > 0.0) || !(options.tol.abs > 0.0)) {
        throw InvalidParameter("integrate_dopri5: tolerances must be positive");
    }
    if (!std::is_sorted(report_times.begin(), report_times.end()) ||
        (!report_times.empty() && (report_times.front() < t0 || report_times.back() > t1))) {
        throw InvalidParameter("integrate_dopri5: report times must be sorted within [t0, t1]");
    }

    OdeStats stats;
    Stepper stepper(rhs, options, stats);
    std::size_t next = 0;
    while (next < report_times.size() && report_times[next] == t0) {
        observer(t0, y0);
        ++next;
    }
    if (t1 == t0) return stats;

    std::vector<double> cuts{t0};
    for (double b : breakpoints) {
        if (b > t0 && b < t1) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(t1);

    double h = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        stepper.segment(cuts[i], cuts[i + 1], y0, report_times, next, observer, h);
    }
    return stats;
}

} // namespace qabsorb
