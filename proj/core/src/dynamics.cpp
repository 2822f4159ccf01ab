#include "qabsorb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qabsorb/csv.hpp"
#include "qabsorb/error.hpp"

namespace qabsorb {

namespace {

const char* kind_name(CouplingKind kind) {
    switch (kind) {
    case CouplingKind::Generator: return "generator";
    case CouplingKind::ExactAbsorber: return "exact";
    case CouplingKind::TruncatedAbsorber: return "truncated";
    case CouplingKind::Constant: return "constant";
    }
    return "unknown";
}

void check_range(const CouplingSchedule& lambda, const CouplingSchedule& gamma, double t_start,
                 double t_end) {
    if (!(t_start >= 0.0) || !(t_end > t_start) || !std::isfinite(t_end)) {
        throw InvalidParameter("integration range must satisfy 0 <= t_start < t_end");
    }
    for (const auto* g : {&lambda, &gamma}) {
        if (auto s = g->singular_at(); s && *s >= t_start && *s <= t_end) {
            throw DivergentCoupling("coupling is singular inside the integration range", *s);
        }
        if (auto v = g->evaluate(t_start); v.divergent()) {
            throw DivergentCoupling("coupling diverges at the start time", t_start);
        }
    }
}

std::vector<double> merged_breakpoints(const CouplingSchedule& a, const CouplingSchedule& b) {
    auto out = a.breakpoints();
    const auto more = b.breakpoints();
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

void annotate(Trajectory& traj, const char* formulation, const CouplingSchedule& lambda,
              const CouplingSchedule& gamma, const RunOptions& options) {
    traj.set_meta("formulation", formulation);
    if (const auto& w = lambda.wavepacket()) traj.set_meta("wavepacket", w->describe());
    traj.set_meta("lambda", kind_name(lambda.kind()));
    traj.set_meta("gamma", kind_name(gamma.kind()));
    traj.set_meta("phi0", csv::format_double(gamma.phi0()));
    if (auto T = gamma.truncation_time()) traj.set_meta("T", csv::format_double(*T));
    traj.set_meta("rel_tol", csv::format_double(options.tol.rel));
    traj.set_meta("abs_tol", csv::format_double(options.tol.abs));
}

OdeOptions ode_options(const RunOptions& options, double t_start) {
    OdeOptions o;
    o.tol = options.tol;
    // Seeded runs start next to the singularity where the natural time scale
    // is t_start itself.
    if (t_start > 0.0) o.initial_step = 1e-3 * t_start;
    return o;
}

// Absorber schedules carry phi0 only as a constant factor e^{i phi0}. Runs
// integrate with that factor removed and put it back on the columns that
// carry it (psi3, cross), so that phase-free observables do not pick up
// rounding from the rotation.
struct AbsorberFrame {
    CouplingSchedule gamma;
    Complex back{1.0, 0.0};
    bool rotated = false;
};

AbsorberFrame absorber_frame(const CouplingSchedule& gamma) {
    if (gamma.phi0() == 0.0 || !gamma.wavepacket()) return {gamma};
    switch (gamma.kind()) {
    case CouplingKind::ExactAbsorber:
        return {absorber_coupling(*gamma.wavepacket(), 0.0), std::polar(1.0, -gamma.phi0()), true};
    case CouplingKind::TruncatedAbsorber:
        return {truncated_coupling(*gamma.wavepacket(), 0.0, *gamma.truncation_time()),
                std::polar(1.0, -gamma.phi0()), true};
    default:
        return {gamma};
    }
}

Trajectory amplitude_run(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                         const AbsorberFrame& frame, const AmplitudeState& initial,
                         double t_start, double t_end, const RunOptions& options);

} // namespace

double seed_time(const Wavepacket& packet, double head_target) {
    if (!(head_target > 0.0 && head_target < 1.0)) {
        throw InvalidParameter("seed_time: head target must lie in (0, 1)");
    }
    return packet.time_at_head(head_target);
}

AmplitudeState exact_absorber_amplitudes(const Wavepacket& packet, double phi0, double t) {
    AmplitudeState s;
    s.psi2 = std::sqrt(packet.tail_energy(t));
    s.psi3 = std::polar(std::sqrt(packet.head_energy(t)), -phi0);
    s.p_out = 0.0;
    return s;
}

MomentState exact_absorber_moments(const Wavepacket& packet, double phi0, double t) {
    const auto a = exact_absorber_amplitudes(packet, phi0, t);
    MomentState m;
    m.n2 = std::norm(a.psi3);
    m.cross = std::conj(a.psi2) * a.psi3;
    m.n1sz = -std::norm(a.psi2);
    m.n1n2 = 0.0;
    return m;
}

namespace {

Trajectory amplitude_run(const CouplingSchedule& lambda, const CouplingSchedule& gamma_in,
                         const AbsorberFrame& frame, const AmplitudeState& initial,
                         double t_start, double t_end, const RunOptions& options) {
    check_range(lambda, gamma_in, t_start, t_end);
    const auto grid = uniform_grid(t_start, t_end, options.grid_points);
    const CouplingSchedule& gamma = frame.gamma;

    auto rhs = [&](double t, const OdeState& y, OdeState& dy) {
        const auto l = lambda(t);
        const auto g = gamma(t);
        if (l.divergent() || g.divergent()) return false;
        const Complex lv = *l;
        const Complex gv = *g;
        dy[0] = -0.5 * std::norm(lv) * y[0];
        dy[1] = -0.5 * std::norm(gv) * y[1] - std::conj(gv) * lv * y[0];
        dy[2] = std::norm(lv * y[0] + gv * y[1]);
        return true;
    };

    std::vector<Complex> psi2, psi3, output;
    std::vector<double> p_out, n2;
    psi2.reserve(grid.size());
    psi3.reserve(grid.size());
    output.reserve(grid.size());
    p_out.reserve(grid.size());
    n2.reserve(grid.size());
    auto observe = [&](double t, const OdeState& y) {
        psi2.push_back(y[0]);
        psi3.push_back(y[1]);
        p_out.push_back(y[2].real());
        n2.push_back(std::norm(y[1]));
        output.push_back(lambda(t).value() * y[0] + gamma(t).value() * y[1]);
    };

    OdeState y0(3);
    y0 << initial.psi2, initial.psi3, Complex(initial.p_out, 0.0);
    const auto bps = merged_breakpoints(lambda, gamma);
    const auto stats = integrate_dopri5(rhs, y0, t_start, t_end, bps, grid, observe,
                                        ode_options(options, t_start));

    Trajectory traj(grid);
    if (frame.rotated) {
        for (auto& z : psi3) z *= frame.back;
    }
    traj.add_column("psi2", std::move(psi2));
    traj.add_column("psi3", std::move(psi3));
    traj.add_column("p_out", std::move(p_out));
    traj.add_column("n2", std::move(n2));
    traj.add_column("output", std::move(output));
    annotate(traj, "amplitudes", lambda, gamma_in, options);
    traj.set_meta("steps", std::to_string(stats.accepted));
    return traj;
}

} // namespace

Trajectory integrate_amplitudes(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                                const AmplitudeState& initial, double t_start, double t_end,
                                const RunOptions& options) {
    const auto frame = absorber_frame(gamma);
    AmplitudeState start = initial;
    if (frame.rotated) start.psi3 *= std::conj(frame.back);
    return amplitude_run(lambda, gamma, frame, start, t_start, t_end, options);
}

Trajectory integrate_amplitudes(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                                double t_start, double t_end, const RunOptions& options) {
    if (t_start == 0.0) {
        return integrate_amplitudes(lambda, gamma, AmplitudeState{}, t_start, t_end, options);
    }
    if (gamma.kind() == CouplingKind::ExactAbsorber && gamma.wavepacket()) {
        const auto frame = absorber_frame(gamma);
        const double phase = frame.rotated ? 0.0 : gamma.phi0();
        const auto seed = exact_absorber_amplitudes(*gamma.wavepacket(), phase, t_start);
        return amplitude_run(lambda, gamma, frame, seed, t_start, t_end, options);
    }
    throw InvalidParameter(
        "integrate_amplitudes: a start time after 0 needs an explicit initial state");
}

Trajectory exact_absorption_run(const Wavepacket& packet, double phi0, double t_end,
                                const RunOptions& options) {
    const double eps = seed_time(packet);
    const auto lambda = generator_coupling(packet);
    const auto gamma = absorber_coupling(packet, phi0);
    // The seed amplitude psi3(eps) is sqrt(head(eps)) and gets multiplied by
    // |gamma| ~ |xi| / sqrt(head), so the absolute tolerance is measured in
    // units of that amplitude.
    RunOptions scaled = options;
    scaled.tol.abs = options.tol.abs * std::sqrt(packet.head_energy(eps));
    auto traj = integrate_amplitudes(lambda, gamma, eps, t_end, scaled);
    traj.set_meta("seed_time", csv::format_double(eps));
    return traj;
}

Trajectory integrate_moments(const CouplingSchedule& lambda, const CouplingSchedule& gamma_in,
                             const MomentState& initial_in, double t_start, double t_end,
                             const RunOptions& options, MomentSystem system) {
    check_range(lambda, gamma_in, t_start, t_end);
    const auto grid = uniform_grid(t_start, t_end, options.grid_points);
    const auto bps = merged_breakpoints(lambda, gamma_in);
    const auto frame = absorber_frame(gamma_in);
    const CouplingSchedule& gamma = frame.gamma;
    MomentState initial = initial_in;
    if (frame.rotated) initial.cross *= std::conj(frame.back);

    const bool reduced = system == MomentSystem::Reduced &&
                         lambda.kind() == CouplingKind::Generator && initial.n1n2 == 0.0 &&
                         lambda.wavepacket()->tail_energy(t_start) > 0.0;

    std::vector<double> n2, n1sz, n1n2;
    std::vector<Complex> cross;
    n2.reserve(grid.size());
    n1sz.reserve(grid.size());
    n1n2.reserve(grid.size());
    cross.reserve(grid.size());
    OdeStats stats;

    if (reduced) {
        const Wavepacket& w = *lambda.wavepacket();
        const double tail0 = w.tail_energy(t_start);
        auto n1sz_at = [&](double t) { return initial.n1sz * w.tail_energy(t) / tail0; };
        auto rhs = [&](double t, const OdeState& y, OdeState& dy) {
            const auto l = lambda(t);
            const auto g = gamma(t);
            if (l.divergent() || g.divergent()) return false;
            const Complex lv = *l;
            const Complex gv = *g;
            const double n2v = y[0].real();
            dy[0] = -std::norm(gv) * n2v - 2.0 * (gv * std::conj(lv) * y[1]).real();
            dy[1] = -0.5 * (std::norm(lv) + std::norm(gv)) * y[1] + std::conj(gv) * lv * n1sz_at(t);
            return true;
        };
        auto observe = [&](double t, const OdeState& y) {
            n2.push_back(y[0].real());
            cross.push_back(y[1]);
            n1sz.push_back(n1sz_at(t));
            n1n2.push_back(0.0);
        };
        OdeState y0(2);
        y0 << Complex(initial.n2, 0.0), initial.cross;
        stats = integrate_dopri5(rhs, y0, t_start, t_end, bps, grid, observe,
                                 ode_options(options, t_start));
    } else {
        auto rhs = [&](double t, const OdeState& y, OdeState& dy) {
            const auto l = lambda(t);
            const auto g = gamma(t);
            if (l.divergent() || g.divergent()) return false;
            const Complex lv = *l;
            const Complex gv = *g;
            const double ll = std::norm(lv);
            const double gg = std::norm(gv);
            const double n2v = y[0].real();
            const double n1szv = y[2].real();
            const double n1n2v = y[3].real();
            dy[0] = -gg * n2v - 2.0 * (gv * std::conj(lv) * y[1]).real();
            dy[1] = -0.5 * (ll + gg) * y[1] + std::conj(gv) * lv * n1szv;
            dy[2] = -ll * n1szv - 2.0 * gg * n1n2v;
            dy[3] = -(ll + gg) * n1n2v;
            return true;
        };
        auto observe = [&](double, const OdeState& y) {
            n2.push_back(y[0].real());
            cross.push_back(y[1]);
            n1sz.push_back(y[2].real());
            n1n2.push_back(y[3].real());
        };
        OdeState y0(4);
        y0 << Complex(initial.n2, 0.0), initial.cross, Complex(initial.n1sz, 0.0),
            Complex(initial.n1n2, 0.0);
        stats = integrate_dopri5(rhs, y0, t_start, t_end, bps, grid, observe,
                                 ode_options(options, t_start));
    }

    if (frame.rotated) {
        for (auto& z : cross) z *= frame.back;
    }
    Trajectory traj(grid);
    traj.add_column("n2", std::move(n2));
    traj.add_column("cross", std::move(cross));
    traj.add_column("n1sz", std::move(n1sz));
    traj.add_column("n1n2", std::move(n1n2));
    annotate(traj, "moments", lambda, gamma_in, options);
    traj.set_meta("system", reduced ? "reduced" : "full");
    traj.set_meta("steps", std::to_string(stats.accepted));
    return traj;
}

Trajectory integrate_moments(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                             double t_end, const RunOptions& options, MomentSystem system) {
    return integrate_moments(lambda, gamma, MomentState{}, 0.0, t_end, options, system);
}

std::pair<Complex, Complex> zero_dynamics_derivative(Complex lambda, Complex gamma,
                                                     Complex alpha, Complex beta) {
    return {0.5 * gamma * std::conj(lambda) * beta, -0.5 * std::conj(gamma) * lambda * alpha};
}

Trajectory zero_dynamics_solve(const Wavepacket& packet, double phi0,
                               std::span<const double> times) {
    const auto lambda = generator_coupling(packet);
    std::vector<Complex> alpha, beta, gamma;
    std::vector<double> constraint;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double t : times) {
        const Complex a = std::sqrt(packet.tail_energy(t));
        const Complex b = std::polar(std::sqrt(packet.head_energy(t)), -phi0);
        const Complex l = lambda(t).value();
        alpha.push_back(a);
        beta.push_back(b);
        if (std::abs(b) > 0.0) {
            const Complex g = -l * a / b;
            gamma.push_back(g);
            constraint.push_back(std::abs(l * a + b * g));
        } else {
            gamma.emplace_back(nan, nan);
            constraint.push_back(std::abs(l * a));
        }
    }
    Trajectory traj(std::vector<double>(times.begin(), times.end()));
    traj.add_column("alpha", std::move(alpha));
    traj.add_column("beta", std::move(beta));
    traj.add_column("gamma", std::move(gamma));
    traj.add_column("constraint", std::move(constraint));
    traj.set_meta("formulation", "zero_dynamics");
    traj.set_meta("wavepacket", packet.describe());
    traj.set_meta("phi0", csv::format_double(phi0));
    return traj;
}

ResidualReport residual_check(const Trajectory& trajectory) {
    for (const char* c : {"psi2", "psi3", "p_out", "output"}) {
        if (!trajectory.has(c)) {
            throw InvalidParameter(std::string("residual_check: missing column '") + c + "'");
        }
    }
    const auto& psi2 = trajectory.complex("psi2");
    const auto& psi3 = trajectory.complex("psi3");
    const auto& p_out = trajectory.real("p_out");
    const auto& output = trajectory.complex("output");
    ResidualReport r;
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        r.conservation =
            std::max(r.conservation, std::abs(std::norm(psi2[i]) + std::norm(psi3[i]) + p_out[i] - 1.0));
        r.max_output = std::max(r.max_output, std::abs(output[i]));
    }
    r.exact_absorber = trajectory.meta_value("gamma") == "exact";
    return r;
}

} // namespace qabsorb
