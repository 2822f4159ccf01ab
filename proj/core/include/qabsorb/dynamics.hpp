#pragma once

#include <optional>
#include <span>

#include "qabsorb/coupling.hpp"
#include "qabsorb/ode.hpp"
#include "qabsorb/trajectory.hpp"
#include "qabsorb/wavepacket.hpp"

namespace qabsorb {

// Single-excitation sector of the cascade. psi2 is the amplitude of
// |1>_gen |0>_abs, psi3 of |0>_gen |1>_abs; the doubly excited amplitude is
// identically zero and not stored. p_out is the probability that the
// excitation has left through the output field.
struct AmplitudeState {
    Complex psi2{1.0, 0.0};
    Complex psi3{0.0, 0.0};
    double p_out = 0.0;
};

// <n2>, <s1+ s2->, <n1 s2z>, <n1 n2>. Defaults are the state at t = 0.
struct MomentState {
    double n2 = 0.0;
    Complex cross{0.0, 0.0};
    double n1sz = -1.0;
    double n1n2 = 0.0;
};

struct RunOptions {
    Tolerances tol;
    std::size_t grid_points = 2001;
};

// Head energy at which exact-absorber runs are started.
inline constexpr double kSeedHeadEnergy = 1e-12;

// Smallest t with head(t) >= head_target.
double seed_time(const Wavepacket& packet, double head_target = kSeedHeadEnergy);

// Analytic state under the exact absorber coupling:
// psi2 = sqrt(tail), psi3 = e^{-i phi0} sqrt(head), p_out = 0.
AmplitudeState exact_absorber_amplitudes(const Wavepacket& packet, double phi0, double t);
MomentState exact_absorber_moments(const Wavepacket& packet, double phi0, double t);

// Steps d psi2/dt = -|l|^2/2 psi2,
//       d psi3/dt = -|g|^2/2 psi3 - g^* l psi2,
//       d p_out/dt = |l psi2 + g psi3|^2
// and records psi2, psi3, p_out, n2 = |psi3|^2 and the output amplitude
// `output` = l psi2 + g psi3 on a uniform grid over [t_start, t_end].
Trajectory integrate_amplitudes(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                                const AmplitudeState& initial, double t_start, double t_end,
                                const RunOptions& options = {});

// Starts from the t = 0 state, or, when t_start > 0 and gamma is the exact
// absorber, from the analytic state at t_start.
Trajectory integrate_amplitudes(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                                double t_start, double t_end, const RunOptions& options = {});

// Exact-absorber run seeded at seed_time(packet). The absolute tolerance is
// rescaled by sqrt(head(eps)), the size of the seeded absorber amplitude.
Trajectory exact_absorption_run(const Wavepacket& packet, double phi0, double t_end,
                                const RunOptions& options = {});

enum class MomentSystem {
    // n1n2 = 0 and n1sz = n1sz(t_start) tail(t) / tail(t_start) in closed
    // form; only n2 and the cross term are stepped.
    Reduced,
    // All four equations stepped.
    Full,
};

// Moment equations
//   d<n2>/dt      = -|g|^2 <n2> - 2 Re(g l^* <s1+ s2->)
//   d<s1+s2->/dt  = -(|l|^2 + |g|^2)/2 <s1+ s2-> + g^* l <n1 s2z>
//   d<n1 s2z>/dt  = -|l|^2 <n1 s2z> - 2 |g|^2 <n1 n2>
//   d<n1 n2>/dt   = -(|l|^2 + |g|^2) <n1 n2>
// Columns: n2, cross, n1sz, n1n2. The reduced system needs a generator
// lambda and n1n2 = 0 initially; otherwise the full system is used.
Trajectory integrate_moments(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                             const MomentState& initial, double t_start, double t_end,
                             const RunOptions& options = {},
                             MomentSystem system = MomentSystem::Reduced);

Trajectory integrate_moments(const CouplingSchedule& lambda, const CouplingSchedule& gamma,
                             double t_end, const RunOptions& options = {},
                             MomentSystem system = MomentSystem::Reduced);

// Zero-dynamics design: alpha = sqrt(tail), beta = e^{-i phi0} sqrt(head)
// and gamma recovered from lambda alpha + beta gamma = 0. Columns alpha,
// beta, gamma (NaN where beta = 0, i.e. where gamma diverges) and
// constraint = |lambda alpha + beta gamma|.
Trajectory zero_dynamics_solve(const Wavepacket& packet, double phi0,
                               std::span<const double> times);

// (d alpha/dt, d beta/dt) = (g l^* beta / 2, -g^* l alpha / 2) from
// d phi = -i H phi dt with H = Im{g^* l s2+ s1-}.
std::pair<Complex, Complex> zero_dynamics_derivative(Complex lambda, Complex gamma,
                                                     Complex alpha, Complex beta);

struct ResidualReport {
    // max | |psi2|^2 + |psi3|^2 + p_out - 1 |
    double conservation = 0.0;
    // max |l psi2 + g psi3| over the grid.
    double max_output = 0.0;
    bool exact_absorber = false;
};

// Needs the psi2, psi3, p_out and output columns of an amplitude run.
ResidualReport residual_check(const Trajectory& trajectory);

} // namespace qabsorb
