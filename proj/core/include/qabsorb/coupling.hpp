#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qabsorb/divergent.hpp"
#include "qabsorb/wavepacket.hpp"

namespace qabsorb {

using Complex = std::complex<double>;
using CouplingValue = MaybeDivergent<Complex>;

enum class CouplingKind { Generator, ExactAbsorber, TruncatedAbsorber, Constant };

// Remaining generator energy below which lambda(t) is defined as 0.
inline constexpr double kTailCutoff = 1e-14;

// A complex coupling amplitude as a function of time (units 1/sqrt(time)).
//
//   Generator:          lambda(t)  =  xi(t) / sqrt(tail(t))
//   ExactAbsorber:      gamma(t)   = -e^{i phi0} xi(t) / sqrt(head(t))
//   TruncatedAbsorber:  gamma_T(t) =  gamma(max(t, T))
//   Constant:           a fixed value (decoupled absorber, unit tests)
//
// The exact absorber diverges wherever head(t) = 0, in particular at t = 0;
// evaluate() reports that as a divergent value.
class CouplingSchedule {
public:
    CouplingKind kind() const noexcept { return kind_; }
    double phi0() const noexcept { return phi0_; }
    std::optional<double> truncation_time() const noexcept { return truncation_; }

    // 0 for the exact absorber; absent otherwise.
    std::optional<double> singular_at() const noexcept;

    // Times where the schedule is continuous but not smooth. Integrators
    // restart there.
    std::vector<double> breakpoints() const;

    CouplingValue evaluate(double t) const;
    CouplingValue operator()(double t) const { return evaluate(t); }

    const std::optional<Wavepacket>& wavepacket() const noexcept { return packet_; }

    static CouplingSchedule constant(Complex value);

private:
    CouplingSchedule() = default;

    CouplingKind kind_ = CouplingKind::Constant;
    std::optional<Wavepacket> packet_;
    double phi0_ = 0.0;
    std::optional<double> truncation_;
    Complex constant_{0.0, 0.0};
    Complex truncated_value_{0.0, 0.0};

    friend CouplingSchedule generator_coupling(const Wavepacket&);
    friend CouplingSchedule absorber_coupling(const Wavepacket&, double);
    friend CouplingSchedule truncated_coupling(const Wavepacket&, double, double);
};

CouplingSchedule generator_coupling(const Wavepacket& packet);
CouplingSchedule absorber_coupling(const Wavepacket& packet, double phi0 = 0.0);

// Throws InvalidParameter if T <= 0 or head(T) = 0.
CouplingSchedule truncated_coupling(const Wavepacket& packet, double phi0, double truncation);

// Integral of |g|^2 over [s, t]. The exact absorber uses
// ln(head(t) / head(s)) and is divergent for s = 0 < t; other kinds use
// adaptive Gauss-Kronrod quadrature split at breakpoints.
MaybeDivergent<double> coupling_energy_integral(const CouplingSchedule& g, double s, double t);

// exp(-1/2 * integral of |g|^2 over [s, t]); always finite. For the exact
// absorber: sqrt(head(s)/head(t)) if s > 0, 0 if s = 0 < t, 1 if s = t = 0.
double coupling_decay_weight(const CouplingSchedule& g, double s, double t);

} // namespace qabsorb
