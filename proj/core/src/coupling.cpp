#include "qabsorb/coupling.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qabsorb/error.hpp"

namespace qabsorb {

namespace {

Complex exact_absorber_value(const Wavepacket& w, double phi0, double t, bool* divergent) {
    const double head = w.head_energy(t);
    if (!(head > 0.0)) {
        *divergent = true;
        return {};
    }
    *divergent = false;
    return -std::polar(1.0, phi0) * w.amplitude(t) / std::sqrt(head);
}

double quadrature(const CouplingSchedule& g, double a, double b) {
    if (b <= a) return 0.0;
    auto integrand = [&](double x) { return std::norm(g.evaluate(x).value()); };
    std::vector<double> cuts{a};
    for (double bp : g.breakpoints()) {
        if (bp > a && bp < b) cuts.push_back(bp);
    }
    cuts.push_back(b);
    // Each piece is mapped onto [0, 1]: the Kronrod error estimate does not
    // cope with physical time scales of order 1e-10.
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double span = cuts[i + 1] - cuts[i];
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double u) { return span * integrand(lo + span * u); }, 0.0, 1.0, 15, 1e-12);
    }
    return total;
}

} // namespace

std::optional<double> CouplingSchedule::singular_at() const noexcept {
    if (kind_ == CouplingKind::ExactAbsorber) return 0.0;
    return std::nullopt;
}

std::vector<double> CouplingSchedule::breakpoints() const {
    if (truncation_) return {*truncation_};
    return {};
}

CouplingValue CouplingSchedule::evaluate(double t) const {
    switch (kind_) {
    case CouplingKind::Constant:
        return constant_;
    case CouplingKind::Generator: {
        if (t < 0.0) return Complex{};
        const double tail = packet_->tail_energy(t);
        if (tail <= kTailCutoff) return Complex{};
        return packet_->amplitude(t) / std::sqrt(tail);
    }
    case CouplingKind::ExactAbsorber: {
        if (t < 0.0) return CouplingValue::divergent_at(t);
        bool divergent = false;
        const Complex v = exact_absorber_value(*packet_, phi0_, t, &divergent);
        if (divergent) return CouplingValue::divergent_at(t);
        return v;
    }
    case CouplingKind::TruncatedAbsorber: {
        if (t <= *truncation_) return truncated_value_;
        bool divergent = false;
        return exact_absorber_value(*packet_, phi0_, t, &divergent);
    }
    }
    return Complex{};
}

CouplingSchedule CouplingSchedule::constant(Complex value) {
    CouplingSchedule g;
    g.kind_ = CouplingKind::Constant;
    g.constant_ = value;
    return g;
}

CouplingSchedule generator_coupling(const Wavepacket& packet) {
    CouplingSchedule g;
    g.kind_ = CouplingKind::Generator;
    g.packet_ = packet;
    return g;
}

CouplingSchedule absorber_coupling(const Wavepacket& packet, double phi0) {
    if (!std::isfinite(phi0)) {
        throw InvalidParameter("absorber_coupling: phi0 must be finite");
    }
    CouplingSchedule g;
    g.kind_ = CouplingKind::ExactAbsorber;
    g.packet_ = packet;
    g.phi0_ = phi0;
    return g;
}

CouplingSchedule truncated_coupling(const Wavepacket& packet, double phi0, double truncation) {
    if (!(truncation > 0.0) || !std::isfinite(truncation)) {
        throw InvalidParameter("truncated_coupling: T must be positive");
    }
    if (!std::isfinite(phi0)) {
        throw InvalidParameter("truncated_coupling: phi0 must be finite");
    }
    bool divergent = false;
    const Complex at_t = exact_absorber_value(packet, phi0, truncation, &divergent);
    if (divergent) {
        throw InvalidParameter("truncated_coupling: wavepacket has no energy on [0, T]");
    }
    CouplingSchedule g;
    g.kind_ = CouplingKind::TruncatedAbsorber;
    g.packet_ = packet;
    g.phi0_ = phi0;
    g.truncation_ = truncation;
    g.truncated_value_ = at_t;
    return g;
}

MaybeDivergent<double> coupling_energy_integral(const CouplingSchedule& g, double s, double t) {
    if (!(s >= 0.0) || !(t >= s)) {
        throw InvalidParameter("coupling_energy_integral: need 0 <= s <= t");
    }
    if (s == t) return 0.0;
    if (g.kind() == CouplingKind::ExactAbsorber) {
        const auto& w = *g.wavepacket();
        const double head_s = w.head_energy(s);
        const double head_t = w.head_energy(t);
        if (!(head_s > 0.0)) return MaybeDivergent<double>::divergent_at(s);
        return std::log(head_t / head_s);
    }
    return quadrature(g, s, t);
}

double coupling_decay_weight(const CouplingSchedule& g, double s, double t) {
    if (!(s >= 0.0) || !(t >= s)) {
        throw InvalidParameter("coupling_decay_weight: need 0 <= s <= t");
    }
    if (s == t) return 1.0;
    if (g.kind() == CouplingKind::ExactAbsorber) {
        const auto& w = *g.wavepacket();
        const double head_s = w.head_energy(s);
        if (!(head_s > 0.0)) return 0.0;
        return std::sqrt(head_s / w.head_energy(t));
    }
    return std::exp(-0.5 * quadrature(g, s, t));
}

} // namespace qabsorb
