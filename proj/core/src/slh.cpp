#include "qabsorb/slh.hpp"

#include <algorithm>

#include <unsupported/Eigen/KroneckerProduct>

#include "qabsorb/error.hpp"

namespace qabsorb {

namespace qubit {

namespace {

Eigen::Matrix2cd make(double a, double b, double c, double d) {
    Eigen::Matrix2cd m;
    m << a, b, c, d;
    return m;
}

} // namespace

const Eigen::Matrix2cd& lower() {
    static const Eigen::Matrix2cd m = make(0, 0, 1, 0);
    return m;
}

const Eigen::Matrix2cd& raise() {
    static const Eigen::Matrix2cd m = lower().adjoint();
    return m;
}

const Eigen::Matrix2cd& number() {
    static const Eigen::Matrix2cd m = raise() * lower();
    return m;
}

const Eigen::Matrix2cd& sigma_z() {
    static const Eigen::Matrix2cd m = raise() * lower() - lower() * raise();
    return m;
}

const Eigen::Matrix2cd& identity() {
    static const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    return m;
}

Operator kron(const Operator& a, const Operator& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Operator on_generator(const Operator& x) { return kron(x, identity()); }
Operator on_absorber(const Operator& x) { return kron(identity(), x); }

int basis_index(bool generator_excited, bool absorber_excited) {
    return 2 * (generator_excited ? 0 : 1) + (absorber_excited ? 0 : 1);
}

} // namespace qubit

namespace {

void require_square(const Operator& m, int dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim) {
        throw InvalidParameter(std::string(what) + ": dimension mismatch");
    }
}

const Operator& joint(int which) {
    // 0: s1-, 1: s2-, 2: identity
    static const Operator ops[] = {
        qubit::on_generator(qubit::lower()),
        qubit::on_absorber(qubit::lower()),
        Operator::Identity(4, 4),
    };
    return ops[which];
}

} // namespace

SlhTriple::SlhTriple(int dim, SlhEvaluator evaluator)
    : dim_(dim), evaluator_(std::move(evaluator)) {
    if (dim <= 0) {
        throw InvalidParameter("SlhTriple: dimension must be positive");
    }
    if (!evaluator_) {
        throw InvalidParameter("SlhTriple: empty evaluator");
    }
}

SlhTriple SlhTriple::constant(Operator s, Operator l, Operator h) {
    const int dim = static_cast<int>(s.rows());
    require_square(s, dim, "SlhTriple::constant");
    require_square(l, dim, "SlhTriple::constant");
    require_square(h, dim, "SlhTriple::constant");
    SlhSnapshot snap{std::move(s), std::move(l), std::move(h)};
    check_snapshot(snap);
    return SlhTriple(dim, [snap](double) -> MaybeDivergent<SlhSnapshot> { return snap; });
}

MaybeDivergent<SlhSnapshot> SlhTriple::at(double t) const { return evaluator_(t); }

SlhTriple SlhTriple::with_breakpoints(std::vector<double> bps) const {
    SlhTriple out = *this;
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    out.breakpoints_ = std::move(bps);
    return out;
}

void check_snapshot(const SlhSnapshot& snap, double tol) {
    const auto dim = snap.s.rows();
    require_square(snap.s, static_cast<int>(dim), "check_snapshot");
    require_square(snap.l, static_cast<int>(dim), "check_snapshot");
    require_square(snap.h, static_cast<int>(dim), "check_snapshot");
    const Operator eye = Operator::Identity(dim, dim);
    if ((snap.s * snap.s.adjoint() - eye).cwiseAbs().maxCoeff() > tol) {
        throw InvalidParameter("SLH triple: S is not unitary");
    }
    if ((snap.h - snap.h.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw InvalidParameter("SLH triple: H is not Hermitian");
    }
}

Operator hermitian_imag(const Operator& a) {
    return (a - a.adjoint()) / Complex(0.0, 2.0);
}

SlhSnapshot series_product(const SlhSnapshot& g2, const SlhSnapshot& g1) {
    if (g1.s.rows() != g2.s.rows()) {
        throw InvalidParameter("series_product: dimension mismatch");
    }
    SlhSnapshot out;
    out.s = g2.s * g1.s;
    out.l = g2.l + g2.s * g1.l;
    out.h = g1.h + g2.h + hermitian_imag(g2.l.adjoint() * g2.s * g1.l);
    return out;
}

SlhTriple series_product(const SlhTriple& g2, const SlhTriple& g1) {
    if (g1.dim() != g2.dim()) {
        throw InvalidParameter("series_product: dimension mismatch");
    }
    auto bps = g1.breakpoints();
    bps.insert(bps.end(), g2.breakpoints().begin(), g2.breakpoints().end());
    SlhTriple out(g1.dim(), [g2, g1](double t) -> MaybeDivergent<SlhSnapshot> {
        auto a = g2.at(t);
        if (a.divergent()) return MaybeDivergent<SlhSnapshot>::divergent_at(t);
        auto b = g1.at(t);
        if (b.divergent()) return MaybeDivergent<SlhSnapshot>::divergent_at(t);
        return series_product(*a, *b);
    });
    return out.with_breakpoints(std::move(bps));
}

SlhTriple generator_node(const CouplingSchedule& lambda) {
    SlhTriple out(4, [lambda](double t) -> MaybeDivergent<SlhSnapshot> {
        const auto l = lambda(t);
        if (l.divergent()) return MaybeDivergent<SlhSnapshot>::divergent_at(t);
        return SlhSnapshot{joint(2), *l * joint(0), Operator::Zero(4, 4)};
    });
    return out.with_breakpoints(lambda.breakpoints());
}

SlhTriple absorber_node(const CouplingSchedule& gamma) {
    SlhTriple out(4, [gamma](double t) -> MaybeDivergent<SlhSnapshot> {
        const auto g = gamma(t);
        if (g.divergent()) return MaybeDivergent<SlhSnapshot>::divergent_at(t);
        return SlhSnapshot{joint(2), *g * joint(1), Operator::Zero(4, 4)};
    });
    return out.with_breakpoints(gamma.breakpoints());
}

SlhTriple generator_absorber_cascade(const CouplingSchedule& lambda,
                                     const CouplingSchedule& gamma) {
    // s2+ s1- and its adjoint s2- s1+.
    static const Operator transfer = joint(1).adjoint() * joint(0);
    static const Operator transfer_back = transfer.adjoint();
    auto bps = lambda.breakpoints();
    const auto gb = gamma.breakpoints();
    bps.insert(bps.end(), gb.begin(), gb.end());
    SlhTriple out(4, [lambda, gamma](double t) -> MaybeDivergent<SlhSnapshot> {
        const auto l = lambda(t);
        const auto g = gamma(t);
        if (l.divergent() || g.divergent()) {
            return MaybeDivergent<SlhSnapshot>::divergent_at(t);
        }
        const Complex lam = *l;
        const Complex gam = *g;
        SlhSnapshot snap;
        snap.s = joint(2);
        snap.l = lam * joint(0) + gam * joint(1);
        snap.h = (std::conj(gam) * lam * transfer - gam * std::conj(lam) * transfer_back) /
                 Complex(0.0, 2.0);
        return snap;
    });
    return out.with_breakpoints(std::move(bps));
}

Operator heisenberg_generator(const SlhSnapshot& g, const Operator& x) {
    require_square(x, static_cast<int>(g.l.rows()), "heisenberg_generator");
    const Operator& l = g.l;
    const Operator ld = l.adjoint();
    const Operator x_l = x * l - l * x;
    const Operator ld_x = ld * x - x * ld;
    const Operator x_h = x * g.h - g.h * x;
    return 0.5 * ld * x_l + 0.5 * ld_x * l - Complex(0.0, 1.0) * x_h;
}

Operator heisenberg_generator(const SlhTriple& g, const Operator& x, double t) {
    const auto snap = g.at(t);
    if (snap.divergent()) {
        throw DivergentCoupling("heisenberg_generator: coupling diverges", t);
    }
    return heisenberg_generator(*snap, x);
}

Operator cascade_product_generator(Complex lambda, Complex gamma,
                                   const Eigen::Matrix2cd& x1,
                                   const Eigen::Matrix2cd& x2) {
    using qubit::on_absorber;
    using qubit::on_generator;
    const Operator X1 = on_generator(x1);
    const Operator X2 = on_absorber(x2);
    const Operator s1m = on_generator(qubit::lower());
    const Operator s1p = on_generator(qubit::raise());
    const Operator s2m = on_absorber(qubit::lower());
    const Operator s2p = on_absorber(qubit::raise());
    auto comm = [](const Operator& a, const Operator& b) -> Operator { return a * b - b * a; };

    const Operator term_feed = std::conj(gamma) * lambda * X1 * s1m * comm(s2p, X2);
    const Operator term_generator =
        0.5 * std::norm(lambda) * (s1p * comm(X1, s1m) + comm(s1p, X1) * s1m) * X2;
    const Operator term_back = std::conj(lambda) * gamma * s1p * X1 * comm(X2, s2m);
    const Operator term_absorber =
        0.5 * std::norm(gamma) * (s2p * comm(X2, s2m) + comm(s2p, X2) * s2m) * X1;
    return term_feed + term_generator + term_back + term_absorber;
}

} // namespace qabsorb
