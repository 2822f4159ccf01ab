#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qabsorb/error.hpp"
#include "qabsorb/slh.hpp"

using namespace qabsorb;
using qtest::max_abs;

namespace {

SlhTriple random_triple(qtest::Random& rnd, int dim = 4) {
    return SlhTriple::constant(rnd.unitary(dim), rnd.matrix(dim), rnd.hermitian(dim));
}

double distance(const SlhSnapshot& a, const SlhSnapshot& b) {
    return std::max({max_abs(a.s - b.s), max_abs(a.l - b.l), max_abs(a.h - b.h)});
}

// All 16 products of 2x2 matrix units E_ab (generator) and E_cd (absorber).
std::vector<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>> unit_products() {
    std::vector<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>> out;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            Eigen::Matrix2cd x1 = Eigen::Matrix2cd::Zero(), x2 = Eigen::Matrix2cd::Zero();
            x1(a / 2, a % 2) = 1.0;
            x2(b / 2, b % 2) = 1.0;
            out.emplace_back(x1, x2);
        }
    }
    return out;
}

} // namespace

TEST(Qubit, Operators) {
    Eigen::Vector2cd excited(1, 0), ground(0, 1);
    EXPECT_LT((qubit::lower() * excited - ground).norm(), 1e-15);
    EXPECT_LT((qubit::lower() * ground).norm(), 1e-15);
    EXPECT_LT(max_abs(qubit::number() - excited * excited.adjoint()), 1e-15);
    EXPECT_EQ(qubit::sigma_z()(0, 0), Complex(1.0));
    EXPECT_EQ(qubit::sigma_z()(1, 1), Complex(-1.0));
}

TEST(Qubit, BasisOrder) {
    EXPECT_EQ(qubit::basis_index(true, true), 0);
    EXPECT_EQ(qubit::basis_index(true, false), 1);
    EXPECT_EQ(qubit::basis_index(false, true), 2);
    EXPECT_EQ(qubit::basis_index(false, false), 3);
    const Operator n1 = qubit::on_generator(qubit::number());
    const Operator n2 = qubit::on_absorber(qubit::number());
    EXPECT_EQ(n1(1, 1), Complex(1.0));
    EXPECT_EQ(n2(2, 2), Complex(1.0));
    EXPECT_EQ(n2(1, 1), Complex(0.0));
}

TEST(Snapshot, ValidatesUnitarityAndHermiticity) {
    qtest::Random rnd(1);
    EXPECT_NO_THROW(random_triple(rnd));
    EXPECT_THROW(SlhTriple::constant(2.0 * Operator::Identity(4, 4), rnd.matrix(4),
                                     rnd.hermitian(4)),
                 InvalidParameter);
    EXPECT_THROW(SlhTriple::constant(Operator::Identity(4, 4), rnd.matrix(4), rnd.matrix(4)),
                 InvalidParameter);
    EXPECT_THROW(SlhTriple::constant(Operator::Identity(4, 4), rnd.matrix(3), rnd.hermitian(4)),
                 InvalidParameter);
}

TEST(HermitianImag, Definition) {
    qtest::Random rnd(2);
    const Operator a = rnd.matrix(4);
    const Operator im = hermitian_imag(a);
    EXPECT_LT(max_abs(im - im.adjoint()), 1e-14);
    const Operator herm = rnd.hermitian(4);
    EXPECT_LT(max_abs(hermitian_imag(Complex(0, 1) * herm) - herm), 1e-14);
}

TEST(SeriesProductProperty, Associativity) {
    qtest::Random rnd(3);
    for (int k = 0; k < 100; ++k) {
        const auto a = random_triple(rnd), b = random_triple(rnd), c = random_triple(rnd);
        const auto left = series_product(series_product(a, b), c).at(0.0).value();
        const auto right = series_product(a, series_product(b, c)).at(0.0).value();
        ASSERT_LT(distance(left, right), 1e-12);
    }
}

TEST(SeriesProductProperty, IdentityElement) {
    qtest::Random rnd(4);
    const auto id = SlhTriple::constant(Operator::Identity(4, 4), Operator::Zero(4, 4),
                                        Operator::Zero(4, 4));
    for (int k = 0; k < 100; ++k) {
        const auto g = random_triple(rnd);
        const auto ref = g.at(0.0).value();
        ASSERT_LT(distance(series_product(id, g).at(0.0).value(), ref), 1e-12);
        ASSERT_LT(distance(series_product(g, id).at(0.0).value(), ref), 1e-12);
    }
}

TEST(SeriesProduct, DefiningFormula) {
    qtest::Random rnd(5);
    const auto g1 = random_triple(rnd).at(0.0).value();
    const auto g2 = random_triple(rnd).at(0.0).value();
    const auto p = series_product(g2, g1);
    EXPECT_LT(max_abs(p.s - g2.s * g1.s), 1e-14);
    EXPECT_LT(max_abs(p.l - (g2.l + g2.s * g1.l)), 1e-14);
    const Operator cross = g2.l.adjoint() * g2.s * g1.l;
    const Operator im = (cross - cross.adjoint()) / Complex(0.0, 2.0);
    EXPECT_LT(max_abs(p.h - (g1.h + g2.h + im)), 1e-13);
}

TEST(Cascade, ReproducedExactlyFromSingleNodes) {
    qtest::Random rnd(6);
    for (int k = 0; k < 50; ++k) {
        const auto L = CouplingSchedule::constant(rnd.complex());
        const auto G = CouplingSchedule::constant(rnd.complex());
        const auto composed = series_product(absorber_node(G), generator_node(L)).at(0.0).value();
        const auto direct = generator_absorber_cascade(L, G).at(0.0).value();
        EXPECT_EQ(max_abs(composed.s - direct.s), 0.0);
        EXPECT_EQ(max_abs(composed.l - direct.l), 0.0);
        EXPECT_EQ(max_abs(composed.h - direct.h), 0.0);
    }
}

TEST(Cascade, ExplicitOperators) {
    const Complex l(0.3, 0.4), g(-1.2, 0.5);
    const auto snap = generator_absorber_cascade(CouplingSchedule::constant(l),
                                                 CouplingSchedule::constant(g))
                          .at(0.0)
                          .value();
    const Operator s1 = qubit::on_generator(qubit::lower());
    const Operator s2 = qubit::on_absorber(qubit::lower());
    EXPECT_LT(max_abs(snap.l - (l * s1 + g * s2)), 1e-15);
    const Operator h = (std::conj(g) * l * s2.adjoint() * s1 - g * std::conj(l) * s2 * s1.adjoint()) /
                       Complex(0.0, 2.0);
    EXPECT_LT(max_abs(snap.h - h), 1e-15);
}

TEST(Cascade, DivergencePropagates) {
    const auto w = make_exponential(1.0);
    const auto cascade = generator_absorber_cascade(generator_coupling(w), absorber_coupling(w));
    EXPECT_TRUE(cascade.at(0.0).divergent());
    EXPECT_FALSE(cascade.at(0.5).divergent());
    EXPECT_THROW(cascade.l_op(0.0), DivergentCoupling);
    EXPECT_THROW(heisenberg_generator(cascade, Operator::Identity(4, 4), 0.0), DivergentCoupling);
}

TEST(Cascade, MergesBreakpoints) {
    const auto w = make_exponential(1.0);
    const auto cascade =
        generator_absorber_cascade(generator_coupling(w), truncated_coupling(w, 0.0, 0.25));
    ASSERT_EQ(cascade.breakpoints().size(), 1u);
    EXPECT_EQ(cascade.breakpoints()[0], 0.25);
}

TEST(HeisenbergGenerator, MatchesFourTermFormOnBasis) {
    qtest::Random rnd(7);
    const auto products = unit_products();
    for (int k = 0; k < 50; ++k) {
        const Complex l = rnd.complex(), g = rnd.complex();
        const auto snap = generator_absorber_cascade(CouplingSchedule::constant(l),
                                                     CouplingSchedule::constant(g))
                              .at(0.0)
                              .value();
        for (const auto& [x1, x2] : products) {
            const Operator lhs = heisenberg_generator(snap, qubit::kron(x1, x2));
            ASSERT_LT(max_abs(lhs - cascade_product_generator(l, g, x1, x2)), 1e-12);
        }
    }
}

TEST(HeisenbergGenerator, IdentityIsAnnihilated) {
    qtest::Random rnd(8);
    const auto g = random_triple(rnd).at(0.0).value();
    EXPECT_LT(max_abs(heisenberg_generator(g, Operator::Identity(4, 4))), 1e-13);
}

TEST(HeisenbergGenerator, CommutatorWithHamiltonianOnly) {
    qtest::Random rnd(9);
    const Operator h = rnd.hermitian(4), x = rnd.matrix(4);
    SlhSnapshot g{Operator::Identity(4, 4), Operator::Zero(4, 4), h};
    EXPECT_LT(max_abs(heisenberg_generator(g, x) - Complex(0, -1) * (x * h - h * x)), 1e-13);
}

// Moment right-hand sides read off from the generator. For any state in the
// single-excitation sector these must equal the coded moment equations.
TEST(HeisenbergGenerator, MomentEquationsOnRandomStates) {
    qtest::Random rnd(10);
    const Operator s1 = qubit::on_generator(qubit::lower());
    const Operator s2 = qubit::on_absorber(qubit::lower());
    const Operator n1 = qubit::on_generator(qubit::number());
    const Operator n2 = qubit::on_absorber(qubit::number());
    const Operator sz2 = qubit::on_absorber(qubit::sigma_z());
    for (int k = 0; k < 50; ++k) {
        const Complex l = rnd.complex(), g = rnd.complex();
        const auto snap = generator_absorber_cascade(CouplingSchedule::constant(l),
                                                     CouplingSchedule::constant(g))
                              .at(0.0)
                              .value();
        const Operator rho = rnd.density(4);
        auto ev = [&](const Operator& x) { return (rho * x).trace(); };
        const Complex cross = ev(s1.adjoint() * s2);
        const double ll = std::norm(l), gg = std::norm(g);
        EXPECT_NEAR(std::abs(ev(heisenberg_generator(snap, n2)) -
                             (-gg * ev(n2) - 2.0 * (g * std::conj(l) * cross).real())),
                    0.0, 1e-12);
        EXPECT_NEAR(std::abs(ev(heisenberg_generator(snap, s1.adjoint() * s2)) -
                             (-0.5 * (ll + gg) * cross + std::conj(g) * l * ev(n1 * sz2))),
                    0.0, 1e-12);
        EXPECT_NEAR(std::abs(ev(heisenberg_generator(snap, n1 * sz2)) -
                             (-ll * ev(n1 * sz2) - 2.0 * gg * ev(n1 * n2))),
                    0.0, 1e-12);
        EXPECT_NEAR(std::abs(ev(heisenberg_generator(snap, n1 * n2)) + (ll + gg) * ev(n1 * n2)),
                    0.0, 1e-12);
    }
}
