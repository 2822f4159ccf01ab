#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "qabsorb/error.hpp"
#include "qabsorb/oracle.hpp"

using namespace qabsorb;
using qtest::max_abs;

namespace {

constexpr double kRate = 7.2e7;
constexpr double kT1 = 10.0 / kRate;

const Operator& n1() {
    static const Operator m = qubit::on_generator(qubit::number());
    return m;
}
const Operator& n2() {
    static const Operator m = qubit::on_absorber(qubit::number());
    return m;
}

Eigen::VectorXcd basis(bool gen, bool abs) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v[qubit::basis_index(gen, abs)] = 1.0;
    return v;
}

} // namespace

TEST(DensityMatrixType, Validation) {
    EXPECT_NO_THROW(DensityMatrix(Operator::Identity(4, 4) / 4.0));
    EXPECT_THROW(DensityMatrix(Operator::Identity(4, 4)), InvalidParameter);
    Operator bad = Operator::Zero(4, 4);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix{bad}, InvalidParameter);
    Operator nonherm = Operator::Identity(4, 4) / 4.0;
    nonherm(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{nonherm}, InvalidParameter);
    EXPECT_THROW(DensityMatrix(Operator::Identity(3, 2)), InvalidParameter);
}

TEST(Expectation, Examples) {
    qtest::Random rnd(41);
    const Operator rho = rnd.density(4);
    EXPECT_NEAR(std::abs(expectation(rho, Operator::Identity(4, 4)) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(expectation(DensityMatrix::pure(basis(false, true)), n2()) - 1.0), 0.0,
                1e-15);
    const Operator n1sz2 = n1() * qubit::on_absorber(qubit::sigma_z());
    EXPECT_NEAR(std::abs(expectation(Operator::Identity(4, 4) / 4.0, n1sz2)), 0.0, 1e-15);
    const Operator h = rnd.hermitian(4);
    EXPECT_LT(std::abs(expectation(rho, h).imag()), 1e-12);
    EXPECT_NEAR(std::abs(expectation(rho, h) - (rho * h).trace()), 0.0, 1e-13);
    EXPECT_THROW(expectation(rho, Operator::Identity(2, 2)), InvalidParameter);
}

TEST(MasterEquation, ClosedSystemIsStatic) {
    qtest::Random rnd(42);
    const Operator rho0 = rnd.density(4);
    const auto g = SlhTriple::constant(Operator::Identity(4, 4), Operator::Zero(4, 4),
                                       Operator::Zero(4, 4));
    RunOptions o;
    o.grid_points = 11;
    const auto run = master_equation_evolve(g, DensityMatrix(rho0), 0.0, 1.0, o);
    for (const auto& rho : run.snapshots) EXPECT_LT(max_abs(rho - rho0), 1e-15);
}

TEST(MasterEquation, GeneratorAloneEmitsTail) {
    const auto w = make_exponential(kRate);
    const auto g = generator_absorber_cascade(generator_coupling(w), CouplingSchedule::constant(0.0));
    const auto run = master_equation_evolve(g, DensityMatrix::pure(basis(true, false)), 0.0, kT1);
    const auto pop = run.expectation_series(n1());
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        ASSERT_NEAR(pop[i], w.tail_energy(run.times[i]), 1e-9);
        // Coherent amplitude sqrt(tail) on |1>|0>.
        const int idx = qubit::basis_index(true, false);
        ASSERT_NEAR(std::sqrt(run.snapshots[i](idx, idx).real()),
                    std::sqrt(w.tail_energy(run.times[i])), 1e-6);
    }
}

TEST(MasterEquation, ReferenceRunMatchesMomentsAndAmplitudes) {
    const auto w = make_exponential(kRate);
    const auto lambda = generator_coupling(w);
    const double expected[] = {0.9957, 0.9575, 0.6037};
    const double fractions[] = {0.001, 0.01, 0.1};
    for (int k = 0; k < 3; ++k) {
        const auto gamma = truncated_coupling(w, 0.0, fractions[k] * kT1);
        const auto run = master_equation_evolve(generator_absorber_cascade(lambda, gamma),
                                                DensityMatrix::from_amplitudes({}), 0.0, kT1);
        const auto n2o = run.expectation_series(n2());
        EXPECT_NEAR(n2o.back(), expected[k], 0.002);
        const auto m = integrate_moments(lambda, gamma, kT1);
        const auto a = integrate_amplitudes(lambda, gamma, 0.0, kT1);
        for (std::size_t i = 0; i < n2o.size(); ++i) {
            ASSERT_NEAR(n2o[i], m.real("n2")[i], 1e-6);
            ASSERT_NEAR(n2o[i], a.real("n2")[i], 1e-6);
        }
        EXPECT_LT(run.max_trace_drift, 1e-9);
        EXPECT_GE(run.min_eigenvalue, -1e-9);
    }
}

TEST(MasterEquation, PhaseInvariantWithoutFrameReduction) {
    const auto w = make_exponential(kRate);
    const auto lambda = generator_coupling(w);
    std::vector<double> ref;
    for (double phi0 : {0.0, 1.0, std::numbers::pi}) {
        const auto gamma = truncated_coupling(w, phi0, 0.01 * kT1);
        const auto run = master_equation_evolve(generator_absorber_cascade(lambda, gamma),
                                                DensityMatrix::from_amplitudes({}), 0.0, kT1);
        const auto n2o = run.expectation_series(n2());
        if (ref.empty()) {
            ref = n2o;
            continue;
        }
        for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_NEAR(n2o[i], ref[i], 1e-12);
    }
}

TEST(MasterEquation, SeededExactAbsorber) {
    const auto w = make_exponential(kRate);
    const double eps = seed_time(w);
    const auto g = generator_absorber_cascade(generator_coupling(w), absorber_coupling(w));
    RunOptions o;
    o.tol.abs *= 1e-6;
    const auto run = master_equation_evolve(
        g, DensityMatrix::from_amplitudes(exact_absorber_amplitudes(w, 0.0, eps)), eps, kT1, o);
    const auto n2o = run.expectation_series(n2());
    EXPECT_GE(n2o.back(), 1.0 - 2e-4);
    EXPECT_THROW(master_equation_evolve(g, DensityMatrix::from_amplitudes({}), 0.0, kT1),
                 DivergentCoupling);
}

TEST(MasterEquation, RejectsDimensionMismatch) {
    const auto g = SlhTriple::constant(Operator::Identity(2, 2), Operator::Zero(2, 2),
                                       Operator::Zero(2, 2));
    EXPECT_THROW(master_equation_evolve(g, DensityMatrix(Operator::Identity(4, 4) / 4.0), 0.0, 1.0),
                 InvalidParameter);
}

TEST(OracleRunTrajectory, FlattenedRowMajor) {
    qtest::Random rnd(43);
    const Operator rho0 = rnd.density(4);
    const auto g = SlhTriple::constant(Operator::Identity(4, 4), Operator::Zero(4, 4),
                                       Operator::Zero(4, 4));
    RunOptions o;
    o.grid_points = 3;
    const auto traj = master_equation_evolve(g, DensityMatrix(rho0), 0.0, 1.0, o).to_trajectory();
    const auto csv = traj.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')).substr(0, 30), "t,re_00,im_00,re_01,im_01,re_0");
    EXPECT_EQ(traj.columns().size(), 16u);
    EXPECT_EQ(traj.columns()[1].name, "01");
    EXPECT_EQ(traj.columns()[4].name, "10");
    EXPECT_LT(std::abs(traj.complex("12")[0] - rho0(1, 2)), 1e-15);
}

TEST(AdjointConsistency, RandomStatesAndCouplings) {
    qtest::Random rnd(44);
    for (int k = 0; k < 100; ++k) {
        const auto g = generator_absorber_cascade(CouplingSchedule::constant(rnd.complex()),
                                                  CouplingSchedule::constant(rnd.complex()));
        const Operator rho = rnd.density(4);
        ASSERT_LT(adjoint_consistency_check(g, rho, n2(), 0.0), 1e-12);
        ASSERT_LT(adjoint_consistency_check(g, rho, rnd.hermitian(4), 0.0), 1e-12);
        // X = I: the right-hand side is traceless.
        ASSERT_LT(adjoint_consistency_check(g, rho, Operator::Identity(4, 4), 0.0), 1e-12);
        ASSERT_LT(std::abs(master_equation_rhs(g.at(0.0).value(), rho).trace()), 1e-12);
    }
}

TEST(AdjointConsistency, GeneralTriples) {
    qtest::Random rnd(45);
    for (int k = 0; k < 20; ++k) {
        const auto g = SlhTriple::constant(rnd.unitary(4), rnd.matrix(4), rnd.hermitian(4));
        ASSERT_LT(adjoint_consistency_check(g, rnd.density(4), rnd.matrix(4), 0.0), 1e-12);
    }
}

TEST(AdjointConsistency, ProductObservableOnPureSingleExcitation) {
    qtest::Random rnd(46);
    const Complex l = rnd.complex(), gm = rnd.complex();
    const auto g = generator_absorber_cascade(CouplingSchedule::constant(l),
                                              CouplingSchedule::constant(gm));
    Eigen::VectorXcd psi = basis(true, false) * rnd.complex() + basis(false, true) * rnd.complex();
    psi.normalize();
    const Operator rho = psi * psi.adjoint();
    const Operator x = n1() * n2();
    const auto snap = g.at(0.0).value();
    const Complex lhs = expectation(rho, heisenberg_generator(snap, x));
    const Complex rhs = expectation(master_equation_rhs(snap, rho), x);
    const Complex closed = -(std::norm(l) + std::norm(gm)) * expectation(rho, x);
    EXPECT_LT(std::abs(lhs - closed), 1e-12);
    EXPECT_LT(std::abs(rhs - closed), 1e-12);
    EXPECT_THROW(adjoint_consistency_check(g, rho, Operator::Identity(2, 2), 0.0),
                 InvalidParameter);
}
