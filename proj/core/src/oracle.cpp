#include "qabsorb/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qabsorb/error.hpp"

namespace qabsorb {

namespace {

double min_eigenvalue_of(const Operator& rho) {
    const Operator herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::string index_name(int i, int j) { return std::to_string(i) + std::to_string(j); }

} // namespace

DensityMatrix::DensityMatrix(Operator rho, double tol) : rho_(std::move(rho)) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
        throw InvalidParameter("DensityMatrix: matrix must be square and non-empty");
    }
    if (!rho_.allFinite()) {
        throw InvalidParameter("DensityMatrix: non-finite entries");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw InvalidParameter("DensityMatrix: not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > tol) {
        throw InvalidParameter("DensityMatrix: trace differs from 1");
    }
    if (min_eigenvalue_of(rho_) < -tol) {
        throw InvalidParameter("DensityMatrix: negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::from_amplitudes(const AmplitudeState& state) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi[qubit::basis_index(true, false)] = state.psi2;
    psi[qubit::basis_index(false, true)] = state.psi3;
    Operator rho = psi * psi.adjoint();
    const int vac = qubit::basis_index(false, false);
    rho(vac, vac) += state.p_out;
    return DensityMatrix(std::move(rho));
}

Complex expectation(const Operator& rho, const Operator& x) {
    if (rho.rows() != x.rows() || rho.cols() != x.cols()) {
        throw InvalidParameter("expectation: shape mismatch");
    }
    // Tr(rho X) = sum_ij rho_ij X_ji
    return (rho.transpose().cwiseProduct(x)).sum();
}

Operator master_equation_rhs(const SlhSnapshot& g, const Operator& rho) {
    const Operator ld = g.l.adjoint();
    const Operator ldl = ld * g.l;
    const Complex i(0.0, 1.0);
    return -i * (g.h * rho - rho * g.h) + g.l * rho * ld - 0.5 * (ldl * rho + rho * ldl);
}

OracleRun master_equation_evolve(const SlhTriple& g, const DensityMatrix& rho0, double t_start,
                                 double t_end, const RunOptions& options) {
    const int d = g.dim();
    if (rho0.dim() != d) {
        throw InvalidParameter("master_equation_evolve: state dimension does not match triple");
    }
    if (!(t_start >= 0.0) || !(t_end > t_start)) {
        throw InvalidParameter("master_equation_evolve: need 0 <= t_start < t_end");
    }
    if (g.at(t_start).divergent()) {
        throw DivergentCoupling("master_equation_evolve: coupling diverges at the start time",
                                t_start);
    }

    OracleRun run;
    run.times = uniform_grid(t_start, t_end, options.grid_points);
    run.snapshots.reserve(run.times.size());
    run.min_eigenvalue = std::numeric_limits<double>::infinity();

    auto rhs = [&](double t, const OdeState& y, OdeState& dy) {
        const auto snap = g.at(t);
        if (snap.divergent()) return false;
        const Eigen::Map<const Operator> rho(y.data(), d, d);
        Eigen::Map<Operator> out(dy.data(), d, d);
        out = master_equation_rhs(*snap, rho);
        return true;
    };
    auto observe = [&](double, const OdeState& y) {
        const Eigen::Map<const Operator> rho(y.data(), d, d);
        run.max_trace_drift =
            std::max(run.max_trace_drift, std::abs(rho.trace() - Complex(1.0, 0.0)));
        Operator sym = 0.5 * (rho + rho.adjoint());
        run.min_eigenvalue = std::min(run.min_eigenvalue, min_eigenvalue_of(sym));
        run.snapshots.push_back(std::move(sym));
    };

    OdeState y0(d * d);
    Eigen::Map<Operator>(y0.data(), d, d) = rho0.matrix();
    OdeOptions o;
    o.tol = options.tol;
    if (t_start > 0.0) o.initial_step = 1e-3 * t_start;
    run.stats = integrate_dopri5(rhs, y0, t_start, t_end, g.breakpoints(), run.times, observe, o);
    return run;
}

Trajectory OracleRun::to_trajectory() const {
    Trajectory traj(times);
    if (snapshots.empty()) return traj;
    const int d = static_cast<int>(snapshots.front().rows());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Trajectory::ComplexSeries col;
            col.reserve(snapshots.size());
            for (const auto& rho : snapshots) col.push_back(rho(i, j));
            traj.add_column(index_name(i, j), std::move(col));
        }
    }
    traj.set_meta("formulation", "oracle");
    return traj;
}

std::vector<double> OracleRun::expectation_series(const Operator& x) const {
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const auto& rho : snapshots) out.push_back(expectation(rho, x).real());
    return out;
}

Trajectory OracleRun::observable(const std::string& name, const Operator& x) const {
    Trajectory traj(times);
    traj.add_column(name, expectation_series(x));
    traj.set_meta("formulation", "oracle");
    return traj;
}

double adjoint_consistency_check(const SlhTriple& g, const Operator& rho, const Operator& x,
                                 double t) {
    if (rho.rows() != g.dim() || x.rows() != g.dim() || rho.cols() != g.dim() ||
        x.cols() != g.dim()) {
        throw InvalidParameter("adjoint_consistency_check: shape mismatch");
    }
    const auto snap = g.at(t).value();
    const Complex heisenberg = expectation(rho, heisenberg_generator(snap, x));
    const Complex schrodinger = expectation(master_equation_rhs(snap, rho), x);
    return std::abs(heisenberg - schrodinger);
}

} // namespace qabsorb
