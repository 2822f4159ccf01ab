#pragma once

#include <string>
#include <vector>

#include "qabsorb/dynamics.hpp"
#include "qabsorb/slh.hpp"
#include "qabsorb/trajectory.hpp"

namespace qabsorb {

// Validated density matrix: Hermitian and unit trace within tol, smallest
// eigenvalue >= -tol. Throws InvalidParameter otherwise.
class DensityMatrix {
public:
    explicit DensityMatrix(Operator rho, double tol = 1e-10);

    // |psi><psi| for a normalized vector.
    static DensityMatrix pure(const Eigen::VectorXcd& psi);

    // Reduced cascade state for a single-excitation amplitude state:
    // |psi><psi| + p_out |00><00|, the field having been traced out.
    static DensityMatrix from_amplitudes(const AmplitudeState& state);

    const Operator& matrix() const noexcept { return rho_; }
    int dim() const noexcept { return static_cast<int>(rho_.rows()); }

private:
    Operator rho_;
};

// Tr(rho X). Throws InvalidParameter on shape mismatch.
Complex expectation(const Operator& rho, const Operator& x);
inline Complex expectation(const DensityMatrix& rho, const Operator& x) {
    return expectation(rho.matrix(), x);
}

// -i[H, rho] + L rho L^dagger - 1/2 {L^dagger L, rho}
Operator master_equation_rhs(const SlhSnapshot& g, const Operator& rho);

struct OracleRun {
    std::vector<double> times;
    // Re-symmetrized (rho + rho^dagger)/2 at each reporting time.
    std::vector<Operator> snapshots;
    OdeStats stats;
    // max |Tr rho - 1| over the raw integrator states and the smallest
    // eigenvalue of the stored snapshots.
    double max_trace_drift = 0.0;
    double min_eigenvalue = 0.0;

    // Row-major flattening: columns 00, 01, ..., (d-1)(d-1), each complex.
    Trajectory to_trajectory() const;
    // Re Tr(rho X) under the given column name.
    Trajectory observable(const std::string& name, const Operator& x) const;
    std::vector<double> expectation_series(const Operator& x) const;
};

// Steps the vectorized master equation with the adaptive Dormand-Prince
// integrator. Throws DivergentCoupling if g is singular at t_start or
// inside the range.
OracleRun master_equation_evolve(const SlhTriple& g, const DensityMatrix& rho0, double t_start,
                                 double t_end, const RunOptions& options = {});

// |Tr[rho L_t(X)] - Tr[D_t(rho) X]| with D_t the master-equation
// right-hand side.
double adjoint_consistency_check(const SlhTriple& g, const Operator& rho, const Operator& x,
                                 double t);

} // namespace qabsorb
