#pragma once

#include <functional>

#include <Eigen/Dense>

#include "qabsorb/coupling.hpp"
#include "qabsorb/divergent.hpp"

namespace qabsorb {

using Operator = Eigen::MatrixXcd;

// Qubit operators in the basis |1> = (1,0)^T, |0> = (0,1)^T, so that the
// lowering operator is |0><1| = [[0,0],[1,0]].
//
// Two-qubit operators act on generator (x) absorber, generator first. The
// joint basis order is |1>|1>, |1>|0>, |0>|1>, |0>|0>; the single-excitation
// amplitudes psi2 and psi3 are components 1 and 2.
namespace qubit {

const Eigen::Matrix2cd& lower();
const Eigen::Matrix2cd& raise();
const Eigen::Matrix2cd& number();
const Eigen::Matrix2cd& sigma_z();
const Eigen::Matrix2cd& identity();

Operator kron(const Operator& a, const Operator& b);

// X (x) I and I (x) X.
Operator on_generator(const Operator& x);
Operator on_absorber(const Operator& x);

// Basis state index for (generator excited?, absorber excited?).
int basis_index(bool generator_excited, bool absorber_excited);

} // namespace qubit

// (S, L, H) evaluated at one instant.
struct SlhSnapshot {
    Operator s;
    Operator l;
    Operator h;
};

using SlhEvaluator = std::function<MaybeDivergent<SlhSnapshot>(double)>;

// Time-dependent open-system parameters on a dim-dimensional space with a
// single field channel. Evaluation may be divergent at singular times of the
// underlying coupling schedules.
class SlhTriple {
public:
    SlhTriple(int dim, SlhEvaluator evaluator);

    static SlhTriple constant(Operator s, Operator l, Operator h);

    int dim() const noexcept { return dim_; }

    MaybeDivergent<SlhSnapshot> at(double t) const;

    // Convenience accessors; throw DivergentCoupling at singular times.
    Operator s_op(double t) const { return at(t).value().s; }
    Operator l_op(double t) const { return at(t).value().l; }
    Operator h_op(double t) const { return at(t).value().h; }

    // Breakpoints of the coupling schedules this triple was built from.
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    SlhTriple with_breakpoints(std::vector<double> bps) const;

private:
    int dim_;
    SlhEvaluator evaluator_;
    std::vector<double> breakpoints_;
};

// Throws InvalidParameter unless S is unitary and H Hermitian within tol.
void check_snapshot(const SlhSnapshot& snap, double tol = 1e-12);

// Im{A} = (A - A^dagger) / (2i), the Hermitian imaginary part of an operator.
Operator hermitian_imag(const Operator& a);

// G2 <| G1 = (S2 S1, L2 + S2 L1, H1 + H2 + Im{L2^dagger S2 L1}).
SlhSnapshot series_product(const SlhSnapshot& g2, const SlhSnapshot& g1);
SlhTriple series_product(const SlhTriple& g2, const SlhTriple& g1);

// Single-node triples on the joint 4-dim space.
SlhTriple generator_node(const CouplingSchedule& lambda);
SlhTriple absorber_node(const CouplingSchedule& gamma);

// Cascade built directly: L = lambda s1- + gamma s2-,
// H = (gamma^* lambda s2+ s1- - gamma lambda^* s2- s1+) / (2i).
SlhTriple generator_absorber_cascade(const CouplingSchedule& lambda,
                                     const CouplingSchedule& gamma);

// L_t(X) = 1/2 L^dagger [X, L] + 1/2 [L^dagger, X] L - i [X, H].
Operator heisenberg_generator(const SlhSnapshot& g, const Operator& x);
Operator heisenberg_generator(const SlhTriple& g, const Operator& x, double t);

// Expanded generator for product observables X1 X2 on the cascade, in the
// four-term form
//   gamma^* lambda X1 s1- [s2+, X2]
//   + 1/2 |lambda|^2 (s1+ [X1, s1-] + [s1+, X1] s1-) X2
//   + lambda^* gamma s1+ X1 [X2, s2-]
//   + 1/2 |gamma|^2 (s2+ [X2, s2-] + [s2+, X2] s2-) X1
// with X1 a 2x2 generator operator and X2 a 2x2 absorber operator.
Operator cascade_product_generator(Complex lambda, Complex gamma,
                                   const Eigen::Matrix2cd& x1,
                                   const Eigen::Matrix2cd& x2);

} // namespace qabsorb
