#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's integrators or quadrature, so agreement is a real cross-check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qtest {

using Complex = std::complex<double>;

// Composite Simpson with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels = 256) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

namespace detail {
inline double adaptive(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

// Adaptive Simpson (Richardson-corrected) to absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Running integral of f on the given ascending grid (first entry 0 at grid[0]).
inline std::vector<double> cumulative(const std::function<double(double)>& f,
                                      const std::vector<double>& grid, int panels = 64) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        out[i] = out[i - 1] + simpson(f, grid[i - 1], grid[i], panels);
    }
    return out;
}

// Classical fixed-step RK4 for y' = f(t, y) on complex vectors.
using VecC = Eigen::VectorXcd;
inline VecC rk4(const std::function<VecC(double, const VecC&)>& f, VecC y, double t0, double t1,
                int steps) {
    const double h = (t1 - t0) / steps;
    double t = t0;
    for (int i = 0; i < steps; ++i) {
        const VecC k1 = f(t, y);
        const VecC k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
        const VecC k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
        const VecC k4 = f(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t0 + (i + 1) * h;
    }
    return y;
}

// Central difference derivative.
inline Complex derivative(const std::function<Complex(double)>& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    double normal() { return normal_(rng_); }
    Complex complex() { return {normal(), normal()}; }
    Eigen::MatrixXcd matrix(int n) {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = complex();
        return m;
    }
    Eigen::MatrixXcd hermitian(int n) {
        const Eigen::MatrixXcd m = matrix(n);
        return 0.5 * (m + m.adjoint());
    }
    Eigen::MatrixXcd unitary(int n) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(matrix(n));
        return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    }
    Eigen::MatrixXcd density(int n) {
        const Eigen::MatrixXcd m = matrix(n);
        Eigen::MatrixXcd rho = m * m.adjoint();
        return rho / rho.trace();
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace qtest
