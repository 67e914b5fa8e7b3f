// steady_state.hpp: steady state of the Lindblad generator, two ways.
// The direct route factorizes the trace-pinned linear system; the evolved
// route integrates d vec(rho)/dt = L vec(rho) and serves as an independent
// oracle for the direct one.

#pragma once

#include "blockade/liouvillian.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <stdexcept>

namespace blockade {

// Degenerate steady-state manifold (e.g. no dissipative channel at all).
class singular_liouvillian_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SteadyStateMethod { direct, evolved };

struct SteadyStateResult {
    DensityMatrix rho;
    double residual = 0.0;         // operator norm of d(rho)/dt at the returned state
    SteadyStateMethod method = SteadyStateMethod::direct;
    double correction_norm = 0.0;  // Frobenius norm of the hermitize+renormalize step
    bool within_tolerance = false;
    double t_final = 0.0;          // evolved route only
};

// Spectral norm; the derivative of a Hermitian rho is Hermitian, so take the
// Hermitian part and read off the extreme eigenvalues.
inline double operator_norm(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues().minCoeff()), std::abs(es.eigenvalues().maxCoeff()));
}

namespace detail {

inline SteadyStateResult finalize(const Superoperator& L, Eigen::MatrixXcd raw,
                                  SteadyStateMethod method, double tol) {
    const int dim = L.space.dim();
    Eigen::MatrixXcd rho = 0.5 * (raw + raw.adjoint());
    const Complex tr = rho.trace();
    if (std::abs(tr) == 0.0) {
        throw singular_liouvillian_error("steady state has zero trace");
    }
    rho /= tr;

    SteadyStateResult r{DensityMatrix{L.space, rho}};
    r.method = method;
    r.correction_norm = (rho - raw).norm();
    r.residual = operator_norm(unvec(L.matrix * vec(rho), dim));
    r.within_tolerance = r.residual < tol;
    return r;
}

} // namespace detail

// Solves L vec(rho) = 0 with the row of the |g,0,0><g,0,0| coordinate
// replaced by the trace functional (that coordinate carries the largest
// weight at weak drive, which keeps the pinned system well conditioned).
inline SteadyStateResult steady_state_direct(const Superoperator& L, double tol = 1e-9) {
    const int dim = L.space.dim();
    const int n2 = dim * dim;
    const int pinned_row = basis_index(BasisState{Atom::g, 0, 0}, L.space) * (dim + 1);

    {
        // A generator that leaves the identity invariant is a bare commutator
        // (no dissipative action): every Hamiltonian eigenprojector is steady
        // and the trace-pinned system below is rank deficient.
        const Eigen::VectorXcd unital =
            L.matrix * vec(Eigen::MatrixXcd::Identity(dim, dim));
        if (unital.cwiseAbs().maxCoeff() == 0.0) {
            throw singular_liouvillian_error(
                "steady_state_direct: generator has no dissipative channel; steady state is not unique");
        }
    }

    std::vector<Triplet> t;
    t.reserve(std::size_t(L.matrix.nonZeros()) + dim);
    for (int k = 0; k < L.matrix.outerSize(); ++k)
        for (SpMat::InnerIterator it(L.matrix, k); it; ++it) {
            if (it.row() != pinned_row) t.emplace_back(it.row(), it.col(), it.value());
        }
    for (int j = 0; j < dim; ++j) t.emplace_back(pinned_row, j * (dim + 1), 1.0);

    SpMat A(n2, n2);
    A.setFromTriplets(t.begin(), t.end());
    A.makeCompressed();

    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
        throw singular_liouvillian_error("steady_state_direct: trace-pinned system is singular");
    }

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n2);
    rhs(pinned_row) = 1.0;
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) {
        throw singular_liouvillian_error("steady_state_direct: back-substitution failed");
    }
    // a physical solution has entries bounded by 1; wild magnitudes mean the
    // factorization ran through near-zero pivots of a degenerate system
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > 1e3) {
        throw singular_liouvillian_error("steady_state_direct: solution blow-up, system is near singular");
    }
    return detail::finalize(L, unvec(x, dim), SteadyStateMethod::direct, tol);
}

// Dormand-Prince 5(4) with FSAL and standard mixed absolute/relative error
// control. The state is vec(rho); the derivative is one sparse matvec.
inline SteadyStateResult steady_state_evolved(const Superoperator& L, const DensityMatrix& rho0,
                                              double tol = 1e-7, double t_max = 1000.0,
                                              double rtol = 1e-9, double atol = 1e-11) {
    require_same_space(L.space, rho0.space, "steady_state_evolved");
    if (tol <= 0.0) throw std::invalid_argument("steady_state_evolved: tol must be > 0");
    const int dim = L.space.dim();

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b*: weights of the embedded error estimate
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    Eigen::VectorXcd y = vec(rho0.matrix);
    Eigen::VectorXcd k1 = L.matrix * y;
    double t = 0.0;
    double h = std::min(1e-2, t_max);

    const auto deriv_ok = [&](const Eigen::VectorXcd& k) {
        // cheap max-entry screen before the exact operator-norm test
        if (k.cwiseAbs().maxCoeff() >= tol) return false;
        return operator_norm(unvec(k, dim)) < tol;
    };

    bool converged = deriv_ok(k1);
    while (!converged && t < t_max) {
        h = std::min(h, t_max - t);

        const Eigen::VectorXcd k2 = L.matrix * (y + h * (a21 * k1));
        const Eigen::VectorXcd k3 = L.matrix * (y + h * (a31 * k1 + a32 * k2));
        const Eigen::VectorXcd k4 = L.matrix * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::VectorXcd k5 =
            L.matrix * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::VectorXcd k6 =
            L.matrix * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Eigen::VectorXcd y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::VectorXcd k7 = L.matrix * y_new;

        const Eigen::VectorXcd err_vec =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale = atol + rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
            err = std::max(err, std::abs(err_vec(i)) / scale);
        }

        if (err <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;  // FSAL
            converged = deriv_ok(k1);
        }
        const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }

    SteadyStateResult r = detail::finalize(L, unvec(y, dim), SteadyStateMethod::evolved, tol);
    r.t_final = t;
    return r;
}

} // namespace blockade
