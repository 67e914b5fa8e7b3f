// model.hpp: rotating-frame Hamiltonian of the driven atom / two-mode chi(2)
// system, the single-excitation block, and the closed-form blockade condition.

#pragma once

#include "blockade/hilbert.hpp"

#include <cmath>
#include <optional>

namespace blockade {

// All rates and detunings are in units of kappa.
struct SystemParams {
    double delta_a = 0.0;  // mode-a detuning
    double delta_e = 0.0;  // atom detuning
    double delta_b = 0.0;  // mode-b detuning
    double J = 0.0;        // linear atom / mode-a coupling
    double g = 0.0;        // chi(2) coupling (one a photon <-> two b photons)
    double F = 0.0;        // drive amplitude on mode a
    double kappa_a = 1.0;  // mode-a decay rate
    double kappa_b = 1.0;  // mode-b decay rate
    double gamma = 1.0;    // atomic spontaneous emission rate
    double n_th = 0.0;     // mean thermal photon number, shared by all baths

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

inline void validate_params(const SystemParams& p) {
    const double fields[] = {p.delta_a, p.delta_e, p.delta_b, p.J,     p.g,
                             p.F,       p.kappa_a, p.kappa_b, p.gamma, p.n_th};
    for (double v : fields) {
        if (!std::isfinite(v)) throw std::invalid_argument("SystemParams: non-finite field");
    }
    if (p.n_th < 0.0) throw std::invalid_argument("SystemParams: n_th must be >= 0");
}

// Negative decay rates are accepted as inputs (gain regime) but nothing
// downstream validates gain physics; callers may warn off this.
inline bool has_gain_rates(const SystemParams& p) noexcept {
    return p.kappa_a <= 0.0 || p.kappa_b <= 0.0 || p.gamma < 0.0;
}

// delta_a = delta_e = delta, delta_b = delta/2: puts both the single-photon
// and the two-photon transitions at the same rotating-frame offset.
struct ConstrainedDetuning {
    double delta = 0.0;
};

inline SystemParams with_constrained_detuning(SystemParams p, double delta) {
    p.delta_a = delta;
    p.delta_e = delta;
    p.delta_b = 0.5 * delta;
    return p;
}

inline bool is_detuning_constrained(const SystemParams& p, double tol = 1e-12) noexcept {
    return std::abs(p.delta_e - p.delta_a) <= tol && std::abs(p.delta_b - 0.5 * p.delta_a) <= tol;
}

// H = da a'a + de s's + db b'b + J(a's + s'a) + g(a'b^2 + b'^2 a) + F(a' + a).
// The diagonal is assembled directly and the off-diagonal part as X + X';
// the raising terms all increase m, so the supports of X and X' are disjoint
// and H is Hermitian bitwise, not just within tolerance.
inline QOperator hamiltonian(const SystemParams& p, const HilbertSpace& space) {
    const int dim = space.dim();

    std::vector<Triplet> diag;
    diag.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        const BasisState s = basis_state(i, space);
        const double v =
            p.delta_a * s.m + p.delta_e * static_cast<int>(s.atom) + p.delta_b * s.n;
        if (v != 0.0) diag.emplace_back(i, i, v);
    }
    SpMat H(dim, dim);
    H.setFromTriplets(diag.begin(), diag.end());

    const QOperator a = annihilator_a(space);
    SpMat X(dim, dim);  // raising part: J a's + g a'b^2 + F a'
    if (p.J != 0.0) {
        X += SpMat(SpMat(a.matrix.adjoint()) * sigma_minus(space).matrix) * Complex(p.J);
    }
    if (p.g != 0.0) {
        const SpMat b = annihilator_b(space).matrix;
        X += SpMat(SpMat(a.matrix.adjoint()) * SpMat(b * b)) * Complex(p.g);
    }
    if (p.F != 0.0) {
        X += SpMat(a.matrix.adjoint()) * Complex(p.F);
    }

    H += X;
    H += SpMat(X.adjoint());
    return QOperator{space, std::move(H)};
}

// The weak-drive Hamiltonian restricted to (|g,1,0>, |e,0,0>, |g,0,2>).
// The sqrt(2) comes from b^2 |0,2> = sqrt(2) |0,0>.
inline Eigen::Matrix3d single_excitation_matrix(const SystemParams& p) {
    const double sqrt2_g = std::sqrt(2.0) * p.g;
    Eigen::Matrix3d M;
    M << p.delta_a, p.J, sqrt2_g,
         p.J, p.delta_e, 0.0,
         sqrt2_g, 0.0, 2.0 * p.delta_b;
    return M;
}

struct EigenFrequencies {
    double xi_plus = 0.0;
    double xi_zero = 0.0;  // the middle eigenvalue, pinned at delta
    double xi_minus = 0.0;
};

// Under constrained detunings the 3x3 block has spectrum delta +- r and
// delta, with r = sqrt(2 g^2 + J^2).
inline EigenFrequencies eigenfrequencies(double delta, double J, double g) {
    const double r = std::sqrt(2.0 * g * g + J * J);
    return EigenFrequencies{delta + r, delta, delta - r};
}

inline EigenFrequencies eigenfrequencies(const SystemParams& p) {
    if (!is_detuning_constrained(p)) {
        throw std::invalid_argument(
            "eigenfrequencies: requires delta_a = delta_e and delta_b = delta_a/2");
    }
    return eigenfrequencies(p.delta_a, p.J, p.g);
}

struct CpbCouplings {
    double g_plus = 0.0;
    double g_minus = 0.0;
};

// Blockade condition sqrt(2) g = +-sqrt(delta^2 - J^2): the lower dressed
// state hits drive resonance, xi_minus = 0. No real solution when
// delta^2 < J^2.
inline std::optional<CpbCouplings> cpb_condition(double delta, double J) {
    const double disc = delta * delta - J * J;
    if (disc < 0.0) return std::nullopt;
    const double g_star = std::sqrt(0.5 * disc);
    return CpbCouplings{g_star, -g_star};
}

} // namespace blockade
