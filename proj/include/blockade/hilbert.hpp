// hilbert.hpp: truncated atom (x) mode-a (x) mode-b product space and the
// sparse operator algebra everything else is built on.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockade {

using Complex = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

enum class Atom : int { g = 0, e = 1 };

// Truncation bounds. Mode a keeps Fock levels 0..na_dim-1, likewise mode b.
struct HilbertSpace {
    int atom_dim = 2;
    int na_dim = 0;
    int nb_dim = 0;

    int dim() const noexcept { return atom_dim * na_dim * nb_dim; }

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;
};

// na_dim >= 2 so mode a can hold one photon; nb_dim >= 3 so mode b can hold
// the two photons produced by the chi(2) conversion.
inline HilbertSpace make_space(int na_dim, int nb_dim) {
    if (na_dim < 2) {
        throw std::invalid_argument("make_space: na_dim must be >= 2 (mode a needs at least one photon)");
    }
    if (nb_dim < 3) {
        throw std::invalid_argument("make_space: nb_dim must be >= 3 (mode b must hold two photons)");
    }
    return HilbertSpace{2, na_dim, nb_dim};
}

struct BasisState {
    Atom atom = Atom::g;
    int m = 0;  // photons in mode a
    int n = 0;  // photons in mode b

    friend bool operator==(const BasisState&, const BasisState&) = default;
};

inline bool in_range(const BasisState& s, const HilbertSpace& space) noexcept {
    return s.m >= 0 && s.m < space.na_dim && s.n >= 0 && s.n < space.nb_dim;
}

// Atom-major ordering: index = s*na*nb + m*nb + n. This is the normative
// layout for vectorized states and CSV dumps.
inline int basis_index(const BasisState& s, const HilbertSpace& space) {
    if (!in_range(s, space)) {
        throw std::out_of_range("basis_index: state outside truncated space");
    }
    return static_cast<int>(s.atom) * space.na_dim * space.nb_dim + s.m * space.nb_dim + s.n;
}

inline BasisState basis_state(int index, const HilbertSpace& space) {
    if (index < 0 || index >= space.dim()) {
        throw std::out_of_range("basis_state: index outside truncated space");
    }
    const int block = space.na_dim * space.nb_dim;
    return BasisState{static_cast<Atom>(index / block), (index % block) / space.nb_dim,
                      index % space.nb_dim};
}

// Sparse operator tagged with the space it acts on. Binary operations check
// the tags; mixing spaces is a bug, not a broadcast.
struct QOperator {
    HilbertSpace space;
    SpMat matrix;
};

inline void require_same_space(const HilbertSpace& x, const HilbertSpace& y, const char* what) {
    if (!(x == y)) {
        throw std::invalid_argument(std::string(what) + ": operators live on different spaces");
    }
}

inline QOperator make_operator(const HilbertSpace& space, std::vector<Triplet> triplets) {
    SpMat m(space.dim(), space.dim());
    m.setFromTriplets(triplets.begin(), triplets.end());
    return QOperator{space, std::move(m)};
}

inline QOperator identity(const HilbertSpace& space) {
    std::vector<Triplet> t;
    t.reserve(space.dim());
    for (int i = 0; i < space.dim(); ++i) t.emplace_back(i, i, 1.0);
    return make_operator(space, std::move(t));
}

// a |s,m,n> = sqrt(m) |s,m-1,n>
inline QOperator annihilator_a(const HilbertSpace& space) {
    std::vector<Triplet> t;
    t.reserve(space.dim());
    for (int s = 0; s < space.atom_dim; ++s)
        for (int m = 1; m < space.na_dim; ++m)
            for (int n = 0; n < space.nb_dim; ++n) {
                const auto atom = static_cast<Atom>(s);
                t.emplace_back(basis_index({atom, m - 1, n}, space),
                               basis_index({atom, m, n}, space), std::sqrt(double(m)));
            }
    return make_operator(space, std::move(t));
}

// b |s,m,n> = sqrt(n) |s,m,n-1>
inline QOperator annihilator_b(const HilbertSpace& space) {
    std::vector<Triplet> t;
    t.reserve(space.dim());
    for (int s = 0; s < space.atom_dim; ++s)
        for (int m = 0; m < space.na_dim; ++m)
            for (int n = 1; n < space.nb_dim; ++n) {
                const auto atom = static_cast<Atom>(s);
                t.emplace_back(basis_index({atom, m, n - 1}, space),
                               basis_index({atom, m, n}, space), std::sqrt(double(n)));
            }
    return make_operator(space, std::move(t));
}

// sigma |e,m,n> = |g,m,n>, sigma |g,m,n> = 0
inline QOperator sigma_minus(const HilbertSpace& space) {
    std::vector<Triplet> t;
    t.reserve(space.na_dim * space.nb_dim);
    for (int m = 0; m < space.na_dim; ++m)
        for (int n = 0; n < space.nb_dim; ++n) {
            t.emplace_back(basis_index({Atom::g, m, n}, space),
                           basis_index({Atom::e, m, n}, space), 1.0);
        }
    return make_operator(space, std::move(t));
}

inline QOperator add(const QOperator& A, const QOperator& B) {
    require_same_space(A.space, B.space, "add");
    return QOperator{A.space, A.matrix + B.matrix};
}

inline QOperator scale(Complex c, const QOperator& A) {
    return QOperator{A.space, SpMat(A.matrix * c)};
}

inline QOperator mul(const QOperator& A, const QOperator& B) {
    require_same_space(A.space, B.space, "mul");
    return QOperator{A.space, SpMat(A.matrix * B.matrix)};
}

inline QOperator dagger(const QOperator& A) {
    return QOperator{A.space, SpMat(A.matrix.adjoint())};
}

// Tr(rho A), iterating only the nonzeros of A.
inline Complex expectation(const QOperator& A, const Eigen::MatrixXcd& rho) {
    if (rho.rows() != A.space.dim() || rho.cols() != A.space.dim()) {
        throw std::invalid_argument("expectation: density matrix dimension mismatch");
    }
    Complex sum = 0.0;
    for (int k = 0; k < A.matrix.outerSize(); ++k)
        for (SpMat::InnerIterator it(A.matrix, k); it; ++it) {
            sum += rho(it.col(), it.row()) * it.value();
        }
    return sum;
}

inline QOperator operator+(const QOperator& A, const QOperator& B) { return add(A, B); }
inline QOperator operator*(Complex c, const QOperator& A) { return scale(c, A); }
inline QOperator operator*(const QOperator& A, const QOperator& B) { return mul(A, B); }

} // namespace blockade
