// liouvillian.hpp: vectorized Lindblad generator with thermal excitation,
// plus the DensityMatrix type all observables are read from.
//
// Vectorization is column-stacking: vec(rho)[i + j*dim] = rho(i, j), which is
// Eigen's native column-major layout. Under that convention
//   vec(A rho B) = (B^T kron A) vec(rho),
// so H rho -> (I kron H) and rho H -> (H^T kron I).

#pragma once

#include "blockade/hilbert.hpp"
#include "blockade/model.hpp"

#include <Eigen/Eigenvalues>

namespace blockade {

struct Superoperator {
    HilbertSpace space;
    SpMat matrix;  // dim^2 x dim^2
};

struct DensityMatrix {
    HilbertSpace space;
    Eigen::MatrixXcd matrix;  // dense dim x dim
};

inline Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

inline Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int dim) {
    if (v.size() != Eigen::Index(dim) * dim) {
        throw std::invalid_argument("unvec: vector length is not dim^2");
    }
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

inline SpMat spkron(const SpMat& A, const SpMat& B) {
    SpMat K(A.rows() * B.rows(), A.cols() * B.cols());
    std::vector<Triplet> t;
    t.reserve(std::size_t(A.nonZeros()) * std::size_t(B.nonZeros()));
    for (int ja = 0; ja < A.outerSize(); ++ja)
        for (SpMat::InnerIterator ia(A, ja); ia; ++ia)
            for (int jb = 0; jb < B.outerSize(); ++jb)
                for (SpMat::InnerIterator ib(B, jb); ib; ++ib) {
                    t.emplace_back(ia.row() * B.rows() + ib.row(),
                                   ia.col() * B.cols() + ib.col(), ia.value() * ib.value());
                }
    K.setFromTriplets(t.begin(), t.end());
    return K;
}

inline SpMat sparse_identity(int dim) {
    SpMat I(dim, dim);
    I.setIdentity();
    return I;
}

// D[c] rho = c rho c' - (c'c rho + rho c'c)/2, as a matrix on vec(rho).
inline Superoperator dissipator(const QOperator& c) {
    const int dim = c.space.dim();
    const SpMat I = sparse_identity(dim);
    const SpMat cdc = SpMat(c.matrix.adjoint()) * c.matrix;
    SpMat D = spkron(SpMat(c.matrix.conjugate()), c.matrix);
    D -= SpMat(spkron(I, cdc) + spkron(SpMat(cdc.transpose()), I)) * Complex(0.5);
    return Superoperator{c.space, std::move(D)};
}

// L = -i[H, .] + ka(n+1) D[a] + ka n D[a'] + gm(n+1) D[s] + gm n D[s']
//   + kb(n+1) D[b] + kb n D[b'].  Zero-rate channels are skipped so the
// zero-temperature generator stays free of structural zeros.
inline Superoperator liouvillian(const SystemParams& p, const HilbertSpace& space) {
    validate_params(p);
    const int dim = space.dim();
    const SpMat I = sparse_identity(dim);
    const SpMat H = hamiltonian(p, space).matrix;

    SpMat L = SpMat(spkron(I, H) - spkron(SpMat(H.transpose()), I)) * Complex(0.0, -1.0);

    const auto add_channel = [&](const QOperator& c, double rate) {
        if (rate != 0.0) L += dissipator(c).matrix * Complex(rate);
    };
    const QOperator a = annihilator_a(space);
    const QOperator b = annihilator_b(space);
    const QOperator sm = sigma_minus(space);
    add_channel(a, p.kappa_a * (p.n_th + 1.0));
    add_channel(dagger(a), p.kappa_a * p.n_th);
    add_channel(sm, p.gamma * (p.n_th + 1.0));
    add_channel(dagger(sm), p.gamma * p.n_th);
    add_channel(b, p.kappa_b * (p.n_th + 1.0));
    add_channel(dagger(b), p.kappa_b * p.n_th);

    return Superoperator{space, std::move(L)};
}

// d(rho)/dt, devectorized.
inline Eigen::MatrixXcd apply(const Superoperator& L, const DensityMatrix& rho) {
    require_same_space(L.space, rho.space, "apply");
    return unvec(L.matrix * vec(rho.matrix), L.space.dim());
}

inline DensityMatrix pure_state(const HilbertSpace& space, const BasisState& s) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    const int i = basis_index(s, space);
    m(i, i) = 1.0;
    return DensityMatrix{space, std::move(m)};
}

inline DensityMatrix vacuum_state(const HilbertSpace& space) {
    return pure_state(space, BasisState{Atom::g, 0, 0});
}

inline DensityMatrix maximally_mixed_state(const HilbertSpace& space) {
    Eigen::MatrixXcd m =
        Eigen::MatrixXcd::Identity(space.dim(), space.dim()) / double(space.dim());
    return DensityMatrix{space, std::move(m)};
}

inline double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// (1/2) sum |eig(rho - sigma)|.
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_space(rho.space, sigma.space, "trace_distance");
    const Eigen::MatrixXcd d = rho.matrix - sigma.matrix;
    const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

struct DensityCheck {
    double hermiticity = 0.0;  // max |rho - rho'|
    double trace_error = 0.0;  // |Tr(rho) - 1|
    double min_eig = 0.0;
    bool ok = false;
};

inline DensityCheck check_density(const DensityMatrix& rho, double herm_tol = 1e-10,
                                  double trace_tol = 1e-10, double psd_slack = 1e-8) {
    DensityCheck c;
    c.hermiticity = hermiticity_defect(rho.matrix);
    c.trace_error = std::abs(rho.matrix.trace().real() - 1.0) + std::abs(rho.matrix.trace().imag());
    c.min_eig = min_eigenvalue(rho.matrix);
    c.ok = c.hermiticity <= herm_tol && c.trace_error <= trace_tol && c.min_eig >= -psd_slack;
    return c;
}

} // namespace blockade
