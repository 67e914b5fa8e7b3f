// observables.hpp: g2(0), mean photon numbers, and basis-state populations.

#pragma once

#include "blockade/liouvillian.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace blockade {

// Mean photon number below the floor: no excitation to correlate (F = 0 and
// zero temperature, say). Callers decide whether that is an error or a hole.
class undefined_correlation_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Mode { a, b };

inline QOperator mode_annihilator(const HilbertSpace& space, Mode mode) {
    return mode == Mode::a ? annihilator_a(space) : annihilator_b(space);
}

namespace detail {

inline double real_expectation(const QOperator& A, const DensityMatrix& rho,
                               const char* what, double imag_tol = 1e-10) {
    const Complex v = expectation(A, rho.matrix);
    if (std::abs(v.imag()) >= imag_tol) {
        throw std::runtime_error(std::string(what) + ": expectation has a non-negligible imaginary part");
    }
    return v.real();
}

} // namespace detail

inline double mean_photon(const DensityMatrix& rho, Mode mode) {
    const QOperator c = mode_annihilator(rho.space, mode);
    return detail::real_expectation(mul(dagger(c), c), rho, "mean_photon");
}

// g2(0) = Tr(rho c'c'cc) / Tr(rho c'c)^2
inline double g2_zero(const DensityMatrix& rho, Mode mode, double mean_floor = 1e-12) {
    const QOperator c = mode_annihilator(rho.space, mode);
    const QOperator cd = dagger(c);
    const double n = detail::real_expectation(mul(cd, c), rho, "g2_zero");
    if (n <= mean_floor) {
        throw undefined_correlation_error("g2_zero: mean photon number below floor");
    }
    const double num = detail::real_expectation(mul(mul(cd, cd), mul(c, c)), rho, "g2_zero");
    return num / (n * n);
}

inline double population(const DensityMatrix& rho, const BasisState& s) {
    const int i = basis_index(s, rho.space);
    return rho.matrix(i, i).real();
}

// Sub-Poissonian photon statistics.
inline bool antibunched(double g2) noexcept { return g2 < 1.0; }

struct ObservableSet {
    double g2_a = 0.0;       // NaN when undefined
    bool g2_defined = false;
    double mean_n_a = 0.0;
    double mean_n_b = 0.0;
    std::vector<std::pair<BasisState, double>> populations;  // g10, e00, g02
};

inline ObservableSet observe(const DensityMatrix& rho, double g2_floor = 1e-12) {
    ObservableSet o;
    o.mean_n_a = mean_photon(rho, Mode::a);
    o.mean_n_b = mean_photon(rho, Mode::b);
    try {
        o.g2_a = g2_zero(rho, Mode::a, g2_floor);
        o.g2_defined = true;
    } catch (const undefined_correlation_error&) {
        o.g2_a = std::numeric_limits<double>::quiet_NaN();
        o.g2_defined = false;
    }
    for (const BasisState s : {BasisState{Atom::g, 1, 0}, BasisState{Atom::e, 0, 0},
                               BasisState{Atom::g, 0, 2}}) {
        o.populations.emplace_back(s, population(rho, s));
    }
    return o;
}

inline double population_of(const ObservableSet& o, const BasisState& s) {
    for (const auto& [state, p] : o.populations) {
        if (state == s) return p;
    }
    throw std::out_of_range("population_of: state not recorded");
}

} // namespace blockade
