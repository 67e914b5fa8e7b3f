#include "blockade/model.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace blockade;

namespace {
const HilbertSpace space55 = make_space(5, 5);
}

TEST_CASE("hamiltonian vanishes for zero parameters") {
    const QOperator H = hamiltonian(SystemParams{}, space55);
    CHECK(H.matrix.norm() == 0.0);
}

TEST_CASE("hamiltonian diagonal scales with the photon number") {
    SystemParams p;
    p.delta_a = 1.0;
    const QOperator H = hamiltonian(p, space55);
    CHECK(H.matrix.nonZeros() > 0);
    const int i = basis_index({Atom::g, 2, 0}, space55);
    CHECK(H.matrix.coeff(i, i) == Complex(2.0));
    // strictly diagonal
    SpMat offdiag = H.matrix;
    for (int k = 0; k < offdiag.outerSize(); ++k)
        for (SpMat::InnerIterator it(offdiag, k); it; ++it) {
            if (it.row() != it.col()) CHECK(it.value() == Complex(0.0));
        }
}

TEST_CASE("chi(2) matrix element carries the sqrt(2)") {
    SystemParams p;
    p.g = 3.0;
    const QOperator H = hamiltonian(p, space55);
    const Complex v = H.matrix.coeff(basis_index({Atom::g, 1, 0}, space55),
                                     basis_index({Atom::g, 0, 2}, space55));
    CHECK(std::abs(v - Complex(std::sqrt(2.0) * 3.0)) < 1e-15);
}

TEST_CASE("hamiltonian is Hermitian bitwise") {
    auto rng = testing::seeded_rng(2);
    for (int draw = 0; draw < 10; ++draw) {
        const SystemParams p = testing::random_loose_params(rng);
        const SpMat H = hamiltonian(p, space55).matrix;
        const SpMat Hd = H.adjoint();
        CHECK((H - Hd).norm() == 0.0);
    }
}

TEST_CASE("single-excitation matrix matches the published block") {
    SystemParams p;
    p.delta_a = 10.0;
    p.delta_e = 10.0;
    p.delta_b = 5.0;
    p.J = 6.0;
    p.g = 4.0 * std::sqrt(2.0);
    Eigen::Matrix3d expected;
    expected << 10, 6, 8, 6, 10, 0, 8, 0, 10;
    CHECK((single_excitation_matrix(p) - expected).cwiseAbs().maxCoeff() < 1e-12);

    CHECK(single_excitation_matrix(SystemParams{}).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-excitation matrix equals the Hamiltonian block") {
    auto rng = testing::seeded_rng(3);
    for (int draw = 0; draw < 5; ++draw) {
        SystemParams p = testing::random_loose_params(rng);
        p.F = 0.0;  // the block statement holds for the undriven Hamiltonian
        const SpMat H = hamiltonian(p, space55).matrix;
        const int i1 = basis_index({Atom::g, 1, 0}, space55);
        const int i2 = basis_index({Atom::e, 0, 0}, space55);
        const int i3 = basis_index({Atom::g, 0, 2}, space55);
        const int idx[3] = {i1, i2, i3};
        const Eigen::Matrix3d M = single_excitation_matrix(p);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                CHECK(std::abs(H.coeff(idx[r], idx[c]) - Complex(M(r, c))) < 1e-12);
            }
    }
}

TEST_CASE("eigenfrequencies closed form") {
    {
        const auto xi = eigenfrequencies(10.0, 6.0, 4.0 * std::sqrt(2.0));
        CHECK(xi.xi_plus == Catch::Approx(20.0).margin(1e-12));
        CHECK(xi.xi_zero == Catch::Approx(10.0).margin(1e-12));
        CHECK(xi.xi_minus == Catch::Approx(0.0).margin(1e-12));
    }
    {
        const auto xi = eigenfrequencies(0.0, 0.0, 0.0);
        CHECK(xi.xi_plus == 0.0);
        CHECK(xi.xi_zero == 0.0);
        CHECK(xi.xi_minus == 0.0);
    }
    {
        const auto xi = eigenfrequencies(8.0, std::sqrt(14.0), 5.0);
        CHECK(xi.xi_plus == Catch::Approx(16.0).margin(1e-12));
        CHECK(xi.xi_zero == Catch::Approx(8.0).margin(1e-12));
        CHECK(xi.xi_minus == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("eigenfrequencies agree with a numerical 3x3 eigensolve") {
    auto rng = testing::seeded_rng(4);
    std::uniform_real_distribution<double> delta(-15.0, 15.0);
    std::uniform_real_distribution<double> coupling(-10.0, 10.0);
    for (int draw = 0; draw < 100; ++draw) {
        const double d = delta(rng), J = coupling(rng), g = coupling(rng);
        const SystemParams p = [&] {
            SystemParams q = with_constrained_detuning(SystemParams{}, d);
            q.J = J;
            q.g = g;
            return q;
        }();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(single_excitation_matrix(p));
        const auto ev = es.eigenvalues();  // ascending
        const auto xi = eigenfrequencies(d, J, g);
        CHECK(std::abs(ev(0) - xi.xi_minus) < 1e-12);
        CHECK(std::abs(ev(1) - xi.xi_zero) < 1e-12);
        CHECK(std::abs(ev(2) - xi.xi_plus) < 1e-12);
    }
}

TEST_CASE("eigenfrequencies overload insists on constrained detunings") {
    SystemParams p = with_constrained_detuning(SystemParams{}, 5.0);
    CHECK_NOTHROW(eigenfrequencies(p));
    p.delta_b = 4.0;
    CHECK_THROWS_AS(eigenfrequencies(p), std::invalid_argument);
}

TEST_CASE("cpb_condition produces the published couplings") {
    {
        const auto c = cpb_condition(10.0, 6.0);
        REQUIRE(c.has_value());
        CHECK(c->g_plus == Catch::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
        CHECK(c->g_minus == Catch::Approx(-4.0 * std::sqrt(2.0)).epsilon(1e-12));
    }
    {
        const auto c = cpb_condition(8.0, std::sqrt(14.0));
        REQUIRE(c.has_value());
        CHECK(c->g_plus == Catch::Approx(5.0).epsilon(1e-12));
    }
    CHECK_FALSE(cpb_condition(5.0, 6.0).has_value());
}

TEST_CASE("cpb coupling puts the lower dressed state on drive resonance") {
    auto rng = testing::seeded_rng(5);
    std::uniform_real_distribution<double> delta(0.0, 15.0);
    for (int draw = 0; draw < 50; ++draw) {
        const double d = delta(rng);
        std::uniform_real_distribution<double> coupling(-d, d);
        const double J = coupling(rng);
        const auto c = cpb_condition(d, J);
        REQUIRE(c.has_value());
        CHECK(std::abs(eigenfrequencies(d, J, c->g_plus).xi_minus) < 1e-12);
        CHECK(std::abs(eigenfrequencies(d, J, c->g_minus).xi_minus) < 1e-12);
    }
}

TEST_CASE("spectrum depends only on the squares of the couplings") {
    auto rng = testing::seeded_rng(6);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int draw = 0; draw < 20; ++draw) {
        const double d = u(rng), J = u(rng), g = u(rng);
        const auto xi = eigenfrequencies(d, J, g);
        const auto xi_mg = eigenfrequencies(d, J, -g);
        const auto xi_mJ = eigenfrequencies(d, -J, g);
        CHECK(xi.xi_plus == xi_mg.xi_plus);
        CHECK(xi.xi_minus == xi_mg.xi_minus);
        CHECK(xi.xi_plus == xi_mJ.xi_plus);
        CHECK(xi.xi_minus == xi_mJ.xi_minus);
    }
}

TEST_CASE("undriven Hamiltonian conserves the weighted excitation number") {
    // N = a'a + s's + b'b/2 commutes with H (F = 0) away from the truncation
    // boundary: columns of basis states with m < na-1 and n < nb-2.
    auto rng = testing::seeded_rng(7);
    for (int draw = 0; draw < 5; ++draw) {
        SystemParams p = testing::random_regime_params(rng);
        p.F = 0.0;
        const SpMat H = hamiltonian(p, space55).matrix;

        const QOperator a = annihilator_a(space55);
        const QOperator b = annihilator_b(space55);
        const QOperator sm = sigma_minus(space55);
        const SpMat N = SpMat(mul(dagger(a), a).matrix + mul(dagger(sm), sm).matrix) +
                        SpMat(mul(dagger(b), b).matrix * Complex(0.5));
        const SpMat C = SpMat(H * N) - SpMat(N * H);

        for (int i = 0; i < space55.dim(); ++i) {
            const BasisState s = basis_state(i, space55);
            if (s.m < space55.na_dim - 1 && s.n < space55.nb_dim - 2) {
                Eigen::VectorXcd e = Eigen::VectorXcd::Zero(space55.dim());
                e(i) = 1.0;
                const Eigen::VectorXcd col = C * e;
                CHECK(col.cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("params validation") {
    SystemParams p;
    p.n_th = -0.1;
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
    p.n_th = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
    p = SystemParams{};
    CHECK_NOTHROW(validate_params(p));
    p.kappa_a = -1.0;  // accepted (gain regime) but flagged
    CHECK_NOTHROW(validate_params(p));
    CHECK(has_gain_rates(p));
}
