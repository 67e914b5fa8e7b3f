#include "blockade/observables.hpp"

#include "blockade/steady_state.hpp"
#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace blockade;

TEST_CASE("g2 of Fock states") {
    const auto space = make_space(5, 5);
    CHECK(g2_zero(pure_state(space, {Atom::g, 1, 0}), Mode::a) == 0.0);
    CHECK(g2_zero(pure_state(space, {Atom::g, 2, 0}), Mode::a) ==
          Catch::Approx(0.5).margin(1e-13));
    CHECK(g2_zero(pure_state(space, {Atom::g, 0, 2}), Mode::b) ==
          Catch::Approx(0.5).margin(1e-13));
}

TEST_CASE("g2 of a Fock state is n(n-1)/n^2") {
    const auto space = make_space(6, 3);
    for (int n = 1; n < space.na_dim; ++n) {
        const double g2 = g2_zero(pure_state(space, {Atom::g, n, 0}), Mode::a);
        CHECK(g2 == Catch::Approx(double(n - 1) / double(n)).margin(1e-13));
    }
}

TEST_CASE("mean photon numbers") {
    const auto space = make_space(5, 5);
    CHECK(mean_photon(vacuum_state(space), Mode::a) == 0.0);
    CHECK(mean_photon(vacuum_state(space), Mode::b) == 0.0);
    const DensityMatrix rho = pure_state(space, {Atom::g, 3, 1});
    CHECK(mean_photon(rho, Mode::a) == Catch::Approx(3.0).margin(1e-12));
    CHECK(mean_photon(rho, Mode::b) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("populations") {
    const auto space = make_space(5, 5);
    const DensityMatrix v = vacuum_state(space);
    CHECK(population(v, {Atom::g, 0, 0}) == 1.0);
    CHECK(population(v, {Atom::e, 0, 0}) == 0.0);
    CHECK_THROWS_AS(population(v, {Atom::g, 9, 0}), std::out_of_range);
}

TEST_CASE("populations of a solved state sum to one") {
    const auto space = make_space(5, 5);
    auto rng = testing::seeded_rng(30);
    const SystemParams p = testing::random_regime_params(rng);
    const auto ss = steady_state_direct(liouvillian(p, space));
    double sum = 0.0;
    for (int i = 0; i < space.dim(); ++i) {
        const double pop = population(ss.rho, basis_state(i, space));
        CHECK(pop >= -1e-8);
        CHECK(pop <= 1.0 + 1e-8);
        sum += pop;
    }
    CHECK(std::abs(sum - 1.0) < 1e-10);
}

TEST_CASE("g2 is undefined below the photon-number floor") {
    const auto space = make_space(5, 5);
    SystemParams p = with_constrained_detuning(SystemParams{}, 10.0);
    p.F = 0.0;
    const auto ss = steady_state_direct(liouvillian(p, space));
    CHECK_THROWS_AS(g2_zero(ss.rho, Mode::a), undefined_correlation_error);
    const ObservableSet obs = observe(ss.rho);
    CHECK_FALSE(obs.g2_defined);
    CHECK(std::isnan(obs.g2_a));
}

TEST_CASE("g2 is insensitive to the solver-level Hermitization") {
    const auto space = make_space(5, 5);
    auto rng = testing::seeded_rng(31);
    SystemParams p = with_constrained_detuning(SystemParams{}, 10.0);
    p.J = 6.0;
    p.g = 4.0 * std::sqrt(2.0);
    p.F = 0.1;
    const auto ss = steady_state_direct(liouvillian(p, space));
    const double base = g2_zero(ss.rho, Mode::a);

    // a state within the solver's Hermiticity guarantee gives the same g2
    // whether or not it is re-Hermitized first
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd noise(space.dim(), space.dim());
    for (int j = 0; j < space.dim(); ++j)
        for (int i = 0; i < space.dim(); ++i) noise(i, j) = Complex(gauss(rng), gauss(rng));
    const DensityMatrix raw{space, ss.rho.matrix + 1e-12 * noise};
    const DensityMatrix hermitized{space, 0.5 * (raw.matrix + raw.matrix.adjoint())};
    CHECK(std::abs(g2_zero(raw, Mode::a) - g2_zero(hermitized, Mode::a)) < 1e-12);
    CHECK(std::abs(g2_zero(hermitized, Mode::a) - base) < 1e-9);
}

TEST_CASE("antibunching classification follows the sub-Poissonian boundary") {
    CHECK(antibunched(0.999));
    CHECK_FALSE(antibunched(1.0));
    CHECK_FALSE(antibunched(1.5));
}

TEST_CASE("observable set carries the mechanism populations") {
    const auto space = make_space(5, 5);
    SystemParams p = with_constrained_detuning(SystemParams{}, 10.0);
    p.J = 6.0;
    p.g = 4.0 * std::sqrt(2.0);
    p.F = 0.1;
    const auto ss = steady_state_direct(liouvillian(p, space));
    const ObservableSet obs = observe(ss.rho);
    CHECK(obs.g2_defined);
    CHECK(obs.mean_n_a > 0.0);
    CHECK(obs.mean_n_b > 0.0);
    CHECK(population_of(obs, {Atom::g, 1, 0}) == population(ss.rho, {Atom::g, 1, 0}));
    CHECK(population_of(obs, {Atom::e, 0, 0}) == population(ss.rho, {Atom::e, 0, 0}));
    CHECK(population_of(obs, {Atom::g, 0, 2}) == population(ss.rho, {Atom::g, 0, 2}));
    CHECK_THROWS_AS(population_of(obs, {Atom::g, 4, 4}), std::out_of_range);
}
