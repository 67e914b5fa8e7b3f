// cli.hpp: the command surface behind the blockade tool. Commands are plain
// functions over RunConfig so tests can drive them without a process spawn;
// exit codes are 0 success, 1 solver/validation failure (2 = config error,
// raised as config_error and mapped by the caller).

#pragma once

#include "blockade/csv.hpp"
#include "blockade/observables.hpp"
#include "blockade/presets.hpp"
#include "blockade/steady_state.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace blockade {

namespace detail {

inline void print_kv(std::ostream& os, std::string_view key, const std::string& value) {
    os << "  " << key;
    for (std::size_t i = key.size(); i < 14; ++i) os << ' ';
    os << "= " << value << '\n';
}

// Parameter draws inside the regime the solver contract covers:
// |delta| <= 15, |J|,|g| <= 10, F <= 0.3, n_th <= 0.1, unit rates.
inline SystemParams sample_regime_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> delta(-15.0, 15.0);
    std::uniform_real_distribution<double> coupling(-10.0, 10.0);
    std::uniform_real_distribution<double> drive(0.05, 0.3);
    std::uniform_real_distribution<double> thermal(0.0, 0.1);
    SystemParams p = with_constrained_detuning(SystemParams{}, delta(rng));
    p.J = coupling(rng);
    p.g = coupling(rng);
    p.F = drive(rng);
    p.n_th = thermal(rng);
    return p;
}

inline Eigen::MatrixXcd random_hermitian_unit_trace(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) m(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::MatrixXcd h = m * m.adjoint();  // PSD, so a valid (unnormalized) state
    return h / h.trace();
}

inline std::filesystem::path output_path(const RunConfig& cfg, const std::string& filename) {
    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    return dir / filename;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream os(path);
    if (!os) throw config_error("cannot open output file '" + path.string() + "'");
    return os;
}

} // namespace detail

// Single steady-state solve with the analytic context for the configured
// (delta, J): dressed-state frequencies and the blockade couplings.
inline int cmd_point(const RunConfig& cfg, std::ostream& os) {
    validate_config(cfg);
    const HilbertSpace space = make_space(cfg.na_dim, cfg.nb_dim);
    const SystemParams& p = cfg.params;

    if (has_gain_rates(p)) {
        os << "warning: non-positive decay rate; gain-regime physics is not validated here\n";
    }

    SteadyStateResult ss;
    try {
        ss = steady_state_direct(liouvillian(p, space), cfg.direct_tol);
    } catch (const singular_liouvillian_error& e) {
        os << "solver failure: " << e.what() << '\n';
        return 1;
    }

    os << "steady state (direct, dim " << space.dim() << ")\n";
    detail::print_kv(os, "residual", format_double(ss.residual));
    detail::print_kv(os, "correction", format_double(ss.correction_norm));

    const ObservableSet obs = observe(ss.rho, cfg.g2_floor);
    if (obs.g2_defined) {
        detail::print_kv(os, "g2(0)", format_double(obs.g2_a));
        detail::print_kv(os, "statistics",
                         antibunched(obs.g2_a) ? "sub-Poissonian (antibunched)" : "not antibunched");
    } else {
        detail::print_kv(os, "g2(0)", "undefined (mean photon number below floor)");
    }
    detail::print_kv(os, "N_a", format_double(obs.mean_n_a));
    detail::print_kv(os, "N_b", format_double(obs.mean_n_b));
    detail::print_kv(os, "P(g,1,0)", format_double(population_of(obs, {Atom::g, 1, 0})));
    detail::print_kv(os, "P(e,0,0)", format_double(population_of(obs, {Atom::e, 0, 0})));
    detail::print_kv(os, "P(g,0,2)", format_double(population_of(obs, {Atom::g, 0, 2})));

    os << "single-excitation analysis (delta = " << format_double(p.delta_a) << ")\n";
    if (!is_detuning_constrained(p)) {
        os << "  note: detunings do not satisfy delta_a = delta_e, delta_b = delta_a/2;\n"
           << "  xi and g* below use delta = delta_a\n";
    }
    const EigenFrequencies xi = eigenfrequencies(p.delta_a, p.J, p.g);
    detail::print_kv(os, "xi_plus", format_double(xi.xi_plus));
    detail::print_kv(os, "xi_zero", format_double(xi.xi_zero));
    detail::print_kv(os, "xi_minus", format_double(xi.xi_minus));
    if (const auto cpb = cpb_condition(p.delta_a, p.J)) {
        detail::print_kv(os, "cpb g*", "+/-" + format_double(cpb->g_plus));
        const double s = std::sqrt(2.0) * p.g;
        if (std::min(std::abs(s - std::sqrt(2.0) * cpb->g_plus),
                     std::abs(s + std::sqrt(2.0) * cpb->g_plus)) < 1e-6) {
            os << "  on analytic CPB condition\n";
        }
    } else {
        os << "  no real CPB solution (delta^2 < J^2)\n";
    }

    if (!ss.within_tolerance) {
        os << "solver failure: residual " << format_double(ss.residual)
           << " above tolerance " << format_double(cfg.direct_tol) << '\n';
        return 1;
    }
    return 0;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& os) {
    validate_config(cfg);
    const SweepSpec spec = sweep_from_config(cfg);
    const std::vector<SweepRow> rows = run_sweep(spec);

    const std::filesystem::path path =
        cfg.out.empty() ? std::filesystem::path("sweep.csv") : std::filesystem::path(cfg.out);
    auto file = detail::open_output(path);
    write_sweep_csv(file, spec, rows, cfg, "blockade sweep");
    os << "wrote " << path.string() << " (" << rows.size() << " points)\n";

    int failed = 0;
    for (const auto& r : rows)
        if (r.status == RowStatus::solver_failed) ++failed;
    if (failed > 0) {
        os << failed << " point(s) failed; see status column\n";
        return 1;
    }
    if (!spec.axis2) {
        int ok = 0;
        for (const auto& r : rows)
            if (r.status == RowStatus::ok) ++ok;
        if (ok >= 3) {
            for (const auto& m : find_minima(rows)) {
                os << "local minimum: " << spec.axis1.param << " = " << format_double(m.location)
                   << ", g2 = " << format_double(m.g2_value) << '\n';
            }
        }
    }
    return 0;
}

inline int cmd_figure(const std::string& preset, const RunConfig& cfg,
                      const std::vector<std::string>& overrides, std::ostream& os) {
    FigurePlan plan = make_figure_plan(preset, cfg);
    int failed_points = 0;
    for (auto& curve : plan.curves) {
        for (const auto& o : overrides) apply_override(curve.config, o);
        validate_config(curve.config);
        const SweepSpec spec = sweep_from_config(curve.config);
        const std::vector<SweepRow> rows = run_sweep(spec);
        for (const auto& r : rows)
            if (r.status == RowStatus::solver_failed) ++failed_points;

        const auto path = detail::output_path(cfg, curve.filename);
        auto file = detail::open_output(path);
        const std::string title =
            "preset " + plan.name + (curve.key.empty() ? "" : " " + curve.key);
        write_sweep_csv(file, spec, rows, curve.config, title);
        os << "wrote " << path.string() << " (" << rows.size() << " points)\n";
    }
    if (cfg.emit_plot_script) {
        const auto path = detail::output_path(cfg, plan.name + ".gp");
        auto file = detail::open_output(path);
        file << gnuplot_script(plan);
        os << "wrote " << path.string() << '\n';
    }
    if (failed_points > 0) {
        os << failed_points << " point(s) failed; see status columns\n";
        return 1;
    }
    return 0;
}

// Structural invariant suite: trace preservation, Hermiticity preservation,
// steady-state positivity and normalization, direct-vs-evolved agreement,
// and truncation convergence at the strong-blockade reference point.
inline int cmd_validate(const RunConfig& cfg, std::ostream& os) {
    validate_config(cfg);
    const HilbertSpace space = make_space(cfg.na_dim, cfg.nb_dim);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    bool all_ok = true;

    const auto report = [&](const char* name, bool ok, const std::string& detail) {
        os << (ok ? "[ ok ] " : "[FAIL] ") << name << ": " << detail << '\n';
        all_ok = all_ok && ok;
    };

    {
        double worst = 0.0;
        for (int probe = 0; probe < 3; ++probe) {
            SystemParams p = probe == 0 ? cfg.params : detail::sample_regime_params(rng);
            const Superoperator L = liouvillian(p, space);
            Eigen::VectorXcd left =
                L.matrix.transpose() * vec(Eigen::MatrixXcd::Identity(space.dim(), space.dim()));
            worst = std::max(worst, left.cwiseAbs().maxCoeff());
        }
        report("trace_preservation", worst <= cfg.tol_trace,
               "max |<<I|L| = " + format_double(worst));
    }
    {
        const Superoperator L = liouvillian(cfg.params, space);
        double worst = 0.0;
        for (int draw = 0; draw < 3; ++draw) {
            const DensityMatrix rho{space, detail::random_hermitian_unit_trace(space.dim(), rng)};
            worst = std::max(worst, hermiticity_defect(apply(L, rho)));
        }
        report("hermiticity_preservation", worst <= cfg.tol_herm,
               "max defect = " + format_double(worst));
    }

    SteadyStateResult ss;
    bool solved = false;
    try {
        ss = steady_state_direct(liouvillian(cfg.params, space), cfg.direct_tol);
        solved = ss.within_tolerance;
    } catch (const singular_liouvillian_error&) {
    }
    if (!solved) {
        report("steady_state", false, "direct solve failed at the configured point");
    } else {
        const double min_eig = min_eigenvalue(ss.rho.matrix);
        report("steady_state_positivity", min_eig >= -cfg.tol_psd,
               "min eigenvalue = " + format_double(min_eig));
        double pop_sum = 0.0;
        for (int i = 0; i < space.dim(); ++i) {
            pop_sum += population(ss.rho, basis_state(i, space));
        }
        report("population_normalization", std::abs(pop_sum - 1.0) <= cfg.tol_pop,
               "sum - 1 = " + format_double(pop_sum - 1.0));
    }

    {
        double worst = 0.0;
        for (int point = 0; point < 3; ++point) {
            const SystemParams p = detail::sample_regime_params(rng);
            const Superoperator L = liouvillian(p, space);
            const SteadyStateResult direct = steady_state_direct(L, cfg.direct_tol);
            const SteadyStateResult evolved =
                steady_state_evolved(L, vacuum_state(space), cfg.evolve_tol, cfg.evolve_t_max,
                                     cfg.evolve_rtol, cfg.evolve_atol);
            worst = std::max(worst, trace_distance(direct.rho, evolved.rho));
        }
        report("oracle_equivalence", worst <= cfg.tol_oracle,
               "max trace distance = " + format_double(worst));
    }

    {
        // reference point: delta = 10, J = 6, g = 4*sqrt(2), F = 0.1
        SystemParams p = with_constrained_detuning(SystemParams{}, 10.0);
        p.J = 6.0;
        p.g = 4.0 * std::sqrt(2.0);
        p.F = 0.1;
        const auto g2_at = [&](int na, int nb) {
            const HilbertSpace s = make_space(na, nb);
            return g2_zero(steady_state_direct(liouvillian(p, s), cfg.direct_tol).rho, Mode::a,
                           cfg.g2_floor);
        };
        const double g2_55 = g2_at(5, 5);
        const double g2_77 = g2_at(7, 7);
        const double rel = std::abs(g2_77 - g2_55) / std::abs(g2_77);
        report("truncation_convergence", rel < cfg.trunc_conv_rel,
               "g2 rel change (5,5)->(7,7) = " + format_double(rel));
    }

    os << (all_ok ? "validate: all checks passed\n" : "validate: FAILURES\n");
    return all_ok ? 0 : 1;
}

// Expose the time-evolution oracle directly.
inline int cmd_evolve(const RunConfig& cfg, std::ostream& os) {
    validate_config(cfg);
    const HilbertSpace space = make_space(cfg.na_dim, cfg.nb_dim);
    const Superoperator L = liouvillian(cfg.params, space);

    const SteadyStateResult ss = steady_state_evolved(
        L, vacuum_state(space), cfg.evolve_tol, cfg.evolve_t_max, cfg.evolve_rtol, cfg.evolve_atol);
    os << "time-evolved steady state (from vacuum)\n";
    detail::print_kv(os, "t_final", format_double(ss.t_final));
    detail::print_kv(os, "residual", format_double(ss.residual));
    detail::print_kv(os, "converged", ss.within_tolerance ? "true" : "false");

    const ObservableSet obs = observe(ss.rho, cfg.g2_floor);
    detail::print_kv(os, "g2(0)", obs.g2_defined ? format_double(obs.g2_a) : "undefined");
    detail::print_kv(os, "N_a", format_double(obs.mean_n_a));
    detail::print_kv(os, "N_b", format_double(obs.mean_n_b));

    try {
        const SteadyStateResult direct = steady_state_direct(L, cfg.direct_tol);
        detail::print_kv(os, "vs direct", format_double(trace_distance(ss.rho, direct.rho)));
    } catch (const singular_liouvillian_error&) {
        os << "  (direct solve unavailable for comparison)\n";
    }

    if (!ss.within_tolerance) {
        os << "did not reach derivative tolerance " << format_double(cfg.evolve_tol) << " by t = "
           << format_double(cfg.evolve_t_max) << '\n';
        return 1;
    }
    return 0;
}

} // namespace blockade
