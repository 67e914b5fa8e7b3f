// sweep.hpp: observables over 1-D and 2-D parameter grids, with local-minimum
// refinement for locating blockade dips.

#pragma once

#include "blockade/observables.hpp"
#include "blockade/steady_state.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace blockade {

// Named access to SystemParams fields, plus the constrained-detuning alias
// "delta". These names are also the config keys and CSV axis headers.
inline void set_param(SystemParams& p, std::string_view name, double value) {
    if (name == "delta") {
        p = with_constrained_detuning(p, value);
    } else if (name == "delta_a") {
        p.delta_a = value;
    } else if (name == "delta_e") {
        p.delta_e = value;
    } else if (name == "delta_b") {
        p.delta_b = value;
    } else if (name == "J") {
        p.J = value;
    } else if (name == "g") {
        p.g = value;
    } else if (name == "F") {
        p.F = value;
    } else if (name == "kappa_a") {
        p.kappa_a = value;
    } else if (name == "kappa_b") {
        p.kappa_b = value;
    } else if (name == "gamma") {
        p.gamma = value;
    } else if (name == "n_th") {
        p.n_th = value;
    } else {
        throw std::invalid_argument("set_param: unknown parameter '" + std::string(name) + "'");
    }
}

inline bool is_param_name(std::string_view name) noexcept {
    static constexpr std::string_view names[] = {"delta",   "delta_a", "delta_e", "delta_b",
                                                 "J",       "g",       "F",       "kappa_a",
                                                 "kappa_b", "gamma",   "n_th"};
    for (auto n : names)
        if (n == name) return true;
    return false;
}

struct AxisSpec {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    friend bool operator==(const AxisSpec&, const AxisSpec&) = default;
};

inline void validate_axis(const AxisSpec& axis) {
    if (!is_param_name(axis.param)) {
        throw std::invalid_argument("axis: unknown parameter '" + axis.param + "'");
    }
    if (axis.count < 2) throw std::invalid_argument("axis: count must be >= 2");
    if (!(axis.min <= axis.max)) throw std::invalid_argument("axis: min must be <= max");
}

inline double axis_value(const AxisSpec& axis, int i) {
    return axis.min + (axis.max - axis.min) * double(i) / double(axis.count - 1);
}

struct SweepSpec {
    SystemParams base;
    HilbertSpace space;
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    bool log_g2 = true;        // emit log10 g2(0) alongside g2 in CSV output
    double solver_tol = 1e-9;
    double g2_floor = 1e-12;
    int workers = 1;
};

enum class RowStatus { ok, undefined_g2, solver_failed };

inline std::string_view to_string(RowStatus s) noexcept {
    switch (s) {
        case RowStatus::ok: return "ok";
        case RowStatus::undefined_g2: return "undefined_g2";
        case RowStatus::solver_failed: return "solver_failed";
    }
    return "?";
}

struct SweepRow {
    double axis1_value = 0.0;
    std::optional<double> axis2_value;
    double g2_a = std::numeric_limits<double>::quiet_NaN();
    double mean_n_a = std::numeric_limits<double>::quiet_NaN();
    double p_g10 = std::numeric_limits<double>::quiet_NaN();
    double p_g02 = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    RowStatus status = RowStatus::solver_failed;
};

namespace detail {

inline SweepRow evaluate_point(const SweepSpec& spec, int i1, std::optional<int> i2) {
    SweepRow row;
    row.axis1_value = axis_value(spec.axis1, i1);
    SystemParams p = spec.base;
    if (i2) {
        row.axis2_value = axis_value(*spec.axis2, *i2);
        set_param(p, spec.axis2->param, *row.axis2_value);
    }
    set_param(p, spec.axis1.param, row.axis1_value);

    try {
        const Superoperator L = liouvillian(p, spec.space);
        const SteadyStateResult ss = steady_state_direct(L, spec.solver_tol);
        row.residual = ss.residual;
        row.mean_n_a = mean_photon(ss.rho, Mode::a);
        row.p_g10 = population(ss.rho, BasisState{Atom::g, 1, 0});
        row.p_g02 = population(ss.rho, BasisState{Atom::g, 0, 2});
        if (!ss.within_tolerance) {
            row.status = RowStatus::solver_failed;
            return row;
        }
        row.g2_a = g2_zero(ss.rho, Mode::a, spec.g2_floor);
        row.status = RowStatus::ok;
    } catch (const undefined_correlation_error&) {
        row.status = RowStatus::undefined_g2;
    } catch (const std::exception&) {
        row.status = RowStatus::solver_failed;
    }
    return row;
}

} // namespace detail

// One row per grid point, axis2-major then axis1, each point an independent
// Liouvillian build + steady-state solve. Failures become row statuses;
// they never abort the grid. Output content is identical for any worker
// count: every point is computed by the same deterministic code path and
// written at its own grid index.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate_params(spec.base);
    validate_axis(spec.axis1);
    if (spec.axis2) validate_axis(*spec.axis2);

    const int n1 = spec.axis1.count;
    const int n2 = spec.axis2 ? spec.axis2->count : 1;
    std::vector<SweepRow> rows(std::size_t(n1) * n2);

    const auto eval_index = [&](int k) {
        const int i1 = k % n1;
        const std::optional<int> i2 =
            spec.axis2 ? std::optional<int>(k / n1) : std::nullopt;
        rows[std::size_t(k)] = detail::evaluate_point(spec, i1, i2);
    };

    const int total = n1 * n2;
    const int workers = std::max(1, spec.workers);
    if (workers == 1 || total < 2) {
        for (int k = 0; k < total; ++k) eval_index(k);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int k = next.fetch_add(1); k < total; k = next.fetch_add(1)) eval_index(k);
            });
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

struct SweepMinimum {
    double location = 0.0;
    double g2_value = 0.0;
};

// Strict interior local minima of g2 along a 1-D sweep, refined by a
// parabola through the three bracketing samples in log10(g2); dips span
// decades, so the fit is done in log space.
inline std::vector<SweepMinimum> find_minima(const std::vector<SweepRow>& rows) {
    int ok_count = 0;
    for (const auto& r : rows) {
        if (r.axis2_value) throw std::invalid_argument("find_minima: requires 1-D sweep rows");
        if (r.status == RowStatus::ok) ++ok_count;
    }
    if (ok_count < 3) throw std::invalid_argument("find_minima: needs at least 3 ok points");

    std::vector<SweepMinimum> minima;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const auto& lo = rows[i - 1];
        const auto& mid = rows[i];
        const auto& hi = rows[i + 1];
        if (lo.status != RowStatus::ok || mid.status != RowStatus::ok ||
            hi.status != RowStatus::ok) {
            continue;
        }
        if (!(mid.g2_a < lo.g2_a && mid.g2_a < hi.g2_a)) continue;

        const double y0 = std::log10(lo.g2_a);
        const double y1 = std::log10(mid.g2_a);
        const double y2 = std::log10(hi.g2_a);
        const double curvature = y0 - 2.0 * y1 + y2;
        double x = mid.axis1_value;
        double y = y1;
        if (curvature > 0.0) {
            const double h = 0.5 * (hi.axis1_value - lo.axis1_value);
            const double shift = 0.5 * (y0 - y2) / curvature;
            x += h * std::clamp(shift, -1.0, 1.0);
            y = y1 - 0.125 * (y0 - y2) * (y0 - y2) / curvature;
        }
        minima.push_back(SweepMinimum{x, std::pow(10.0, y)});
    }
    return minima;
}

} // namespace blockade
