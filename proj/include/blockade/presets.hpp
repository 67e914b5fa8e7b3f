// presets.hpp: figure presets. Each preset pins the parameters of one
// published panel and expands to one or more sweep curves plus a gnuplot
// script over the emitted CSV files.

#pragma once

#include "blockade/config.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace blockade {

struct PresetCurve {
    std::string filename;
    std::string key;  // legend entry, e.g. "J=5"
    RunConfig config;
};

struct FigurePlan {
    std::string name;
    bool two_dim = false;
    std::string quantity;  // "log10_g2" or "n_a"
    std::string x_label;
    std::string y_label;   // 2-D only
    std::vector<PresetCurve> curves;
};

inline const std::vector<std::string>& figure_preset_names() {
    static const std::vector<std::string> names = {"fig2a", "fig2a1", "fig2b", "fig2b1",
                                                   "fig2c", "fig2c1", "fig3a", "fig3b",
                                                   "fig4a", "fig4b"};
    return names;
}

namespace detail {

inline AxisSpec axis(std::string param, double min, double max, int count) {
    return AxisSpec{std::move(param), min, max, count};
}

// Pin the caption parameters of a curve on top of the user's run settings
// (truncation, tolerances, workers survive; physics comes from the preset).
inline RunConfig pin(const RunConfig& base, double delta, const AxisSpec& axis1,
                     const AxisSpec& axis2 = {}) {
    RunConfig c = base;
    c.params = with_constrained_detuning(SystemParams{}, delta);
    c.params.kappa_a = base.params.kappa_a;
    c.params.kappa_b = base.params.kappa_b;
    c.params.gamma = base.params.gamma;
    c.params.F = 0.1;
    c.axis1 = axis1;
    c.axis2 = axis2;
    c.log_g2 = true;
    return c;
}

} // namespace detail

inline FigurePlan make_figure_plan(std::string_view name, const RunConfig& base) {
    using detail::axis;
    using detail::pin;
    const double g_4sqrt2 = 4.0 * std::sqrt(2.0);

    FigurePlan plan;
    plan.name = name;
    plan.quantity = name.ends_with('1') ? "n_a" : "log10_g2";

    const auto grid2d = [&](double delta, const AxisSpec& a1, const AxisSpec& a2,
                            double J, double g) {
        plan.two_dim = true;
        plan.x_label = a1.param;
        plan.y_label = a2.param;
        RunConfig c = pin(base, delta, a1, a2);
        c.params.J = J;
        c.params.g = g;
        plan.curves.push_back({plan.name + ".csv", "", std::move(c)});
    };

    if (name == "fig2a" || name == "fig2a1") {
        grid2d(10.0, axis("g", -10, 10, 101), axis("J", -10, 10, 101), 0.0, 0.0);
    } else if (name == "fig2b" || name == "fig2b1") {
        plan.two_dim = true;
        plan.x_label = "g";
        plan.y_label = "delta";
        RunConfig c = pin(base, 0.0, axis("g", -10, 10, 101), axis("delta", -15, 15, 101));
        c.params.J = 2.0;
        plan.curves.push_back({plan.name + ".csv", "", std::move(c)});
    } else if (name == "fig2c" || name == "fig2c1") {
        plan.two_dim = true;
        plan.x_label = "J";
        plan.y_label = "delta";
        RunConfig c = pin(base, 0.0, axis("J", -10, 10, 101), axis("delta", -15, 15, 101));
        c.params.g = 5.0;
        plan.curves.push_back({plan.name + ".csv", "", std::move(c)});
    } else if (name == "fig3a") {
        plan.x_label = "g";
        for (double J : {5.0, 7.0, 9.0}) {
            RunConfig c = pin(base, 10.0, axis("g", -10, 10, 201));
            c.params.J = J;
            plan.curves.push_back(
                {"fig3a_J" + format_double(J) + ".csv", "J=" + format_double(J), std::move(c)});
        }
    } else if (name == "fig3b") {
        plan.x_label = "J";
        for (double g : {5.0, 6.0, 7.0}) {
            RunConfig c = pin(base, 10.0, axis("J", -10, 10, 201));
            c.params.g = g;
            plan.curves.push_back(
                {"fig3b_g" + format_double(g) + ".csv", "g=" + format_double(g), std::move(c)});
        }
    } else if (name == "fig4a") {
        plan.x_label = "F";
        RunConfig c = pin(base, 10.0, axis("F", 0.01, 2.0, 201));
        c.params.J = 6.0;
        c.params.g = g_4sqrt2;
        plan.curves.push_back({"fig4a.csv", "", std::move(c)});
    } else if (name == "fig4b") {
        plan.x_label = "J";
        for (double n_th : {0.001, 0.01, 0.1}) {
            RunConfig c = pin(base, 8.0, axis("J", -10, 10, 201));
            c.params.g = 5.0;
            c.params.n_th = n_th;
            plan.curves.push_back({"fig4b_nth" + format_double(n_th) + ".csv",
                                   "n_th=" + format_double(n_th), std::move(c)});
        }
    } else {
        throw config_error("unknown figure preset '" + std::string(name) +
                           "' (expected one of fig2a..fig4b)");
    }
    return plan;
}

// CSV column layout matches write_sweep_csv: axes first, then g2, log10_g2,
// n_a, ... All preset curves are written with log_g2 = true.
inline std::string gnuplot_script(const FigurePlan& plan) {
    const int col_quantity = [&] {
        const int g2_col = plan.two_dim ? 3 : 2;
        return plan.quantity == "n_a" ? g2_col + 2 : g2_col + 1;
    }();

    std::string s;
    s += "# gnuplot script for " + plan.name + "\n";
    s += "set datafile separator \",\"\n";
    s += "set datafile commentschars \"#\"\n";
    s += "set xlabel \"" + plan.x_label + "\"\n";
    if (plan.two_dim) {
        s += "set ylabel \"" + plan.y_label + "\"\n";
        s += "set cblabel \"" + plan.quantity + "\"\n";
        if (plan.quantity == "n_a") s += "set logscale cb\n";
        s += "plot \"" + plan.curves.front().filename + "\" skip 1 using 1:2:" +
             format_int(col_quantity) + " with image notitle\n";
    } else {
        s += "set ylabel \"" + plan.quantity + "\"\n";
        s += "set key top right\n";
        s += "plot ";
        for (std::size_t i = 0; i < plan.curves.size(); ++i) {
            if (i > 0) s += ", \\\n     ";
            const auto& c = plan.curves[i];
            s += "\"" + c.filename + "\" skip 1 using 1:" + format_int(col_quantity) +
                 " with lines title \"" + (c.key.empty() ? plan.name : c.key) + "\"";
        }
        s += "\n";
    }
    return s;
}

} // namespace blockade
