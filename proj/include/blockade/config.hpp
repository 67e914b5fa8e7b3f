// config.hpp: flat key=value run configuration. Keys match SystemParams
// field names one-to-one; serialization is canonical so that
// serialize(parse(s)) == s for canonical s.

#pragma once

#include "blockade/sweep.hpp"
#include "blockade/util.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blockade {

class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    SystemParams params;
    int na_dim = 5;
    int nb_dim = 5;

    double direct_tol = 1e-9;
    double evolve_tol = 1e-7;
    double evolve_t_max = 1000.0;
    double evolve_rtol = 1e-9;
    double evolve_atol = 1e-11;
    double g2_floor = 1e-12;

    AxisSpec axis1;  // param empty = no sweep configured
    AxisSpec axis2;
    bool log_g2 = true;
    bool emit_plot_script = true;

    int workers = 1;
    std::string out;

    // validate-suite tolerances
    double tol_trace = 1e-12;
    double tol_herm = 1e-12;
    double tol_psd = 1e-8;
    double tol_pop = 1e-10;
    double tol_oracle = 1e-6;
    double trunc_conv_rel = 0.01;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Defaults: drive F = 0.1 on resonance-constrained detuning delta = 10,
// bare couplings off, unit decay rates, zero temperature, 5/5 truncation.
inline RunConfig default_config() {
    RunConfig c;
    c.params = with_constrained_detuning(SystemParams{}, 10.0);
    c.params.F = 0.1;
    if (const char* env = std::getenv("BLOCKADE_WORKERS")) {
        if (auto v = parse_int(env); v && *v >= 1) c.workers = int(*v);
    }
    return c;
}

namespace detail {

inline double require_double(std::string_view key, std::string_view value) {
    if (auto v = parse_double(value)) return *v;
    throw config_error("config: key '" + std::string(key) + "' expects a number, got '" +
                       std::string(value) + "'");
}

inline int require_count(std::string_view key, std::string_view value) {
    if (auto v = parse_int(value)) return int(*v);
    throw config_error("config: key '" + std::string(key) + "' expects an integer, got '" +
                       std::string(value) + "'");
}

inline bool require_bool(std::string_view key, std::string_view value) {
    if (auto v = parse_bool(value)) return *v;
    throw config_error("config: key '" + std::string(key) + "' expects true/false, got '" +
                       std::string(value) + "'");
}

} // namespace detail

inline void set_config_value(RunConfig& c, std::string_view key, std::string_view value) {
    using detail::require_bool;
    using detail::require_count;
    using detail::require_double;

    if (is_param_name(key)) {
        set_param(c.params, key, require_double(key, value));
    } else if (key == "na_dim") {
        c.na_dim = require_count(key, value);
    } else if (key == "nb_dim") {
        c.nb_dim = require_count(key, value);
    } else if (key == "direct_tol") {
        c.direct_tol = require_double(key, value);
    } else if (key == "evolve_tol") {
        c.evolve_tol = require_double(key, value);
    } else if (key == "evolve_t_max") {
        c.evolve_t_max = require_double(key, value);
    } else if (key == "evolve_rtol") {
        c.evolve_rtol = require_double(key, value);
    } else if (key == "evolve_atol") {
        c.evolve_atol = require_double(key, value);
    } else if (key == "g2_floor") {
        c.g2_floor = require_double(key, value);
    } else if (key == "axis1_param") {
        c.axis1.param = value;
    } else if (key == "axis1_min") {
        c.axis1.min = require_double(key, value);
    } else if (key == "axis1_max") {
        c.axis1.max = require_double(key, value);
    } else if (key == "axis1_count") {
        c.axis1.count = require_count(key, value);
    } else if (key == "axis2_param") {
        c.axis2.param = value;
    } else if (key == "axis2_min") {
        c.axis2.min = require_double(key, value);
    } else if (key == "axis2_max") {
        c.axis2.max = require_double(key, value);
    } else if (key == "axis2_count") {
        c.axis2.count = require_count(key, value);
    } else if (key == "log_g2") {
        c.log_g2 = require_bool(key, value);
    } else if (key == "emit_plot_script") {
        c.emit_plot_script = require_bool(key, value);
    } else if (key == "workers") {
        c.workers = require_count(key, value);
    } else if (key == "out") {
        c.out = value;
    } else if (key == "tol_trace") {
        c.tol_trace = require_double(key, value);
    } else if (key == "tol_herm") {
        c.tol_herm = require_double(key, value);
    } else if (key == "tol_psd") {
        c.tol_psd = require_double(key, value);
    } else if (key == "tol_pop") {
        c.tol_pop = require_double(key, value);
    } else if (key == "tol_oracle") {
        c.tol_oracle = require_double(key, value);
    } else if (key == "trunc_conv_rel") {
        c.trunc_conv_rel = require_double(key, value);
    } else {
        throw config_error("config: unknown key '" + std::string(key) + "'");
    }
}

// "key=value" as accepted by --set.
inline void apply_override(RunConfig& c, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw config_error("config: override '" + std::string(assignment) +
                           "' is not of the form key=value");
    }
    set_config_value(c, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

inline void parse_config_text(RunConfig& c, std::string_view text) {
    for (auto raw : split_lines(text)) {
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        apply_override(c, line);
    }
}

inline std::string serialize_config(const RunConfig& c) {
    std::string s;
    const auto put = [&s](std::string_view key, const std::string& value) {
        s += key;
        s += '=';
        s += value;
        s += '\n';
    };
    put("delta_a", format_double(c.params.delta_a));
    put("delta_e", format_double(c.params.delta_e));
    put("delta_b", format_double(c.params.delta_b));
    put("J", format_double(c.params.J));
    put("g", format_double(c.params.g));
    put("F", format_double(c.params.F));
    put("kappa_a", format_double(c.params.kappa_a));
    put("kappa_b", format_double(c.params.kappa_b));
    put("gamma", format_double(c.params.gamma));
    put("n_th", format_double(c.params.n_th));
    put("na_dim", format_int(c.na_dim));
    put("nb_dim", format_int(c.nb_dim));
    put("direct_tol", format_double(c.direct_tol));
    put("evolve_tol", format_double(c.evolve_tol));
    put("evolve_t_max", format_double(c.evolve_t_max));
    put("evolve_rtol", format_double(c.evolve_rtol));
    put("evolve_atol", format_double(c.evolve_atol));
    put("g2_floor", format_double(c.g2_floor));
    put("axis1_param", c.axis1.param);
    put("axis1_min", format_double(c.axis1.min));
    put("axis1_max", format_double(c.axis1.max));
    put("axis1_count", format_int(c.axis1.count));
    put("axis2_param", c.axis2.param);
    put("axis2_min", format_double(c.axis2.min));
    put("axis2_max", format_double(c.axis2.max));
    put("axis2_count", format_int(c.axis2.count));
    put("log_g2", c.log_g2 ? "true" : "false");
    put("emit_plot_script", c.emit_plot_script ? "true" : "false");
    put("workers", format_int(c.workers));
    put("out", c.out);
    put("tol_trace", format_double(c.tol_trace));
    put("tol_herm", format_double(c.tol_herm));
    put("tol_psd", format_double(c.tol_psd));
    put("tol_pop", format_double(c.tol_pop));
    put("tol_oracle", format_double(c.tol_oracle));
    put("trunc_conv_rel", format_double(c.trunc_conv_rel));
    return s;
}

// Everything a solve depends on is checked up front; no run starts on a
// config that a module would later reject.
inline void validate_config(const RunConfig& c) {
    try {
        validate_params(c.params);
        make_space(c.na_dim, c.nb_dim);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    const auto check_axis = [](const AxisSpec& axis, const char* name) {
        if (axis.param.empty()) return;
        try {
            validate_axis(axis);
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("config: ") + name + ": " + e.what());
        }
    };
    check_axis(c.axis1, "axis1");
    check_axis(c.axis2, "axis2");
    if (!c.axis1.param.empty() && !c.axis2.param.empty() && c.axis1.param == c.axis2.param) {
        throw config_error("config: axis1 and axis2 sweep the same parameter");
    }
    if (c.axis1.param.empty() && !c.axis2.param.empty()) {
        throw config_error("config: axis2 configured without axis1");
    }
    for (double tol : {c.direct_tol, c.evolve_tol, c.evolve_rtol, c.evolve_atol, c.g2_floor,
                       c.evolve_t_max}) {
        if (!(tol > 0.0)) throw config_error("config: tolerances must be > 0");
    }
    if (c.workers < 1) throw config_error("config: workers must be >= 1");
}

// Sweep spec as configured; axis1 must be set.
inline SweepSpec sweep_from_config(const RunConfig& c) {
    if (c.axis1.param.empty()) {
        throw config_error("config: no sweep axis configured (set axis1_param)");
    }
    SweepSpec spec;
    spec.base = c.params;
    spec.space = make_space(c.na_dim, c.nb_dim);
    spec.axis1 = c.axis1;
    if (!c.axis2.param.empty()) spec.axis2 = c.axis2;
    spec.log_g2 = c.log_g2;
    spec.solver_tol = c.direct_tol;
    spec.g2_floor = c.g2_floor;
    spec.workers = c.workers;
    return spec;
}

} // namespace blockade
