// csv.hpp: sweep results as self-describing CSV. Comment lines carry the
// fully resolved config so a file can be regenerated (and diffed) from its
// own header.

#pragma once

#include "blockade/config.hpp"
#include "blockade/sweep.hpp"
#include "blockade/util.hpp"

#include <ostream>
#include <string>

namespace blockade {

inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                            const std::vector<SweepRow>& rows, const RunConfig& resolved,
                            const std::string& title) {
    os << "# " << title << '\n';
    const std::string config_text = serialize_config(resolved);
    for (auto line : split_lines(config_text)) {
        if (!line.empty()) os << "# " << line << '\n';
    }

    os << spec.axis1.param;
    if (spec.axis2) os << ',' << spec.axis2->param;
    os << ",g2";
    if (spec.log_g2) os << ",log10_g2";
    os << ",n_a,p_g10,p_g02,residual,status\n";

    for (const auto& r : rows) {
        os << format_double(r.axis1_value);
        if (r.axis2_value) os << ',' << format_double(*r.axis2_value);
        os << ',' << format_double(r.g2_a);
        if (spec.log_g2) os << ',' << format_double(std::log10(r.g2_a));
        os << ',' << format_double(r.mean_n_a);
        os << ',' << format_double(r.p_g10);
        os << ',' << format_double(r.p_g02);
        os << ',' << format_double(r.residual);
        os << ',' << to_string(r.status) << '\n';
    }
}

} // namespace blockade
