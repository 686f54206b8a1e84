#include "nls/report_io.hpp"

#include <cstdio>
#include <ctime>
#include <ostream>

namespace nls::report {

namespace {

ordered_json rational_entry(const Rational& r) {
    return ordered_json{{"exact", r.str()}, {"value", r.to_double()}};
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void csv_value(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

}  // namespace

ordered_json to_json(const InequalityReport& rep) {
    ordered_json j;
    j["name"] = rep.name;
    j["window"] = rep.window;
    j["max_ratio"] = rep.max_ratio;
    j["median_ratio"] = rep.median_ratio;
    j["empirical_constant"] = rep.empirical_constant;
    j["refinement_drift"] = rep.refinement_drift;
    j["samples"] = rep.ratios.size();
    j["ratio"] = rep.ratios;
    if (!rep.pointwise_ratios.empty()) j["pointwise_ratio"] = rep.pointwise_ratios;
    return j;
}

ordered_json to_json(const TrilinearReport& rep) {
    ordered_json j;
    j["fitted_slope"] = rep.fitted_slope;
    j["t_value"] = rep.t_values;
    j["max_ratio_per_window"] = rep.max_ratios;
    j["normalized"] = to_json(rep.report);
    return j;
}

ordered_json to_json(const UniquenessReport& rep) {
    ordered_json j;
    j["p"] = rep.p;
    j["s"] = rep.s;
    j["T"] = rep.T;
    j["case_id"] = rep.case_id;
    j["q"] = rep.q;
    j["r"] = rep.r;
    j["d_picard_splitstep"] = rep.d_picard_splitstep;
    j["d_picard_refined"] = rep.d_picard_refined;
    j["d_splitstep_refined"] = rep.d_splitstep_refined;
    j["tw_picard_splitstep"] = rep.tw_picard_splitstep;
    j["tw_picard_refined"] = rep.tw_picard_refined;
    j["tw_splitstep_refined"] = rep.tw_splitstep_refined;
    j["eta"] = rep.eta;
    j["empirical_c"] = rep.empirical_c;
    j["t0"] = rep.t0;
    return j;
}

ordered_json to_json(const exponents::ValidationReport& rep) {
    ordered_json j;
    j["overall"] = rep.overall;
    ordered_json conds = ordered_json::array();
    for (const auto& c : rep.conditions) {
        conds.push_back(ordered_json{{"name", c.name},
                                     {"detail", c.detail},
                                     {"margin", c.margin.str()},
                                     {"strict", c.strict},
                                     {"pass", c.pass}});
    }
    j["conditions"] = std::move(conds);
    return j;
}

ordered_json to_json(const exponents::ExponentTuple& tuple) {
    ordered_json j;
    j["p"] = rational_entry(tuple.p);
    j["s"] = rational_entry(tuple.s);
    j["q"] = rational_entry(tuple.inv_q.inv());
    j["r"] = rational_entry(tuple.inv_r.inv());
    j["gamma"] = rational_entry(tuple.inv_gamma.inv());
    j["rho"] = rational_entry(tuple.inv_rho.inv());
    if (tuple.inv_sigma) j["sigma"] = rational_entry(tuple.inv_sigma->inv());
    if (tuple.inv_kappa) j["kappa"] = rational_entry(tuple.inv_kappa->inv());
    if (tuple.delta) j["delta"] = rational_entry(*tuple.delta);
    return j;
}

ordered_json to_json(const IterationTrace& trace) {
    ordered_json j;
    j["chosen_T"] = trace.chosen_T;
    j["ball_radius"] = trace.ball_radius;
    j["halvings"] = trace.halvings;
    j["intervals"] = trace.intervals;
    j["distance"] = trace.distances;
    j["ratio"] = trace.ratios;
    return j;
}

ordered_json envelope(ordered_json config, ordered_json reports) {
    ordered_json doc;
    doc["header"] =
        ordered_json{{"tool", "nls"}, {"version", kVersion}, {"timestamp", utc_now()}};
    doc["config"] = std::move(config);
    doc["reports"] = std::move(reports);
    return doc;
}

std::string canonical_dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

void csv_header(std::ostream& os) { os << "series,index,value\n"; }

void csv_series(std::ostream& os, const std::string& series, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << series << ',' << i << ',';
        csv_value(os, values[i]);
        os << '\n';
    }
}

void csv_scalar(std::ostream& os, const std::string& series, double value) {
    os << series << ",0,";
    csv_value(os, value);
    os << '\n';
}

void csv_from_json(std::ostream& os, const ordered_json& reports) {
    // Depth-first over objects; numeric leaves become scalar series, numeric
    // arrays become indexed series, everything else (strings, booleans) is
    // skipped — CSV carries the plottable numbers only.
    struct Walker {
        std::ostream& os;
        void walk(const std::string& prefix, const ordered_json& node) {
            if (node.is_object()) {
                for (const auto& [key, value] : node.items())
                    walk(prefix.empty() ? key : prefix + "." + key, value);
            } else if (node.is_number()) {
                csv_scalar(os, prefix, node.get<double>());
            } else if (node.is_array() && !node.empty() && node.front().is_number()) {
                csv_series(os, prefix, node.get<std::vector<double>>());
            }
        }
    };
    csv_header(os);
    Walker{os}.walk("", reports);
}

void write_snapshots_csv(std::ostream& os, const SpaceTimeField& u) {
    os << "snapshot,t,x,re,im\n";
    const Grid& g = u.grid();
    for (int j = 0; j < u.mesh().size(); ++j) {
        const double t = u.mesh().nodes()[j];
        const cvector& vals = u.at(j).values();
        for (int m = 0; m < g.n(); ++m) {
            os << j << ',';
            csv_value(os, t);
            os << ',';
            csv_value(os, g.x(m));
            os << ',';
            csv_value(os, vals[m].real());
            os << ',';
            csv_value(os, vals[m].imag());
            os << '\n';
        }
    }
}

}  // namespace nls::report
