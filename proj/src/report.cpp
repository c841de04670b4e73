#include "halfspace/report.hpp"

#include <cmath>
#include <cstdio>

namespace halfspace {

namespace {

/// Exponents may be infinite; JSON has no literal for that.
Json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return nullptr;
    return v;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string g17(double v) { return fmt("%.17g", v); }

}  // namespace

std::string version() { return HALFSPACE_VERSION; }

Json to_json(const GridSpec& grid) {
    return {{"dim", grid.dim},
            {"half_width", grid.half_width},
            {"points", grid.points},
            {"spacing", grid.spacing()},
            {"staggered", grid.staggered}};
}

Json to_json(const DyadicBank& bank) {
    return {{"j_min", bank.j_min}, {"j_max", bank.j_max}, {"gain", bank.gain}, {"table_hash", bank.table_hash}};
}

Json to_json(const LinearFit& fit) {
    return {{"slope", number(fit.slope)},
            {"intercept", number(fit.intercept)},
            {"slope_stderr", number(fit.slope_stderr)},
            {"r_squared", number(fit.r_squared)},
            {"points", fit.points}};
}

Json to_json(const SpaceSpec& spec) {
    Json j{{"kind", spec.kind == SpaceKind::Sobolev ? "sobolev" : "besov"},
           {"homogeneous", spec.homogeneous},
           {"s", spec.s},
           {"p", number(spec.p)}};
    j["q"] = spec.q ? number(*spec.q) : Json(nullptr);
    j["operator"] = to_string(spec.op);
    j["describe"] = spec.describe();
    return j;
}

Json to_json(const NormReport& report) {
    Json blocks = Json::array();
    for (const auto& b : report.blocks) blocks.push_back({{"j", b.j}, {"weighted", number(b.weighted)}});
    Json j{{"space", to_json(report.spec)}, {"value", number(report.value)}, {"blocks", blocks}};
    j["low_pass"] = report.low_pass ? number(*report.low_pass) : Json(nullptr);
    j["leak"] = report.leak;
    j["warnings"] = report.warnings;
    return j;
}

Json to_json(const VerdictDetail& d) {
    Json j{{"verdict", to_string(d.verdict)},
           {"reason", d.reason},
           {"spread", number(d.spread)},
           {"monotone_increasing", d.monotone_increasing},
           {"diverging_members", d.diverging_members}};
    j["min_increment_ratio"] = d.min_increment_ratio ? number(*d.min_increment_ratio) : Json(nullptr);
    j["loglog_fit"] = d.loglog_fit ? to_json(*d.loglog_fit) : Json(nullptr);
    j["log_fit"] = d.log_fit ? to_json(*d.log_fit) : Json(nullptr);
    return j;
}

Json to_json(const RatioReport& report) {
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"member", e.member},
                           {"label", e.label},
                           {"resolution", e.resolution},
                           {"lhs", number(e.value.lhs)},
                           {"rhs", number(e.value.rhs)},
                           {"ratio", number(e.value.ratio)},
                           {"degenerate", e.value.degenerate}});
    }
    Json max_ratio = Json::array();
    for (double r : report.max_ratio) max_ratio.push_back(number(r));
    return {{"experiment", report.experiment},
            {"resolutions", report.resolutions},
            {"max_ratio", max_ratio},
            {"summary", to_json(report.summary)},
            {"excluded", report.excluded},
            {"bank", to_json(report.bank)},
            {"entries", entries}};
}

Json to_json(const SingularityProfile& profile) {
    auto fit = [](const ProfileFit& f) {
        return Json{{"exponent", number(f.exponent)},
                    {"constant", number(f.constant)},
                    {"lower_bound", number(f.lower_bound)},
                    {"r_squared", number(f.r_squared)}};
    };
    return {{"p", number(profile.p)},
            {"s", profile.s},
            {"window", {profile.x_low, profile.delta}},
            {"expected_exponent", -1.0 / profile.p},
            {"spectral", fit(profile.spectral)},
            {"oracle", fit(profile.oracle)},
            {"antisymmetry", profile.antisymmetry},
            {"engine_mismatch", profile.engine_mismatch},
            {"samples", profile.samples.size()}};
}

Json to_json(const BlockFloorReport& report) {
    Json rows = Json::array();
    for (const auto& r : report.rows) rows.push_back({{"j", r.j}, {"weighted", r.weighted}, {"sup", r.sup}});
    Json sums = Json::array();
    for (const auto& ps : report.partial_sums) {
        sums.push_back({{"q", number(ps.q)}, {"expected_slope", 1.0 / ps.q}, {"sums", ps.sums}, {"fit", to_json(ps.fit)}});
    }
    return {{"p", number(report.p)},
            {"rows", rows},
            {"top_min", report.top_min},
            {"top_median", report.top_median},
            {"plateau", report.plateau},
            {"plateau_start", report.plateau_start},
            {"partial_sums", sums},
            {"limit",
             {{"argmax", report.limit_argmax},
              {"value_direct", report.limit_value_direct},
              {"value_sine", report.limit_value_sine},
              {"shape_j", report.shape_j},
              {"shape_error", report.shape_error}}}};
}

Json to_json(const EndpointGrowth& growth) {
    return {{"resolutions", growth.resolutions}, {"values", growth.values}, {"log_fit", to_json(growth.log_fit)}};
}

Json to_json(const SelftestReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"value", number(c.value)},
                          {"tolerance", c.tolerance},
                          {"cases", c.cases},
                          {"passed", c.passed}});
    }
    return {{"passed", report.passed()}, {"checks", checks}};
}

Json make_report(const ReportHeader& header, Json config, Json result) {
    Json j{{"tool", "halfspace"},
           {"version", version()},
           {"command", header.command},
           {"seed", header.seed},
           {"grid", to_json(header.grid)},
           {"bank", to_json(header.bank)}};
    j["wall_time_s"] = header.wall_time ? Json(*header.wall_time) : Json(nullptr);
    j["config"] = std::move(config);
    j["result"] = std::move(result);
    return j;
}

std::string serialize(const Json& report) { return report.dump(2) + "\n"; }

void write_ratio_csv(std::ostream& out, const RatioReport& report) {
    out << "member,label,resolution,lhs,rhs,ratio,degenerate\n";
    for (const auto& e : report.entries) {
        out << e.member << ',' << '"' << e.label << '"' << ',' << e.resolution << ',' << g17(e.value.lhs) << ','
            << g17(e.value.rhs) << ',' << g17(e.value.ratio) << ',' << (e.value.degenerate ? 1 : 0) << '\n';
    }
}

void write_blocks_csv(std::ostream& out, const BlockFloorReport& report) {
    out << "j,weighted,sup\n";
    for (const auto& r : report.rows) out << r.j << ',' << g17(r.weighted) << ',' << g17(r.sup) << '\n';
}

void write_profile_csv(std::ostream& out, const SingularityProfile& profile) {
    out << "x,spectral,oracle\n";
    for (const auto& s : profile.samples) out << g17(s[0]) << ',' << g17(s[1]) << ',' << g17(s[2]) << '\n';
}

void write_limit_csv(std::ostream& out, double x_max, std::size_t samples) {
    out << "x,G\n";
    for (std::size_t i = 0; i <= samples; ++i) {
        const double x = x_max * static_cast<double>(i) / static_cast<double>(samples);
        out << g17(x) << ',' << g17(limiting_block_sine(x)) << '\n';
    }
}

void print_table(std::ostream& out, const NormReport& report) {
    out << report.spec.describe() << " = " << fmt("%.10g", report.value) << "  (leak " << fmt("%.2e", report.leak)
        << ")\n";
    if (!report.blocks.empty()) out << "     j   2^{sj}||phi_j f||_p\n";
    for (const auto& b : report.blocks) out << fmt("%6.0f", b.j) << "   " << fmt("%.10g", b.weighted) << '\n';
    if (report.low_pass) out << "   low   " << fmt("%.10g", *report.low_pass) << '\n';
    for (const auto& w : report.warnings) out << "warning: " << w << '\n';
}

void print_table(std::ostream& out, const RatioReport& report) {
    out << report.experiment << '\n' << "           N   max ratio\n";
    for (std::size_t i = 0; i < report.resolutions.size(); ++i) {
        out << fmt("%12.0f", static_cast<double>(report.resolutions[i])) << "   "
            << fmt("%.9f", report.max_ratio[i]) << '\n';
    }
    out << "verdict: " << to_string(report.summary.verdict) << " (" << report.summary.reason << ")\n";
    for (const auto& e : report.excluded) out << "excluded: " << e << '\n';
}

void print_table(std::ostream& out, const SingularityProfile& profile) {
    out << "Lambda^{1/p} Phi_odd near 0, p = " << fmt("%g", profile.p) << ", window [" << fmt("%.4g", profile.x_low)
        << ", " << fmt("%.4g", profile.delta) << "]\n"
        << "  engine     exponent   constant   lower bound   R^2\n";
    auto row = [&](const char* name, const ProfileFit& f) {
        out << "  " << name << fmt("%11.5f", f.exponent) << fmt("%11.5f", f.constant) << fmt("%14.5f", f.lower_bound)
            << fmt("%9.6f", f.r_squared) << '\n';
    };
    row("spectral", profile.spectral);
    row("oracle  ", profile.oracle);
    out << "  expected exponent " << fmt("%.5f", -1.0 / profile.p) << ", engine mismatch "
        << fmt("%.2e", profile.engine_mismatch) << '\n';
}

void print_table(std::ostream& out, const BlockFloorReport& report) {
    out << "     j   2^{j/p}||phi_j Phi_odd||_p\n";
    for (const auto& r : report.rows) out << fmt("%6.0f", r.j) << "   " << fmt("%.8f", r.weighted) << '\n';
    out << "plateau " << (report.plateau ? "yes" : "no") << " from j = " << report.plateau_start << ", top-4 min "
        << fmt("%.6f", report.top_min) << '\n';
    for (const auto& ps : report.partial_sums) {
        out << "q = " << fmt("%g", ps.q) << ": partial-sum exponent " << fmt("%.4f", ps.fit.slope) << " (expected "
            << fmt("%.4f", 1.0 / ps.q) << ")\n";
    }
    out << "limit G: max " << fmt("%.6f", report.limit_value_sine) << " at x = " << fmt("%.5f", report.limit_argmax)
        << ", shape error at j = " << report.shape_j << ": " << fmt("%.4f", report.shape_error) << '\n';
}

void print_table(std::ostream& out, const EndpointGrowth& growth) {
    out << "           N   ||Lambda^{1/p} Phi_odd||^p near 0\n";
    for (std::size_t i = 0; i < growth.values.size(); ++i) {
        out << fmt("%12.0f", static_cast<double>(growth.resolutions[i])) << "   " << fmt("%.8f", growth.values[i])
            << '\n';
    }
    out << "log N fit: slope " << fmt("%.6f", growth.log_fit.slope) << ", R^2 " << fmt("%.6f", growth.log_fit.r_squared)
        << '\n';
}

void print_table(std::ostream& out, const SelftestReport& report) {
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(c.name.size() < 34 ? 34 - c.name.size() : 1, ' ')
            << fmt("%.3e", c.value) << " <= " << fmt("%.0e", c.tolerance) << "  (" << c.cases << " cases)\n";
    }
}

}  // namespace halfspace
