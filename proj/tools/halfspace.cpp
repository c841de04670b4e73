// Batch front end: every experiment and norm computation behind one binary.
// JSON goes to stdout, human-readable tables to stderr.
// Exit codes: 0 ok, 1 selftest failure, 2 configuration error, 3 numerical guard.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halfspace/errors.hpp"
#include "halfspace/experiments.hpp"
#include "halfspace/families.hpp"
#include "halfspace/field_io.hpp"
#include "halfspace/parallel.hpp"
#include "halfspace/report.hpp"
#include "halfspace/selftest.hpp"

namespace fs = std::filesystem;
using namespace halfspace;

namespace {

struct Common {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out_dir;
    bool timing = false;
};

double parse_exponent(const std::string& text) {
    if (text == "inf" || text == "infinity") return kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError("cannot parse exponent '" + text + "'");
    return v;
}

std::vector<double> parse_exponents(const std::vector<std::string>& texts) {
    std::vector<double> out;
    for (const auto& t : texts) out.push_back(parse_exponent(t));
    return out;
}

/// "name:key=value,key=value" (or "file:PATH").
struct FieldSource {
    std::string name;
    std::map<std::string, std::string> params;
    std::string path;
};

FieldSource parse_field(const std::string& text) {
    FieldSource src;
    const auto colon = text.find(':');
    src.name = text.substr(0, colon);
    if (colon == std::string::npos) return src;
    const std::string rest = text.substr(colon + 1);
    if (src.name == "file") {
        src.path = rest;
        return src;
    }
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("field parameter '" + item + "' is not key=value");
        src.params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return src;
}

double param(const FieldSource& src, const std::string& key, double fallback) {
    const auto it = src.params.find(key);
    return it == src.params.end() ? fallback : parse_exponent(it->second);
}

HalfField load_half_field(const FieldSource& src, const GridSpec& grid, Operator op, std::uint64_t seed) {
    const Boundary bc = boundary_of(op);
    if (src.name == "file") {
        if (!fs::exists(src.path)) throw ConfigError("field file not found: " + src.path);
        AnyField any = load_field(src.path);
        if (!std::holds_alternative<HalfField>(any)) throw ConfigError("field file holds a full-space field");
        HalfField hf = std::get<HalfField>(std::move(any));
        if (hf.bc != Boundary::None && hf.bc != bc) {
            throw ConfigError(to_string(hf.bc) + "-tagged field used with the " + to_string(op) + " Laplacian");
        }
        return with_boundary(std::move(hf), bc);
    }
    if (src.name == "sine" || src.name == "cosine") {
        const double k = param(src, "k", 1.0);
        const double modes = k * grid.half_width / std::numbers::pi;
        if (std::abs(modes - std::round(modes)) > 1e-9) {
            throw ConfigError("wavenumber k = " + std::to_string(k) + " is not periodic on the box; k L / pi must be an integer");
        }
        const bool sine = src.name == "sine";
        if ((sine && op == Operator::Neumann) || (!sine && op == Operator::Dirichlet)) {
            throw ConfigError(src.name + " does not satisfy the " + to_string(op) + " condition");
        }
        return sample_half(
            grid, [k, sine](std::span<const double> x) { return sine ? std::sin(k * x.back()) : std::cos(k * x.back()); },
            bc);
    }
    if (src.name == "zero") return sample_half(grid, [](std::span<const double>) { return 0.0; }, bc);
    if (src.name == "counterexample") {
        if (op != Operator::Dirichlet) throw ConfigError("the counterexample field is Dirichlet");
        return counterexample_fields(grid).first;
    }
    const FamilyKind kind = family_from_string(src.name);
    const auto member = static_cast<std::size_t>(param(src, "member", 0.0));
    const auto family = make_family({kind, seed, member + 1}, grid.dim, op, grid.half_width);
    return sample_half(grid, family.at(member).expr, bc);
}

std::vector<std::size_t> check_sizes(const std::vector<std::size_t>& resolutions) {
    if (resolutions.empty()) throw ConfigError("at least one resolution is required");
    return resolutions;
}

void write_file(const Common& common, const std::string& name, const std::string& content) {
    if (common.out_dir.empty()) return;
    fs::create_directories(common.out_dir);
    std::ofstream out(fs::path(common.out_dir) / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (fs::path(common.out_dir) / name).string());
    out << content;
}

template <class Fn>
std::string csv_of(Fn&& fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

using Clock = std::chrono::steady_clock;

std::optional<double> elapsed(const Common& common, Clock::time_point start) {
    if (!common.timing) return std::nullopt;
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void emit(const Common& common, const std::string& command, const Json& report) {
    const std::string text = serialize(report);
    std::cout << text;
    write_file(common, command + ".json", text);
}

Json exponent_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

// ---------------------------------------------------------------------------

struct NormArgs {
    std::string op = "dirichlet", kind = "sobolev", field = "sine:k=4", p = "2", q = "2";
    double s = 1.0, L = 2.0 * std::numbers::pi;
    std::size_t N = 4096;
    int dim = 1;
    bool inhomogeneous = false;
};

int run_norm(const NormArgs& a, const Common& common) {
    const auto start = Clock::now();
    const Operator op = operator_from_string(a.op);
    const double p = parse_exponent(a.p);
    SpaceSpec spec;
    if (a.kind == "sobolev") {
        spec = SpaceSpec::sobolev(a.s, p, op, !a.inhomogeneous);
    } else if (a.kind == "besov") {
        spec = SpaceSpec::besov(a.s, p, parse_exponent(a.q), op, !a.inhomogeneous);
    } else {
        throw ConfigError("space kind must be sobolev or besov");
    }
    spec.validate();

    const FieldSource src = parse_field(a.field);
    const HalfField hf = load_half_field(src, make_grid(a.dim, a.L, a.N, true), op, common.seed);
    const DyadicBank bank = build_bank(hf.grid);

    Json config{{"field", a.field}, {"space", to_json(spec)}};
    const bool degenerate = lp_norm(hf, p) == 0.0;
    Json result;
    if (degenerate) {
        result = {{"degenerate", true}, {"value", nullptr}};
    } else {
        const NormReport norm = evaluate_norm(hf, spec, bank);
        print_table(std::cerr, norm);
        result = to_json(norm);
        result["degenerate"] = false;
    }
    emit(common, "norm", make_report({"norm", hf.grid, bank, common.seed, elapsed(common, start)}, config, result));
    if (degenerate) {
        std::cerr << "error: degenerate input: the field is identically zero\n";
        return 3;
    }
    return 0;
}

struct SweepArgs {
    std::string op = "dirichlet", family = "windowed_modes", p = "2", kind = "sobolev", q;
    std::vector<std::string> exponents;
    double s = 1.0, L = 8.0;
    std::size_t members = 20;
    std::vector<std::size_t> resolutions{4096, 8192, 16384};
    int dim = 1;
};

int run_bilinear(const SweepArgs& a, const Common& common) {
    const auto start = Clock::now();
    BilinearConfig cfg;
    cfg.s = a.s;
    cfg.p = parse_exponent(a.p);
    if (!a.exponents.empty()) {
        const auto e = parse_exponents(a.exponents);
        if (e.size() != 4) throw ConfigError("bilinear needs four exponents p1 p2 p3 p4");
        cfg.p1 = e[0], cfg.p2 = e[1], cfg.p3 = e[2], cfg.p4 = e[3];
    } else {
        cfg.p1 = cfg.p, cfg.p2 = kInf, cfg.p3 = kInf, cfg.p4 = cfg.p;
    }
    cfg.op = operator_from_string(a.op);
    if (a.kind == "besov") {
        cfg.kind = SpaceKind::Besov;
        cfg.q = a.q.empty() ? 2.0 : parse_exponent(a.q);
    } else if (a.kind != "sobolev") {
        throw ConfigError("space kind must be sobolev or besov");
    }
    cfg.family = {family_from_string(a.family), common.seed, a.members};
    cfg.resolutions = check_sizes(a.resolutions);
    cfg.dim = a.dim;
    cfg.half_width = a.L;
    cfg.validate();

    const RatioReport report = ratio_sweep(cfg);
    print_table(std::cerr, report);
    Json config{{"s", cfg.s},
                {"p", exponent_json(cfg.p)},
                {"exponents", {exponent_json(cfg.p1), exponent_json(cfg.p2), exponent_json(cfg.p3), exponent_json(cfg.p4)}},
                {"operator", to_string(cfg.op)},
                {"kind", a.kind},
                {"family", to_string(cfg.family.kind)},
                {"members", cfg.family.members}};
    if (cfg.q) config["q"] = exponent_json(*cfg.q);
    const GridSpec finest = make_grid(cfg.dim, cfg.half_width, cfg.resolutions.back(), true);
    write_file(common, "bilinear.csv", csv_of([&](std::ostream& o) { write_ratio_csv(o, report); }));
    emit(common, "bilinear",
         make_report({"bilinear", finest, report.bank, common.seed, elapsed(common, start)}, config, to_json(report)));
    return 0;
}

int run_trilinear(const SweepArgs& a, bool contrast, const Common& common) {
    const auto start = Clock::now();
    TrilinearConfig cfg;
    cfg.s = a.s;
    cfg.p = parse_exponent(a.p);
    if (!a.exponents.empty()) {
        const auto e = parse_exponents(a.exponents);
        if (e.size() != 9) throw ConfigError("trilinear needs nine exponents");
        std::copy(e.begin(), e.end(), cfg.exponents.begin());
    }
    cfg.op = operator_from_string(a.op);
    cfg.family = {family_from_string(a.family), common.seed, a.members};
    cfg.resolutions = check_sizes(a.resolutions);
    cfg.dim = a.dim;
    cfg.half_width = a.L;
    cfg.validate();

    Json config{{"s", cfg.s}, {"p", exponent_json(cfg.p)}, {"operator", to_string(cfg.op)},
                {"family", to_string(cfg.family.kind)}, {"members", cfg.family.members}};
    Json exps = Json::array();
    for (double e : cfg.exponents) exps.push_back(exponent_json(e));
    config["exponents"] = exps;

    Json result;
    DyadicBank bank;
    if (contrast) {
        const OddMultiplicityReport r = odd_multiplicity_contrast(cfg);
        print_table(std::cerr, r.trilinear);
        print_table(std::cerr, r.iterated_bilinear);
        result = {{"trilinear", to_json(r.trilinear)}, {"iterated_bilinear", to_json(r.iterated_bilinear)}};
        bank = r.trilinear.bank;
        write_file(common, "trilinear.csv", csv_of([&](std::ostream& o) { write_ratio_csv(o, r.trilinear); }));
        write_file(common, "iterated_bilinear.csv",
                   csv_of([&](std::ostream& o) { write_ratio_csv(o, r.iterated_bilinear); }));
    } else {
        const RatioReport r = trilinear_sweep(cfg);
        print_table(std::cerr, r);
        result = {{"trilinear", to_json(r)}};
        bank = r.bank;
        write_file(common, "trilinear.csv", csv_of([&](std::ostream& o) { write_ratio_csv(o, r); }));
    }
    const GridSpec finest = make_grid(cfg.dim, cfg.half_width, cfg.resolutions.back(), true);
    emit(common, "trilinear", make_report({"trilinear", finest, bank, common.seed, elapsed(common, start)}, config, result));
    return 0;
}

struct CounterexampleArgs {
    std::string p = "2";
    std::size_t N = 16384;
    double L = 4.0, delta = 0.125;
    bool besov = false, endpoint = false;
    std::vector<std::string> q{"1", "2"};
    std::vector<std::size_t> resolutions{4096, 8192, 16384, 32768};
};

int run_counterexample(const CounterexampleArgs& a, const Common& common) {
    const auto start = Clock::now();
    const double p = parse_exponent(a.p);
    const GridSpec grid = make_grid(1, a.L, a.N, true);
    const DyadicBank bank = build_bank(grid);

    const SingularityProfile profile = singularity_profile(p, grid, a.delta);
    print_table(std::cerr, profile);
    Json result{{"singularity", to_json(profile)}};
    write_file(common, "profile.csv", csv_of([&](std::ostream& o) { write_profile_csv(o, profile); }));

    Json config{{"p", exponent_json(p)}, {"delta", a.delta}, {"besov", a.besov}, {"endpoint", a.endpoint}};
    if (a.besov) {
        const auto qs = parse_exponents(a.q);
        const BlockFloorReport floor = besov_block_floor(p, grid, bank, qs);
        print_table(std::cerr, floor);
        result["block_floor"] = to_json(floor);
        Json qj = Json::array();
        for (double q : qs) qj.push_back(exponent_json(q));
        config["q"] = qj;
        write_file(common, "blocks.csv", csv_of([&](std::ostream& o) { write_blocks_csv(o, floor); }));
        write_file(common, "limit.csv", csv_of([&](std::ostream& o) { write_limit_csv(o, 8.0, 800); }));
    }
    if (a.endpoint) {
        const EndpointGrowth growth = endpoint_growth(p, check_sizes(a.resolutions), a.L);
        print_table(std::cerr, growth);
        result["endpoint"] = to_json(growth);
    }
    emit(common, "counterexample",
         make_report({"counterexample", grid, bank, common.seed, elapsed(common, start)}, config, result));
    return 0;
}

struct DerivativeArgs {
    std::string mode = "cross", op = "dirichlet", family = "windowed_modes", p = "2";
    double s = 1.0, L = 8.0;
    std::size_t members = 20;
    std::vector<std::size_t> resolutions{4096, 8192, 16384};
};

int run_derivative(const DerivativeArgs& a, const Common& common) {
    const auto start = Clock::now();
    DerivativeConfig cfg;
    if (a.mode == "cross") {
        cfg.mode = DerivativeMode::CrossCondition;
    } else if (a.mode == "same") {
        cfg.mode = DerivativeMode::SameCondition;
    } else {
        throw ConfigError("derivative mode must be cross or same");
    }
    cfg.s = a.s;
    cfg.p = parse_exponent(a.p);
    cfg.op = operator_from_string(a.op);
    cfg.family = {family_from_string(a.family), common.seed, a.members};
    cfg.resolutions = check_sizes(a.resolutions);
    cfg.half_width = a.L;

    const RatioReport report = derivative_mapping_sweep(cfg);
    print_table(std::cerr, report);
    Json config{{"mode", a.mode}, {"s", cfg.s}, {"p", exponent_json(cfg.p)}, {"operator", to_string(cfg.op)},
                {"family", to_string(cfg.family.kind)}, {"members", cfg.family.members}};
    const GridSpec finest = make_grid(1, cfg.half_width, cfg.resolutions.back(), true);
    write_file(common, "derivative.csv", csv_of([&](std::ostream& o) { write_ratio_csv(o, report); }));
    emit(common, "derivative",
         make_report({"derivative", finest, report.bank, common.seed, elapsed(common, start)}, config, to_json(report)));
    return 0;
}

int run_selftest_command(const SelftestOptions& options, const Common& common) {
    const auto start = Clock::now();
    const SelftestReport report = run_selftest(options);
    print_table(std::cerr, report);
    Json config{{"quick", options.quick}, {"phi0_gain", options.phi0_gain}};
    emit(common, "selftest",
         make_report({"selftest", report.grid, report.bank, common.seed, elapsed(common, start)}, config, to_json(report)));
    return report.passed() ? 0 : 1;
}

std::uint64_t seed_override(std::uint64_t seed) {
    const char* env = std::getenv("HALFSPACE_SPECTRAL_SEED");
    if (env == nullptr || *env == '\0') return seed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ConfigError(std::string("HALFSPACE_SPECTRAL_SEED is not an integer: ") + env);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional powers of the Dirichlet and Neumann Laplacians on the half-space", "halfspace"};
    app.set_version_flag("--version", version());
    app.set_config("--config", "", "INI file; one [section] per subcommand");
    app.fallthrough();
    app.require_subcommand(1);

    Common common;
    app.add_option("--seed", common.seed, "family seed (HALFSPACE_SPECTRAL_SEED overrides)");
    app.add_option("--threads", common.threads, "worker threads (default: hardware concurrency)");
    app.add_option("--out", common.out_dir, "directory for JSON, CSV and plot data");
    app.add_flag("--timing", common.timing, "record wall time in the report");

    NormArgs norm;
    auto* norm_cmd = app.add_subcommand("norm", "Sobolev or Besov norm of one field");
    norm_cmd->add_option("--op", norm.op, "dirichlet | neumann");
    norm_cmd->add_option("--kind", norm.kind, "sobolev | besov");
    norm_cmd->add_option("--s", norm.s);
    norm_cmd->add_option("--p", norm.p);
    norm_cmd->add_option("--q", norm.q);
    norm_cmd->add_flag("--inhomogeneous", norm.inhomogeneous);
    norm_cmd->add_option("--field", norm.field,
                         "sine:k=K | cosine:k=K | zero | counterexample | <family>:member=M | file:PATH");
    norm_cmd->add_option("--L", norm.L, "box half-width");
    norm_cmd->add_option("--N", norm.N, "points per axis");
    norm_cmd->add_option("--dim", norm.dim);

    SweepArgs bil;
    auto* bil_cmd = app.add_subcommand("bilinear", "Leibniz ratio sweep under grid refinement");
    bil_cmd->add_option("--op", bil.op);
    bil_cmd->add_option("--s", bil.s);
    bil_cmd->add_option("--p", bil.p);
    bil_cmd->add_option("--exponents", bil.exponents, "p1 p2 p3 p4 (default p inf inf p)");
    bil_cmd->add_option("--kind", bil.kind, "sobolev | besov");
    bil_cmd->add_option("--q", bil.q);
    bil_cmd->add_option("--family", bil.family);
    bil_cmd->add_option("--members", bil.members);
    bil_cmd->add_option("--resolutions", bil.resolutions);
    bil_cmd->add_option("--L", bil.L);
    bil_cmd->add_option("--dim", bil.dim);

    SweepArgs tri;
    tri.s = 2.5;
    tri.L = 4.0;
    tri.family = "counterexample";
    tri.members = 1;
    tri.resolutions = {4096, 8192, 16384, 32768};
    bool no_contrast = false;
    auto* tri_cmd = app.add_subcommand("trilinear", "three-factor ratio sweep next to the iterated bilinear path");
    tri_cmd->add_option("--op", tri.op);
    tri_cmd->add_option("--s", tri.s);
    tri_cmd->add_option("--p", tri.p);
    tri_cmd->add_option("--exponents", tri.exponents, "nine exponents (default all 6)");
    tri_cmd->add_option("--family", tri.family);
    tri_cmd->add_option("--members", tri.members);
    tri_cmd->add_option("--resolutions", tri.resolutions);
    tri_cmd->add_option("--L", tri.L);
    tri_cmd->add_option("--dim", tri.dim);
    tri_cmd->add_flag("--no-contrast", no_contrast, "skip the iterated bilinear path");

    CounterexampleArgs ce;
    auto* ce_cmd = app.add_subcommand("counterexample", "singularity profile, Besov block floor and endpoint growth");
    ce_cmd->add_option("--p", ce.p);
    ce_cmd->add_option("--N", ce.N);
    ce_cmd->add_option("--L", ce.L);
    ce_cmd->add_option("--delta", ce.delta, "outer edge of the fit window");
    ce_cmd->add_flag("--besov", ce.besov, "add the dyadic block floor and partial sums");
    ce_cmd->add_option("--q", ce.q, "partial-sum exponents");
    ce_cmd->add_flag("--endpoint", ce.endpoint, "add the endpoint growth across resolutions");
    ce_cmd->add_option("--resolutions", ce.resolutions);

    DerivativeArgs der;
    auto* der_cmd = app.add_subcommand("derivative", "normal-derivative mapping sweep");
    der_cmd->add_option("--mode", der.mode, "cross | same");
    der_cmd->add_option("--op", der.op);
    der_cmd->add_option("--s", der.s);
    der_cmd->add_option("--p", der.p);
    der_cmd->add_option("--family", der.family);
    der_cmd->add_option("--members", der.members);
    der_cmd->add_option("--resolutions", der.resolutions);
    der_cmd->add_option("--L", der.L);

    SelftestOptions st;
    auto* st_cmd = app.add_subcommand("selftest", "invariant suite; exit 0 iff every check passes");
    st_cmd->add_flag("--quick", st.quick);
    st_cmd->add_option("--N", st.points);
    st_cmd->add_option("--phi0-gain", st.phi0_gain, "scale phi_0 to inject a normalization fault");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        common.seed = seed_override(common.seed);
        if (common.threads > 0) set_thread_count(common.threads);
        if (*norm_cmd) return run_norm(norm, common);
        if (*bil_cmd) return run_bilinear(bil, common);
        if (*tri_cmd) return run_trilinear(tri, !no_contrast, common);
        if (*ce_cmd) return run_counterexample(ce, common);
        if (*der_cmd) return run_derivative(der, common);
        if (*st_cmd) return run_selftest_command(st, common);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: numerical guard: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
