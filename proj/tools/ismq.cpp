#include "ismq/bounds.hpp"
#include "ismq/dims.hpp"
#include "ismq/error.hpp"
#include "ismq/fixtures.hpp"
#include "ismq/measure.hpp"
#include "ismq/partition.hpp"
#include "ismq/quantizer.hpp"
#include "ismq/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>

namespace fs = std::filesystem;
using namespace ismq;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Config {
    std::string command;
    std::string system;
    std::string out = ".";
    std::string r = "2";
    unsigned k = 1;
    std::optional<unsigned> k_max;
    std::string n_grid = "16:4096:2";
    std::optional<std::uint64_t> seed;
    std::size_t budget = kDefaultNodeBudget;
    double tol = kDefaultDimTol;
    std::size_t samples = 200'000;
    std::size_t restarts = 5;
    std::size_t max_iter = 200;
    std::optional<double> r_max;
    bool dump_samples = false;
};

class Run {
public:
    explicit Run(const Config& cfg) : cfg_(cfg) { fs::create_directories(cfg.out); }

    void write(const std::string& name, const std::string& text) {
        write_text((fs::path(cfg_.out) / name).string(), text);
        outputs_.push_back(name);
    }
    void write(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }

    void set_system(const CondensationSystem& sys) { system_ = system_to_json(sys); }

    void manifest() {
        Json config;
        config["system"] = cfg_.system.empty() ? Json(nullptr) : Json(cfg_.system);
        config["r"] = cfg_.r;
        config["k"] = cfg_.k;
        config["k_max"] = cfg_.k_max ? Json(*cfg_.k_max) : Json(nullptr);
        config["n_grid"] = cfg_.n_grid;
        config["seed"] = cfg_.seed ? Json(*cfg_.seed) : Json(nullptr);
        config["budget"] = cfg_.budget;
        config["tol"] = cfg_.tol;
        config["samples"] = cfg_.samples;
        config["restarts"] = cfg_.restarts;
        config["max_iter"] = cfg_.max_iter;
        config["r_max"] = cfg_.r_max ? Json(*cfg_.r_max) : Json(nullptr);
        Json constants = {{"max_exact_denominator", Order::kMaxExactDenominator},
                          {"guard_band", static_cast<double>(Order::kGuardBand)},
                          {"default_dim_tol", kDefaultDimTol},
                          {"default_node_budget", kDefaultNodeBudget},
                          {"sample_block", kernels::kSampleBlock},
                          {"reduce_chunks", kernels::kReduceChunks},
                          {"bootstrap_resamples", kDefaultBootstrap},
                          {"lloyd_tol", LloydOptions{}.tol},
                          {"sample_resolution", "2^-40 |hull C|"},
                          {"a3_depth", IoscOptions{}.a3_depth},
                          {"marker_depth", MarkerOptions{}.depth}};
        outputs_.push_back("manifest.json");
        Json m = {{"tool", "ismq"},       {"version", kVersion},     {"command", cfg_.command}, {"config", config},
                  {"system", system_},    {"constants", constants}, {"outputs", outputs_}};
        write_text((fs::path(cfg_.out) / "manifest.json").string(), m.dump(2) + "\n");
    }

private:
    const Config& cfg_;
    std::vector<std::string> outputs_;
    Json system_ = nullptr;
};

std::vector<unsigned> k_range(const Config& cfg) {
    if (cfg.k < 1) throw Error("bad_k", "k must be at least 1");
    std::vector<unsigned> ks;
    if (cfg.k_max) {
        if (*cfg.k_max < 1) throw Error("bad_k", "k-max must be at least 1");
        for (unsigned k = 1; k <= *cfg.k_max; ++k) ks.push_back(k);
    } else {
        ks.push_back(cfg.k);
    }
    return ks;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
    const auto a = text.find(':'), b = text.rfind(':');
    if (a == std::string::npos || a == b) throw Error("bad_grid", "n-grid must look like A:B:GEOM");
    double lo, hi, g;
    try {
        lo = std::stod(text.substr(0, a));
        hi = std::stod(text.substr(a + 1, b - a - 1));
        g = std::stod(text.substr(b + 1));
    } catch (const std::logic_error&) {
        throw Error("bad_grid", "cannot parse n-grid '" + text + "'");
    }
    if (!(lo >= 1) || !(hi >= lo) || !(g > 1)) throw Error("bad_grid", "n-grid needs 1 <= A <= B and GEOM > 1");
    std::vector<std::size_t> out;
    for (double n = lo; n <= hi * (1 + 1e-12); n *= g) {
        const auto v = static_cast<std::size_t>(std::llround(n));
        if (out.empty() || v != out.back()) out.push_back(v);
    }
    return out;
}

std::uint64_t require_seed(const Config& cfg) {
    if (!cfg.seed) throw Error("missing_seed", "--seed is required for " + cfg.command);
    return *cfg.seed;
}

ValidatedSystem load_validated(const Config& cfg, Run& run) {
    if (cfg.system.empty()) throw Error("missing_system", "--system is required for " + cfg.command);
    CondensationSystem sys = load_system(cfg.system);
    run.set_system(sys);
    return ValidatedSystem::validate(std::move(sys));
}

int cmd_validate(const Config& cfg, Run& run) {
    if (cfg.system.empty()) throw Error("missing_system", "--system is required for validate");
    const CondensationSystem sys = load_system(cfg.system);
    run.set_system(sys);
    const IoscReport rep = check_iosc(sys);
    run.write("iosc.json", to_json(rep));
    std::cout << to_json(rep).dump(2) << "\n";
    if (!rep.accepted()) {
        std::string why;
        for (const Verdict* v : rep.verdicts())
            if (!v->passed()) why += (why.empty() ? "" : "; ") + v->condition + ": " + v->witness;
        throw Error("iosc_rejected", why);
    }
    return 0;
}

int cmd_dims(const Config& cfg, Run& run) {
    const ValidatedSystem sys = load_validated(cfg, run);
    const Order r = Order::parse(cfg.r);
    Json j = to_json(xi_r(sys.system(), r.value(), cfg.tol));
    if (cfg.r_max) j["r0_scan"] = to_json(find_r0(sys.system(), *cfg.r_max));
    run.write("dims.json", j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_partition(const Config& cfg, Run& run) {
    const ValidatedSystem sys = load_validated(cfg, run);
    const Order r = Order::parse(cfg.r);
    const double s_r = xi_r(sys.system(), r.value(), cfg.tol).s_r;
    std::vector<PartitionRow> rows;
    for (unsigned k : k_range(cfg)) {
        const PartitionBundle b = build_partition(sys.system(), r, k, {cfg.budget});
        run.write("bundle_k" + std::to_string(k) + ".json", bundle_json(b));
        rows.push_back({k, b.N_kr, b.phi, b.l1, b.l2, I_k(sys.system(), b, s_r)});
        std::cout << "k=" << k << " N=" << b.N_kr << " phi=" << b.phi << " l1=" << b.l1 << " l2=" << b.l2 << "\n";
    }
    run.write("partition.csv", partition_csv(rows));
    run.write("growth.json", to_json(growth_constants(sys.system(), r)));
    return 0;
}

BoundsRow bounds_row(const ValidatedSystem& sys, const Order& r, unsigned k, const SeparationData& m,
                     std::size_t budget, double xi) {
    BoundsRow row;
    const PartitionBundle b = build_partition(sys.system(), r, k, {budget});
    const auto pieces = test_family(sys, b, m);
    row.k = k;
    row.phi = b.phi;
    row.upper = upper_bound(sys, b);
    row.lower = lower_sum(sys, b);
    row.energy = energy_bounds(sys, b, m, pieces);
    row.markers = m;
    row.delta_used = separation_constant(sys, m);
    row.separation = verify_separation(pieces, row.delta_used);
    row.r = r.value();
    row.xi = xi;
    return row;
}

int cmd_bounds(const Config& cfg, Run& run) {
    const ValidatedSystem sys = load_validated(cfg, run);
    const Order r = Order::parse(cfg.r);
    const SeparationData m = find_markers(sys);
    const double xi = xi_r(sys.system(), r.value(), cfg.tol).xi_r;
    Json all = Json::array();
    for (unsigned k : k_range(cfg)) {
        const BoundsRow row = bounds_row(sys, r, k, m, cfg.budget, xi);
        all.push_back(bounds_json(row));
        run.write("codebook_k" + std::to_string(k) + ".csv", values_csv("a", row.upper.codebook));
        std::cout << "k=" << k << " phi=" << row.phi << " upper=" << format_double(static_cast<double>(row.upper.value))
                  << " separation=" << (row.separation.pass ? "pass" : "fail")
                  << " energy_band=" << (row.energy.band_holds() ? "pass" : "fail") << "\n";
    }
    run.write("bounds.json", all);
    return 0;
}

LloydOptions lloyd_options(const Config& cfg, std::uint64_t seed) {
    LloydOptions lo;
    lo.restarts = cfg.restarts;
    lo.max_iter = cfg.max_iter;
    lo.seed = seed;
    return lo;
}

int cmd_estimate(const Config& cfg, Run& run) {
    const std::uint64_t seed = require_seed(cfg);
    const ValidatedSystem sys = load_validated(cfg, run);
    const double r = Order::parse(cfg.r).value();
    const auto grid = parse_grid(cfg.n_grid);
    const auto samples = sample(sampler_model(sys), seed, cfg.samples);
    if (cfg.dump_samples) run.write("samples.csv", values_csv("x", samples));
    std::vector<ErrorEstimate> rows;
    for (std::size_t n : grid) {
        const LloydResult res = lloyd(samples, n, r, lloyd_options(cfg, seed));
        rows.push_back(res.estimate);
        run.write("codebook_n" + std::to_string(n) + ".csv", values_csv("a", res.codebook.points()));
        std::cout << "n=" << n << " e_hat=" << format_double(res.estimate.value)
                  << " se=" << format_double(res.estimate.se) << "\n";
    }
    run.write("estimate.csv", estimate_csv(rows));
    return 0;
}

int cmd_fit(const Config& cfg, Run& run) {
    const std::uint64_t seed = require_seed(cfg);
    const ValidatedSystem sys = load_validated(cfg, run);
    const double r = Order::parse(cfg.r).value();
    const auto grid = parse_grid(cfg.n_grid);
    FitOptions fo;
    fo.samples = cfg.samples;
    fo.lloyd = lloyd_options(cfg, seed);
    const DimensionFit fit = dimension_fit(sys, r, grid, seed, fo);
    run.write("fit.csv", fit_csv(fit));
    run.write("fit.json", to_json(fit));
    std::cout << "slope=" << format_double(fit.slope) << " xi_r=" << format_double(fit.xi) << "\n";
    return 0;
}

struct DemoRow {
    std::string quantity, expected, computed;
    bool ok;
};

int cmd_demo315(const Config& cfg, Run& run) {
    const std::uint64_t seed = cfg.seed.value_or(1);
    const CondensationSystem raw = fixtures::example_315();
    run.set_system(raw);
    const ValidatedSystem sys = ValidatedSystem::validate(raw);
    const Order r = Order::parse(cfg.r);
    const double rv = r.value();
    const double ln2 = std::numbers::ln2, ln3 = std::log(3.0);

    std::vector<DemoRow> rows;
    auto num = [](double x) { return format_double(x); };
    auto close = [](double a, double b, double tol) { return std::fabs(a - b) <= tol; };

    const DimResult d = xi_r(sys.system(), rv, cfg.tol);
    const double t_exp = rv * ln2 / (ln3 + (2 * rv - 1) * ln2);
    rows.push_back({"s_r", num(1.0 / 3), num(d.s_r), close(d.s_r, 1.0 / 3, 1e-10)});
    rows.push_back({"t_r", num(t_exp), num(d.t_r), close(d.t_r, t_exp, 1e-10)});
    rows.push_back({"xi_r", num(std::max(1.0 / 3, t_exp)), num(d.xi_r), close(d.xi_r, std::max(1.0 / 3, t_exp), 1e-10)});
    rows.push_back({"branch", t_exp > 1.0 / 3 ? "outer" : "inner", to_string(d.branch),
                    std::string(to_string(d.branch)) == (t_exp > 1.0 / 3 ? "outer" : "inner")});
    const R0Result r0 = find_r0(sys.system(), 4.0);
    const double r0_exp = std::log2(1.5);
    rows.push_back({"r_0", num(r0_exp), r0.r0 ? num(*r0.r0) : "none", r0.r0 && close(*r0.r0, r0_exp, 1e-6)});

    const SeparationData m = find_markers(sys);
    rows.push_back({"tau0", "(1,2)", m.tau0.str(), m.tau0.str() == "(1,2)"});
    rows.push_back({"rho0", "(1,2)", m.rho0.str(), m.rho0.str() == "(1,2)"});
    rows.push_back({"delta", "5/192", to_string(m.delta), m.delta == Rational(5, 192)});

    std::vector<double> samples;
    if (rv >= 1) samples = sample(sampler_model(sys), seed, cfg.samples);
    Json bounds = Json::array();
    for (unsigned k = 1; k <= 3; ++k) {
        const BoundsRow row = bounds_row(sys, r, k, m, cfg.budget, d.xi_r);
        bounds.push_back(bounds_json(row));
        const std::string ks = std::to_string(k);
        if (k == 1 && r.integral() && r.num() == 2) rows.push_back({"phi_1", "12", std::to_string(row.phi), row.phi == 12});
        rows.push_back({"separation_k" + ks, "pass", row.separation.pass ? "pass" : "fail", row.separation.pass});
        rows.push_back({"energy_band_k" + ks, "pass", row.energy.band_holds() ? "pass" : "fail", row.energy.band_holds()});
        const PartitionBundle b = build_partition(sys.system(), r, k, {cfg.budget});
        Rational mass = 0;
        for (const auto& p : decompose(sys, b.gamma.members)) mass += p.mass;
        rows.push_back({"mass_k" + ks, "1", to_string(mass), mass == 1});
        if (!samples.empty()) {
            const ErrorEstimate e = eval_codebook(samples, Codebook(row.upper.codebook), rv, seed);
            const double limit = static_cast<double>(row.upper.value) + 3 * e.se_power;
            rows.push_back({"codebook_distortion_k" + ks, "<= " + num(limit), num(e.power), e.power <= limit});
        }
    }

    std::string csv = "quantity,expected,computed,status\n";
    Json table = Json::array();
    std::cout << "quantity                     expected                 computed                 status\n";
    bool all_ok = true;
    for (const auto& row : rows) {
        all_ok = all_ok && row.ok;
        csv += row.quantity + "," + row.expected + "," + row.computed + "," + (row.ok ? "ok" : "MISMATCH") + "\n";
        table.push_back({{"quantity", row.quantity}, {"expected", row.expected}, {"computed", row.computed}, {"ok", row.ok}});
        std::string line = row.quantity;
        line.resize(29, ' ');
        std::string e = row.expected, c = row.computed;
        e.resize(std::max<std::size_t>(e.size() + 1, 25), ' ');
        c.resize(std::max<std::size_t>(c.size() + 1, 25), ' ');
        std::cout << line << e << c << (row.ok ? "ok" : "MISMATCH") << "\n";
    }
    run.write("demo315.csv", csv);
    run.write("demo315.json", Json{{"r", r.str()}, {"seed", seed}, {"table", table}, {"bounds", bounds}});
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"In-homogeneous self-similar measures: dimensions, bounds and quantizers"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sub, bool needs_system) {
        auto* s = sub->add_option("--system", cfg.system, "system definition (JSON)");
        if (needs_system) s->required();
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "dimension solver tolerance")->capture_default_str();
        sub->add_option("--budget", cfg.budget, "node budget per antichain build")->capture_default_str();
    };
    auto order = [&](CLI::App* sub) { sub->add_option("--r", cfg.r, "order r (integer, decimal or a/b)")->capture_default_str(); };
    auto ks = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "stopping level k")->capture_default_str();
        sub->add_option("--k-max", cfg.k_max, "run k = 1..k-max");
    };
    auto estimator = [&](CLI::App* sub) {
        sub->add_option("--n-grid", cfg.n_grid, "codebook sizes A:B:GEOM")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed (required)");
        sub->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->capture_default_str();
        sub->add_option("--restarts", cfg.restarts, "Lloyd restarts")->capture_default_str();
        sub->add_option("--max-iter", cfg.max_iter, "Lloyd iteration cap")->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "check the containment and separation conditions");
    common(validate, true);
    auto* dims = app.add_subcommand("dims", "s_r, t_r, xi_r and an optional crossover scan");
    common(dims, true);
    order(dims);
    dims->add_option("--r-max", cfg.r_max, "scan (0, r-max] for the crossover r_0");
    auto* partition = app.add_subcommand("partition", "stopping-time antichains and I_k table");
    common(partition, true);
    order(partition);
    ks(partition);
    auto* bounds = app.add_subcommand("bounds", "upper bound, lower sum, energies and separation");
    common(bounds, true);
    order(bounds);
    ks(bounds);
    auto* estimate = app.add_subcommand("estimate", "Lloyd estimates of e_{n,r} over an n-grid");
    common(estimate, true);
    order(estimate);
    estimator(estimate);
    estimate->add_flag("--dump-samples", cfg.dump_samples, "also write samples.csv");
    auto* fit = app.add_subcommand("fit", "empirical quantization dimension");
    common(fit, true);
    order(fit);
    estimator(fit);
    auto* demo = app.add_subcommand("demo315", "full pipeline on the built-in two-map example");
    common(demo, false);
    order(demo);
    demo->add_option("--seed", cfg.seed, "random seed (default 1)");
    demo->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::pair<CLI::App*, int (*)(const Config&, Run&)> table[] = {
        {validate, cmd_validate}, {dims, cmd_dims},         {partition, cmd_partition}, {bounds, cmd_bounds},
        {estimate, cmd_estimate}, {fit, cmd_fit},           {demo, cmd_demo315}};
    for (const auto& [sub, fn] : table) {
        if (!sub->parsed()) continue;
        cfg.command = sub->get_name();
        try {
            Run run(cfg);
            int rc = 0;
            try {
                rc = fn(cfg, run);
            } catch (const Error& e) {
                run.write("error.json", error_json(e.code(), e.what()));
                run.manifest();
                throw;
            }
            run.manifest();
            return rc;
        } catch (const Error& e) {
            std::cout << error_json(e.code(), e.what()).dump() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cout << error_json("internal", e.what()).dump() << "\n";
            return 1;
        }
    }
    return 1;
}
