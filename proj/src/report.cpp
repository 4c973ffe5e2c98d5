#include "ismq/report.hpp"

#include "ismq/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ismq {

namespace {

Rational rational_field(const Json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.dump());
    if (j.is_number_float())
        throw Error("bad_rational", what + ": floating literal " + j.dump() + " rejected, write it as a fraction");
    throw Error("bad_system", what + ": expected a rational string");
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error("bad_system", std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<Similitude1D> maps_field(const Json& j, const char* key) {
    const Json& arr = field(j, key);
    if (!arr.is_array()) throw Error("bad_system", std::string(key) + " must be an array");
    std::vector<Similitude1D> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
        out.emplace_back(rational_field(field(arr[i], "scale"), where + ".scale"),
                         rational_field(field(arr[i], "offset"), where + ".offset"));
    }
    return out;
}

std::vector<Rational> probs_field(const Json& j, const char* key) {
    const Json& arr = field(j, key);
    if (!arr.is_array()) throw Error("bad_system", std::string(key) + " must be an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(rational_field(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
    return out;
}

Json maps_json(const std::vector<Similitude1D>& maps) {
    Json arr = Json::array();
    for (const auto& f : maps) arr.push_back({{"scale", to_string(f.scale())}, {"offset", to_string(f.offset())}});
    return arr;
}

Json probs_json(const std::vector<Rational>& v) {
    Json arr = Json::array();
    for (const auto& q : v) arr.push_back(to_string(q));
    return arr;
}

Json verdict_json(const Verdict& v) {
    return {{"condition", v.condition}, {"status", to_string(v.status)}, {"witness", v.witness}};
}

Json words_json(const std::vector<Word>& ws) {
    Json arr = Json::array();
    for (const auto& w : ws) arr.push_back(word_json(w));
    return arr;
}

Json optional_rational_json(const std::optional<Rational>& q, long double approx) {
    Json j;
    j["exact"] = q ? Json(to_string(*q)) : Json(nullptr);
    j["value"] = static_cast<double>(approx);
    return j;
}

}  // namespace

CondensationSystem system_from_json(const Json& j) {
    const Json& U = field(j, "open_set");
    return CondensationSystem(maps_field(j, "outer_maps"), probs_field(j, "outer_probs"), maps_field(j, "inner_maps"),
                              probs_field(j, "inner_probs"),
                              Interval::open(rational_field(field(U, "lo"), "open_set.lo"),
                                             rational_field(field(U, "hi"), "open_set.hi")));
}

CondensationSystem load_system(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("bad_json", path + ": " + e.what());
    }
    return system_from_json(j);
}

Json system_to_json(const CondensationSystem& sys) {
    return {{"outer_maps", maps_json(sys.outer())},
            {"outer_probs", probs_json(sys.outer_probs())},
            {"inner_maps", maps_json(sys.inner())},
            {"inner_probs", probs_json(sys.inner_probs())},
            {"open_set", {{"lo", to_string(sys.open_set().lo)}, {"hi", to_string(sys.open_set().hi)}}}};
}

Json word_json(const Word& w) {
    Json arr = Json::array();
    for (unsigned a : w.letters()) arr.push_back(a);
    return arr;
}

Json rational_json(const Rational& q) { return {{"exact", to_string(q)}, {"value", q.get_d()}}; }

Json level_json(const Level& x) {
    return {{"value", static_cast<double>(x.approx())}, {"exact_comparisons", x.exact()}};
}

Json interval_json(const Interval& I) {
    return {{"lo", to_string(I.lo)}, {"hi", to_string(I.hi)}, {"lo_open", I.lo_open}, {"hi_open", I.hi_open}};
}

Json to_json(const IoscReport& rep) {
    Json j;
    j["accepted"] = rep.accepted();
    Json v = Json::array();
    for (const Verdict* x : rep.verdicts()) v.push_back(verdict_json(*x));
    j["verdicts"] = v;
    j["hull_C"] = interval_json(rep.hull_C);
    j["hull_E"] = rep.E_point ? Json{{"point", rational_json(*rep.E_point)}} : interval_json(rep.hull_E);
    j["hull_K"] = interval_json(rep.hull_K);
    j["a3_certificate"] = rep.a3_certificate ? word_json(*rep.a3_certificate) : Json(nullptr);
    return j;
}

Json to_json(const DimResult& d) {
    return {{"r", d.r},
            {"s_r", d.s_r},
            {"t_r", d.t_r},
            {"xi_r", d.xi_r},
            {"branch", to_string(d.branch)},
            {"tie", d.tie},
            {"residuals", {{"s_r", d.residual_s}, {"t_r", d.residual_t}}}};
}

Json to_json(const R0Result& r0) {
    return {{"r0", r0.r0 ? Json(*r0.r0) : Json(nullptr)},
            {"r_max", r0.r_max},
            {"found", r0.r0.has_value()},
            {"grid_points_below", r0.grid_points_checked}};
}

Json to_json(const GrowthConstants& g) {
    return {{"eta_lo", level_json(g.eta_lo)},
            {"eta_hi", level_json(g.eta_hi)},
            {"H", g.H},
            {"D", g.D.get_str()},
            {"d1", g.d1.get_str()}};
}

Json to_json(const SeparationData& m) {
    return {{"tau0", word_json(m.tau0)},
            {"rho0", word_json(m.rho0)},
            {"tau0_image", interval_json(m.tau0_image)},
            {"rho0_image", interval_json(m.rho0_image)},
            {"W", interval_json(m.W)},
            {"V", interval_json(m.V)},
            {"eps0", to_string(m.eps0)},
            {"delta0", to_string(m.delta0)},
            {"delta1", to_string(m.delta1)},
            {"delta2", to_string(m.delta2)},
            {"delta3", to_string(m.delta3)},
            {"delta", to_string(m.delta)}};
}

Json bundle_json(const PartitionBundle& b) {
    Json j;
    j["k"] = b.k;
    j["r"] = b.r.str();
    j["N_kr"] = b.N_kr;
    j["phi"] = b.phi;
    j["l1"] = b.l1;
    j["l2"] = b.l2;
    j["boundary_comparisons"] = b.boundary_comparisons;
    j["gamma"] = words_json(b.gamma.members);
    j["psi"] = words_json(b.psi);
    j["lambda_star"] = words_json(b.lambda_star);
    Json inner = Json::array();
    for (std::size_t i = 0; i < b.psi.size(); ++i)
        inner.push_back({{"sigma", word_json(b.psi[i])}, {"M_kr", b.M_kr[i]}, {"gamma", words_json(b.inner[i].members)}});
    j["inner"] = inner;
    return j;
}

Json bounds_json(const BoundsRow& row) {
    Json j;
    j["k"] = row.k;
    j["phi"] = row.phi;
    j["upper"] = optional_rational_json(row.upper.exact, row.upper.value);
    j["lower_sum"] = optional_rational_json(row.lower.exact, row.lower.value);
    j["d2"] = level_json(row.energy.d2);
    j["d3"] = level_json(row.energy.d3);
    j["d4"] = rational_json(row.energy.d4);
    j["mu_G"] = rational_json(row.energy.total_mass);
    j["energy"] = {{"min", static_cast<double>(row.energy.min_energy)},
                   {"max", static_cast<double>(row.energy.max_energy)},
                   {"lower_violations", row.energy.lower_violations},
                   {"upper_violations", row.energy.upper_violations},
                   {"weak_upper_violations", row.energy.weak_upper_violations},
                   {"boundary_comparisons", row.energy.boundary_comparisons},
                   {"band", row.energy.band_holds() ? "pass" : "fail"}};
    j["delta"] = rational_json(row.markers.delta);
    j["delta_scaled"] = rational_json(row.delta_used);
    j["separation"] = row.separation.pass ? "pass" : "fail";
    j["separation_pairs"] = row.separation.pairs;
    j["separation_min_ratio"] = rational_json(row.separation.min_ratio);
    if (row.separation.violation)
        j["separation_violation"] = {row.separation.violation->first, row.separation.violation->second};
    if (row.xi > 0) {
        // phi^{r/xi} times the bound and the bracket; bounded above / below as k grows
        const double w = std::pow(static_cast<double>(row.phi), row.r / row.xi);
        j["xi_r"] = row.xi;
        j["upper_scaled"] = w * static_cast<double>(row.upper.value);
        j["lower_sum_scaled"] = w * static_cast<double>(row.lower.value);
    }
    j["markers"] = to_json(row.markers);
    j["codebook_size"] = row.upper.codebook.size();
    return j;
}

Json error_json(const std::string& code, const std::string& message) {
    return {{"error", {{"code", code}, {"message", message}}}};
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string values_csv(const std::string& header, std::span<const double> values) {
    std::string out = header + "\n";
    for (double x : values) out += format_double(x) + "\n";
    return out;
}

std::string partition_csv(std::span<const PartitionRow> rows) {
    std::ostringstream os;
    os << "k,N_kr,phi_kr,l1,l2,I_k_s_r\n";
    for (const auto& r : rows)
        os << r.k << ',' << r.N_kr << ',' << r.phi << ',' << r.l1 << ',' << r.l2 << ','
           << format_double(static_cast<double>(r.I_k)) << '\n';
    return os.str();
}

std::string estimate_csv(std::span<const ErrorEstimate> rows) {
    std::ostringstream os;
    os << "n,e_hat,se,e_hat_pow_r,se_pow_r,samples,seed,iterations\n";
    for (const auto& e : rows)
        os << e.n << ',' << format_double(e.value) << ',' << format_double(e.se) << ',' << format_double(e.power) << ','
           << format_double(e.se_power) << ',' << e.samples << ',' << e.seed << ',' << e.iterations << '\n';
    return os.str();
}

std::string fit_csv(const DimensionFit& fit) {
    std::ostringstream os;
    os << "n,e_hat,se,upper_bound_at_matching_phi,coefficient_proxy\n";
    for (const auto& r : fit.rows)
        os << r.n << ',' << format_double(r.e_hat) << ',' << format_double(r.se) << ','
           << (r.upper_bound ? format_double(*r.upper_bound) : std::string()) << ','
           << format_double(r.coefficient_proxy) << '\n';
    return os.str();
}

Json to_json(const DimensionFit& fit) {
    Json rows = Json::array();
    for (const auto& r : fit.rows)
        rows.push_back({{"n", r.n},
                        {"e_hat", r.e_hat},
                        {"se", r.se},
                        {"upper_bound_at_matching_phi", r.upper_bound ? Json(*r.upper_bound) : Json(nullptr)},
                        {"matching_k", r.k ? Json(*r.k) : Json(nullptr)},
                        {"coefficient_proxy", r.coefficient_proxy}});
    return {{"r", fit.r},
            {"xi_r", fit.xi},
            {"slope", fit.slope},
            {"intercept", fit.intercept},
            {"coefficient_proxy_min", fit.proxy_min},
            {"coefficient_proxy_max", fit.proxy_max},
            {"rows", rows}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("io_error", "cannot write " + path);
    f << text;
    if (!f) throw Error("io_error", "failed writing " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("io_error", "cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace ismq
