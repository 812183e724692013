#include "wallcross/config.hpp"

#include "wallcross/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace wallcross {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ConfigError("unknown field " + where + "." + k);
}

long long get_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
    return v.get<long long>();
}

Rat get_rat(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
        throw ConfigError(where + " must be a [numerator, denominator] pair of integers");
    const long long den = v[1].get<long long>();
    if (den == 0) throw ConfigError(where + " has zero denominator");
    return make_rat(v[0].get<long long>(), den);
}

double get_positive(const json& v, const std::string& where) {
    const Rat q = get_rat(v, where);
    if (q < 0) throw ConfigError(where + " must be nonnegative");
    return to_double(q);
}

RatVec get_ratvec(const json& v, const std::string& where, int r) {
    if (!v.is_array()) throw ConfigError(where + " must be a list of rationals");
    if (static_cast<int>(v.size()) != r)
        throw ConfigError(where + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(r));
    RatVec out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_rat(v[i], where + "[" + std::to_string(i + 1) + "]"));
    return out;
}

}  // namespace

JobConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    only_keys(j, "config",
              {"schema_version", "name", "D", "labels", "omega_plus", "omega_minus", "truncation", "sampling",
               "tolerances", "contour"});
    if (!j.contains("schema_version")) throw ConfigError("missing schema_version");
    if (get_int(j["schema_version"], "schema_version") != kSchemaVersion)
        throw ConfigError("unsupported schema_version " + j["schema_version"].dump());

    JobConfig cfg;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ConfigError("name must be a string");
        cfg.name = j["name"].get<std::string>();
    }
    if (!j.contains("D") || !j["D"].is_array() || j["D"].empty()) throw ConfigError("D must be a nonempty list of rows");
    const auto& D = j["D"];
    if (!D[0].is_array() || D[0].empty()) throw ConfigError("D row 1 must be a nonempty list of integers");
    const std::size_t r = D[0].size();
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < D.size(); ++i) {
        const std::string where = "D row " + std::to_string(i + 1);
        if (!D[i].is_array()) throw ConfigError(where + " must be a list of integers");
        if (D[i].size() != r)
            throw ConfigError(where + " has length " + std::to_string(D[i].size()) + ", expected " + std::to_string(r));
        IntVec row;
        for (std::size_t k = 0; k < r; ++k) row.push_back(get_int(D[i][k], where + " entry " + std::to_string(k + 1)));
        rows.push_back(row);
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array() || j["labels"].size() != rows.size())
            throw ConfigError("labels must list one string per row of D");
        for (const auto& s : j["labels"]) {
            if (!s.is_string()) throw ConfigError("labels must be strings");
            labels.push_back(s.get<std::string>());
        }
    }
    cfg.git = make_git(rows, labels);
    for (const char* key : {"omega_plus", "omega_minus"})
        if (!j.contains(key)) throw ConfigError(std::string("missing ") + key);
    cfg.omega_plus = get_ratvec(j["omega_plus"], "omega_plus", cfg.git.r);
    cfg.omega_minus = get_ratvec(j["omega_minus"], "omega_minus", cfg.git.r);

    if (j.contains("truncation")) {
        const auto& t = j["truncation"];
        only_keys(t, "truncation", {"K", "degree_bound"});
        if (t.contains("K")) cfg.trunc = static_cast<int>(get_int(t["K"], "truncation.K"));
        if (t.contains("degree_bound")) cfg.degree_bound = static_cast<int>(get_int(t["degree_bound"], "truncation.degree_bound"));
        if (cfg.trunc < 1 || cfg.trunc > 10000) throw ConfigError("truncation.K must lie in [1, 10000]");
        if (cfg.degree_bound < 0 || cfg.degree_bound > 64) throw ConfigError("truncation.degree_bound must lie in [0, 64]");
    }
    if (j.contains("sampling")) {
        const auto& s = j["sampling"];
        only_keys(s, "sampling", {"seed", "samples", "z_annulus"});
        if (s.contains("seed")) {
            const long long seed = get_int(s["seed"], "sampling.seed");
            if (seed < 0) throw ConfigError("sampling.seed must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(seed);
        }
        if (s.contains("samples")) cfg.samples = static_cast<int>(get_int(s["samples"], "sampling.samples"));
        if (cfg.samples < 0) throw ConfigError("sampling.samples must be nonnegative");
        if (s.contains("z_annulus")) {
            const auto& a = s["z_annulus"];
            if (!a.is_array() || a.size() != 2) throw ConfigError("sampling.z_annulus must be [r_min, r_max]");
            cfg.z_min = get_positive(a[0], "sampling.z_annulus[1]");
            cfg.z_max = get_positive(a[1], "sampling.z_annulus[2]");
            if (!(0 < cfg.z_min && cfg.z_min <= cfg.z_max)) throw ConfigError("sampling.z_annulus must satisfy 0 < r_min <= r_max");
        }
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        only_keys(t, "tolerances", {"uhfm", "pairing", "mb", "ode", "lifts", "quadrature", "pole_clearance"});
        auto set = [&](const char* key, double& out) {
            if (t.contains(key)) out = get_positive(t[key], std::string("tolerances.") + key);
        };
        set("uhfm", cfg.tol.uhfm);
        set("pairing", cfg.tol.pairing);
        set("mb", cfg.tol.mb);
        set("ode", cfg.tol.ode);
        set("lifts", cfg.tol.lifts);
        set("quadrature", cfg.tol.quadrature);
        set("pole_clearance", cfg.tol.pole_clearance);
    }
    if (j.contains("contour")) {
        const auto& c = j["contour"];
        only_keys(c, "contour", {"sigma_lo", "sigma_hi", "t_max"});
        if (c.contains("sigma_lo")) cfg.sigma_lo = to_double(get_rat(c["sigma_lo"], "contour.sigma_lo"));
        if (c.contains("sigma_hi")) cfg.sigma_hi = to_double(get_rat(c["sigma_hi"], "contour.sigma_hi"));
        if (c.contains("t_max")) cfg.t_max = get_positive(c["t_max"], "contour.t_max");
        if (!(-1.0 < cfg.sigma_lo && cfg.sigma_lo <= cfg.sigma_hi && cfg.sigma_hi < 0.0))
            throw ConfigError("contour must satisfy -1 < sigma_lo <= sigma_hi < 0");
    }
    cfg.canonical = j.dump();
    return cfg;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash(const JobConfig& cfg) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : cfg.canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace wallcross
