#include "wallcross/commands.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/ktheory.hpp"
#include "wallcross/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wallcross {

namespace {

using nlohmann::json;

constexpr double kGeneric = 1e-3;

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json str_list(const std::vector<std::string>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(x);
    return a;
}

std::string vec_str(const IntVec& v) { return to_string(to_rat(v)); }

std::string case_description(WallCase c) {
    switch (c) {
        case WallCase::I: return "flop";
        case WallCase::IIi: return "crepant partial resolution";
        case WallCase::IIii: return "crepant partial resolution, reversed";
        case WallCase::III: return "gerbe flop";
    }
    return "";
}

struct Context {
    const JobConfig& cfg;
    std::uint64_t seed;
    int trunc;
    WallCrossing wc;
};

Context make_context(const JobConfig& cfg, const RunOptions& opt) {
    return {cfg, opt.seed.value_or(cfg.seed), opt.trunc.value_or(cfg.trunc),
            wall_crossing(cfg.git, cfg.omega_plus, cfg.omega_minus)};
}

int sample_count(const Context& ctx, const RunOptions& opt, int fallback) {
    if (opt.samples) return *opt.samples;
    return ctx.cfg.samples > 0 ? ctx.cfg.samples : fallback;
}

json header(const Context& ctx, const std::string& command) {
    json h;
    h["command"] = command;
    h["config"] = ctx.cfg.name;
    h["config_hash"] = config_hash(ctx.cfg);
    h["seed"] = ctx.seed;
    h["version"] = kVersion;
    return h;
}

std::string text_header(const Context& ctx, const std::string& command) {
    std::ostringstream os;
    os << "wallcross " << command << "  config=" << ctx.cfg.name << "  hash=" << config_hash(ctx.cfg)
       << "  seed=" << ctx.seed << "\n";
    return os.str();
}

std::vector<cplx> generic_box(Sampler& s, const WallCrossing& wc) {
    while (true) {
        auto lam = s.box(wc.git.m, 1.0);
        if (resonance_distance(wc, lam) > kGeneric) return lam;
    }
}

std::vector<cplx> generic_ball(Sampler& s, const WallCrossing& wc) {
    while (true) {
        auto lam = s.ball(wc.git.m, 0.3);
        if (resonance_distance(wc, lam) > kGeneric) return lam;
    }
}

json chamber_json(const GITData& git, const AnticoneSet& A, int side, std::string& text) {
    json c;
    std::vector<std::string> mins, fps;
    for (const auto& d : minimal_anticones(git, A)) mins.push_back(to_string(d));
    for (const auto& p : fixed_points(git, A, side)) fps.push_back(to_string(p));
    c["minimal_anticones"] = str_list(mins);
    c["fixed_points"] = str_list(fps);
    c["S"] = to_string(s_set(A));
    json boxes = json::array();
    std::string bt;
    const auto box = box_elements(git, A.omega, side);
    for (const auto& b : box) {
        boxes.push_back({{"f", to_string(b.f)}, {"age", to_string(b.age)}, {"I_f", to_string(b.I_f)}});
        bt += (bt.empty() ? "" : ", ") + to_string(b.f) + " (age " + to_string(b.age) + ")";
    }
    c["box"] = boxes;
    const char* tag = side > 0 ? "+" : "-";
    text += std::string("box(") + tag + "): " + (box.size() == 1 ? std::string("trivial") : "{" + bt + "}") + "\n";
    return c;
}

}  // namespace

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

CommandResult cmd_analyze(const JobConfig& cfg, const RunOptions& opt) {
    const auto ctx = make_context(cfg, opt);
    const auto& wc = ctx.wc;
    const auto& git = wc.git;
    CommandResult out;
    json r;
    r["r"] = git.r;
    r["m"] = git.m;
    r["omega_plus"] = to_string(wc.omega_plus);
    r["omega_minus"] = to_string(wc.omega_minus);
    r["omega_zero"] = to_string(wc.omega_zero);
    r["case"] = to_string(wc.wall_case);
    r["case_description"] = case_description(wc.wall_case);
    r["e"] = vec_str(wc.e);
    r["M_plus"] = to_string(wc.M_plus);
    r["M_minus"] = to_string(wc.M_minus);
    r["M_zero"] = to_string(wc.M_zero);
    r["crepant"] = true;
    r["conifold_point"] = to_string(conifold_point(wc));
    r["w"] = w_constant(wc);
    const auto cc = coordinate_change(wc);
    json cj_;
    cj_["c"] = to_string(cc.c);
    cj_["A"] = cc.A.str();
    cj_["B"] = cc.B.str();
    std::vector<std::string> bp, bm;
    for (const auto& v : cc.basis_plus) bp.push_back(vec_str(v));
    for (const auto& v : cc.basis_minus) bm.push_back(vec_str(v));
    cj_["basis_plus"] = str_list(bp);
    cj_["basis_minus"] = str_list(bm);
    r["coordinate_change"] = cj_;

    std::ostringstream t;
    t << text_header(ctx, "analyze");
    t << "case: " << to_string(wc.wall_case) << " (" << case_description(wc.wall_case) << ")\n";
    t << "e: " << vec_str(wc.e) << "  M+: " << to_string(wc.M_plus) << "  M-: " << to_string(wc.M_minus)
      << "  M0: " << to_string(wc.M_zero) << "\n";
    t << "fixed points: " << fixed_points(git, wc.A_plus).size() << "+" << fixed_points(git, wc.A_minus).size() << "\n";
    t << "conifold point c = " << to_string(conifold_point(wc)) << ", w = " << w_constant(wc) << ", crepant\n";
    std::string bt;
    json ch;
    ch["plus"] = chamber_json(git, wc.A_plus, 1, bt);
    ch["minus"] = chamber_json(git, wc.A_minus, -1, bt);
    r["chambers"] = ch;
    t << bt;
    out.report = header(ctx, "analyze");
    out.report["result"] = r;
    out.report["pass"] = true;
    out.text = t.str();
    return out;
}

CommandResult cmd_boxes(const JobConfig& cfg, const RunOptions& opt) {
    const auto ctx = make_context(cfg, opt);
    CommandResult out;
    std::string t = text_header(ctx, "boxes");
    json r;
    r["plus"] = chamber_json(ctx.wc.git, ctx.wc.A_plus, 1, t)["box"];
    r["minus"] = chamber_json(ctx.wc.git, ctx.wc.A_minus, -1, t)["box"];
    out.report = header(ctx, "boxes");
    out.report["result"] = r;
    out.report["pass"] = true;
    out.text = t;
    return out;
}

CommandResult cmd_fixed_points(const JobConfig& cfg, const RunOptions& opt) {
    const auto ctx = make_context(cfg, opt);
    const auto& git = ctx.wc.git;
    CommandResult out;
    std::ostringstream t;
    t << text_header(ctx, "fixed-points");
    json r;
    for (int side : {1, -1}) {
        const auto& A = ctx.wc.anticones(side);
        json list = json::array();
        for (const auto& p : fixed_points(git, A, side)) {
            const auto nw = normal_weights(git, p);
            json fixed = json::array(), moving = json::array();
            for (const auto& [j, f] : nw.fixed) fixed.push_back({{"j", j + 1}, {"weight", f.str()}});
            for (const auto& mv : nw.moving)
                moving.push_back({{"j", mv.j + 1}, {"weight", mv.weight.str()}, {"fraction", to_string(mv.fraction)}});
            list.push_back({{"label", to_string(p)},
                            {"age", to_string(p.f.age)},
                            {"common", ctx.wc.anticones(-side).contains(p.delta)},
                            {"fixed_weights", fixed},
                            {"moving_weights", moving}});
            t << (side > 0 ? "+ " : "- ") << std::left;
            t.width(24);
            t << to_string(p) << " age " << to_string(p.f.age) << "\n";
        }
        r[side > 0 ? "plus" : "minus"] = list;
    }
    out.report = header(ctx, "fixed-points");
    out.report["result"] = r;
    out.report["pass"] = true;
    out.text = t.str();
    return out;
}

CommandResult cmd_continuation(const JobConfig& cfg, const RunOptions& opt) {
    const auto ctx = make_context(cfg, opt);
    const auto& wc = ctx.wc;
    const auto& git = wc.git;
    Sampler sampler(ctx.seed);
    const auto lam = generic_box(sampler, wc);
    const long long w = w_constant(wc);
    CommandResult out;
    std::ostringstream t;
    t << text_header(ctx, "continuation");
    json rows = json::array();
    for (const auto& p : fixed_points(git, wc.A_plus, 1)) {
        if (!wc.A_minus.contains(p.delta)) continue;
        rows.push_back({{"plus", to_string(p)}, {"minus", to_string(p)}, {"identity", true}, {"value", cj(1.0)}});
        t << to_string(p) << " -> " << to_string(p) << "  identity\n";
    }
    for (const auto& pr : next_to_pairs(wc)) {
        const auto up = restrict_u(git, pr.plus.delta), um = restrict_u(git, pr.minus.delta);
        const Rat shift = git.pair(pr.j_minus, sub(pr.plus.f.f, pr.f_minus_lift));
        const std::string X = "(" + up[pr.j_minus].str() + ")/2πi + " + to_string(shift);
        json ratios = json::array();
        std::string rt;
        for (int j = 0; j < git.m; ++j) {
            if (j == pr.j_minus || wc.De(j) >= 0) continue;
            const std::string num = "(" + up[j].str() + ")/2πi + " + to_string(git.pair(j, pr.plus.f.f));
            const std::string den = "(" + um[j].str() + ")/2πi + " + to_string(git.pair(j, pr.f_minus_lift));
            ratios.push_back({{"j", j + 1}, {"num", num}, {"den", den}});
            rt += " * sin π(" + num + ") / sin π(" + den + ")";
        }
        const cplx C = continuation_coefficient(wc, pr.plus.delta, pr.plus.f.f, pr.minus.delta, pr.f_minus_lift, lam);
        const std::string prefactor = "exp(πi*" + std::to_string(w) + "*X/(" + std::to_string(wc.De(pr.j_minus)) + "))";
        const std::string root = "sin(πX)/(" + std::to_string(pr.l) + "*sin(πX/" + std::to_string(pr.l) + "))";
        rows.push_back({{"plus", to_string(pr.plus)},
                        {"minus", to_string(pr.minus)},
                        {"identity", false},
                        {"f_minus_lift", to_string(pr.f_minus_lift)},
                        {"j_minus", pr.j_minus + 1},
                        {"l", pr.l},
                        {"X", X},
                        {"prefactor", prefactor},
                        {"root_factor", root},
                        {"sine_ratios", ratios},
                        {"value", cj(C)}});
        t << to_string(pr.plus) << " -> " << to_string(pr.minus) << "  C = " << prefactor << " * " << root << rt
          << ",  X = " << X << "\n";
    }
    json lj = json::array();
    for (auto x : lam) lj.push_back(cj(x));
    out.report = header(ctx, "continuation");
    out.report["result"] = {{"w", w}, {"lambda", lj}, {"entries", rows}};
    out.report["pass"] = true;
    out.text = t.str();
    return out;
}

CommandResult cmd_fm(const JobConfig& cfg, const RunOptions& opt) {
    const auto ctx = make_context(cfg, opt);
    const auto& wc = ctx.wc;
    CommandResult out;
    std::ostringstream t;
    t << text_header(ctx, "fm");
    json rows = json::array();
    for (const auto& b : k_basis(wc.git, wc.A_minus)) {
        const KClass img = fm_transform(wc, b.delta, b.rho_hat);
        const KClass src = basis_e(wc.git, b.delta, b.rho_hat);
        const bool common = wc.A_plus.contains(b.delta);
        rows.push_back({{"delta", to_string(b.delta)},
                        {"rho_hat", vec_str(b.rho_hat)},
                        {"common", common},
                        {"source", src.str()},
                        {"image", img.str()},
                        {"terms", img.terms.size()}});
        t << "FM e(" << to_string(b.delta) << "," << vec_str(b.rho_hat) << ") = " << img.str() << "\n";
    }
    out.report = header(ctx, "fm");
    out.report["result"] = {{"images", rows}};
    out.report["pass"] = true;
    out.text = t.str();
    return out;
}

CommandResult cmd_series(const JobConfig& cfg, const RunOptions& opt) {
    const auto ctx = make_context(cfg, opt);
    const auto& wc = ctx.wc;
    Sampler sampler(ctx.seed);
    const auto lam = generic_ball(sampler, wc);
    CommandResult out;
    std::ostringstream t;
    t << text_header(ctx, "series");
    json rows = json::array();
    double worst = 0;
    for (const auto& p : fixed_points(wc.git, wc.A_plus, 1))
        for (const auto& blk : h_restriction_series(wc, p, ctx.trunc, cfg.degree_bound, lam)) {
            json coeffs = json::array();
            for (int k = 0; k < std::min(4, blk.series.order() + 1); ++k) coeffs.push_back(cj(blk.series.coefficients[k]));
            const double res = gkz_ode_residual(blk.series, blk.spec, lam);
            worst = std::max(worst, res);
            rows.push_back({{"label", to_string(p)},
                            {"d_plus", to_string(blk.spec.d_plus)},
                            {"K", blk.series.order()},
                            {"leading_coefficients", coeffs},
                            {"ode_residual", res}});
            t << to_string(p) << " d+=" << to_string(blk.spec.d_plus) << "  Phi_1=" << blk.series.coefficients[1]
              << "  ode residual " << res << "\n";
        }
    out.report = header(ctx, "series");
    out.report["result"] = {{"blocks", rows}, {"max_ode_residual", worst}};
    out.report["pass"] = true;
    out.text = t.str();
    return out;
}

CommandResult cmd_verify(const JobConfig& cfg, const std::string& suite, const RunOptions& opt) {
    const auto ctx = make_context(cfg, opt);
    const auto& wc = ctx.wc;
    Sampler sampler(ctx.seed);
    json r;
    r["suite"] = suite;
    double tol = 0, residual = 0;
    std::string worst;
    std::size_t evaluations = 0;

    if (suite == "uhfm") {
        tol = cfg.tol.uhfm;
        const int n = sample_count(ctx, opt, 20);
        std::vector<std::vector<cplx>> samples;
        for (int s = 0; s < n; ++s) samples.push_back(generic_box(sampler, wc));
        const auto rep = verify_uhfm(wc, samples);
        residual = rep.max_residual;
        worst = rep.worst;
        evaluations = rep.evaluations;
    } else if (suite == "pairing") {
        tol = cfg.tol.pairing;
        const int n = sample_count(ctx, opt, 10);
        std::vector<std::pair<std::vector<cplx>, cplx>> samples;
        while (static_cast<int>(samples.size()) < n) {
            auto lam = sampler.box(wc.git.m, 1.0);
            const cplx z = sampler.annulus(cfg.z_min, cfg.z_max);
            std::vector<cplx> scaled;
            for (auto x : lam) scaled.push_back(kTwoPiI * x / z);
            if (resonance_distance(wc, scaled) > kGeneric) samples.push_back({lam, z});
        }
        const auto rep = verify_pairing_preserved(wc, samples);
        residual = rep.max_residual;
        worst = rep.worst;
        evaluations = rep.evaluations;
    } else if (suite == "mb") {
        tol = cfg.tol.mb;
        const int n = sample_count(ctx, opt, 5);
        ContourSpec cs;
        cs.sigma_lo = cfg.sigma_lo;
        cs.sigma_hi = cfg.sigma_hi;
        cs.t_max = cfg.t_max;
        cs.tol = cfg.tol.quadrature;
        cs.min_clearance = cfg.tol.pole_clearance;
        double inside = 0, outside = 0, residues = 0;
        for (int s = 0; s < n; ++s) {
            const auto lam = generic_ball(sampler, wc);
            for (const auto& p : fixed_points(wc.git, wc.A_plus, 1)) {
                if (wc.A_minus.contains(p.delta)) continue;
                for (const auto& d : starting_degrees(wc, p, cfg.degree_bound)) {
                    const auto spec = make_inner_spec(wc, p, d);
                    const auto chk = verify_residue_identity(wc, spec, lam, 0.3, 3.0, cs);
                    const double here = std::max(chk.right_error, chk.left_error);
                    if (!(here <= residual)) {
                        residual = here;
                        worst = to_string(p) + " d+=" + to_string(d) + ", sample " + std::to_string(s);
                    }
                    inside = std::max(inside, chk.right_error);
                    outside = std::max(outside, chk.left_error);
                    residues = std::max(residues, chk.residue_error);
                    ++evaluations;
                }
            }
        }
        r["inside_residual"] = inside;
        r["outside_residual"] = outside;
        r["residue_sum_residual"] = residues;
    } else if (suite == "ode") {
        tol = cfg.tol.ode;
        const int n = sample_count(ctx, opt, 3);
        for (int s = 0; s < n; ++s) {
            const auto lam = generic_ball(sampler, wc);
            for (const auto& side : {wc, swap_sides(wc)})
                for (const auto& p : fixed_points(side.git, side.A_plus, 1))
                    for (const auto& blk : h_restriction_series(side, p, ctx.trunc, cfg.degree_bound, lam)) {
                        const double res = gkz_ode_residual(blk.series, blk.spec, lam);
                        ++evaluations;
                        if (!(res <= residual)) {
                            residual = res;
                            worst = to_string(p) + " d+=" + to_string(blk.spec.d_plus) + ", sample " + std::to_string(s);
                        }
                    }
        }
        r["K"] = ctx.trunc;
    } else if (suite == "lifts") {
        tol = cfg.tol.lifts;
        const int n = sample_count(ctx, opt, 5);
        for (int s = 0; s < n; ++s) {
            const auto lam = generic_box(sampler, wc);
            for (const auto& pr : next_to_pairs(wc)) {
                IntVec v(wc.git.r);
                for (auto& x : v) x = static_cast<long long>(std::floor(sampler.uniform(-3.0, 4.0)));
                const double res = lift_invariance_check(wc, pr, v, lam);
                ++evaluations;
                if (!(res <= residual)) {
                    residual = res;
                    worst = to_string(pr.plus) + " | " + to_string(pr.minus) + ", shift " + vec_str(v) + ", sample " +
                            std::to_string(s);
                }
            }
        }
    } else {
        throw PreconditionFailed("unknown suite '" + suite + "' (expected uhfm, pairing, mb, ode or lifts)");
    }
    if (opt.tol) tol = *opt.tol;
    CommandResult out;
    out.pass = residual < tol;
    r["tolerance"] = tol;
    r["max_residual"] = residual;
    r["worst"] = worst;
    r["evaluations"] = evaluations;
    out.report = header(ctx, "verify");
    out.report["result"] = r;
    out.report["pass"] = out.pass;
    std::ostringstream t;
    t << text_header(ctx, "verify " + suite);
    t << (out.pass ? "PASS" : "FAIL") << "  max residual " << residual << "  tolerance " << tol << "  ("
      << evaluations << " evaluations)\n";
    if (!out.pass) t << "worst: " << worst << "\n";
    out.text = t.str();
    return out;
}

}  // namespace wallcross
