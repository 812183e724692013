// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time
// budgets are fixed here and are not read from the configs.
#include "wallcross/commands.hpp"
#include "wallcross/config.hpp"
#include "wallcross/errors.hpp"
#include "wallcross/hypergeom.hpp"
#include "wallcross/ktheory.hpp"
#include "wallcross/localization.hpp"
#include "wallcross/mellinbarnes.hpp"
#include "wallcross/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace wallcross;

namespace {

constexpr double kMB = 1e-7;
constexpr double kUHFM = 1e-9;
constexpr double kSensitivity = 1e-4;
constexpr double kPairing = 1e-8;
constexpr double kHRR = 1e-12;
constexpr double kODE = 1e-12;
constexpr double kLifts = 1e-12;
constexpr double kGenericDistance = 1e-3;

const std::string kSrc = WALLCROSS_SOURCE_DIR;

struct Example {
    JobConfig cfg;
    WallCrossing wc;
};

Example load(const std::string& name) {
    Example ex{load_config(kSrc + "/configs/" + name + ".json"), {}};
    ex.wc = wall_crossing(ex.cfg.git, ex.cfg.omega_plus, ex.cfg.omega_minus);
    return ex;
}

std::vector<cplx> generic(Sampler& s, const WallCrossing& wc, double radius, bool box) {
    while (true) {
        auto lam = box ? s.box(wc.git.m, radius) : s.ball(wc.git.m, radius);
        if (resonance_distance(wc, lam) > kGenericDistance) return lam;
    }
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

int failures = 0;

// Runs one criterion; body returns true on success and fills the detail line.
void criterion(int id, const std::string& title, double budget_s, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > budget_s) {
        ok = false;
        detail += " (over the " + sci(budget_s) + "s budget)";
    }
    if (!ok) ++failures;
    std::printf("%s %2d %s: %s [%.2fs]\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(), elapsed);
    std::fflush(stdout);
}

// Small crepant wall crossings drawn as in the unit tests, r <= 3 and m <= 7.
std::vector<WallCrossing> random_crossings(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> ent(-2, 2);
    std::vector<WallCrossing> out;
    for (int attempt = 0; attempt < 50000 && static_cast<int>(out.size()) < count; ++attempt) {
        const int r = 1 + static_cast<int>(rng() % 3);
        const int m = r + 2 + static_cast<int>(rng() % (6 - r));
        std::vector<IntVec> D(m, IntVec(r));
        IntVec sum(r, 0);
        for (int i = 0; i + 1 < m; ++i)
            for (int k = 0; k < r; ++k) {
                D[i][k] = ent(rng);
                sum[k] += D[i][k];
            }
        for (int k = 0; k < r; ++k) D[m - 1][k] = -sum[k];
        std::vector<int> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        try {
            const auto g = make_git(D);
            std::vector<RatVec> wall;
            RatVec base(r, Rat(0));
            for (int a = 0; a < r - 1; ++a) {
                wall.push_back(to_rat(D[idx[a]]));
                base = add(base, scale(Rat(1 + static_cast<long long>(rng() % 5)), wall.back()));
            }
            if (static_cast<int>(rank(wall)) != r - 1) continue;
            const RatVec off = to_rat(D[idx[r - 1]]);
            primitive_wall_normal(wall, off);
            out.push_back(wall_crossing(g, add(scale(Rat(40), base), off), sub(scale(Rat(40), base), off)));
        } catch (const Error&) {
            continue;
        }
    }
    return out;
}

}  // namespace

int main() {
    const Example conifold = load("conifold");
    const Example a1 = load("a1");
    const Example gerbe = load("gerbe");
    const std::vector<const Example*> all{&conifold, &a1, &gerbe};

    criterion(1, "classification", 1.0, [&](std::string& d) {
        bool ok = true;
        const WallCase want[] = {WallCase::I, WallCase::IIi, WallCase::III};
        for (std::size_t i = 0; i < all.size(); ++i) {
            const auto wc = wall_crossing(all[i]->cfg.git, all[i]->cfg.omega_plus, all[i]->cfg.omega_minus);
            d += all[i]->cfg.name + "=" + to_string(wc.wall_case) + " ";
            ok = ok && wc.wall_case == want[i];
        }
        return ok;
    });

    criterion(2, "exact weight transition", 10.0, [&](std::string& d) {
        auto cases = random_crossings(100, 99);
        if (cases.size() != 100) {
            d = "only " + std::to_string(cases.size()) + " random datasets";
            return false;
        }
        for (const auto* ex : all) cases.push_back(ex->wc);
        std::size_t checks = 0, bad = 0;
        for (const auto& wc : cases) {
            // The identity only involves the anticones, not the sectors.
            std::set<std::pair<Anticone, Anticone>> seen;
            for (const auto& p : next_to_pairs(wc)) {
                if (!seen.insert({p.plus.delta, p.minus.delta}).second) continue;
                for (int j = 0; j < wc.git.m; ++j) {
                    ++checks;
                    if (!verify_weight_transition(wc, p.plus.delta, p.minus.delta, j)) ++bad;
                }
            }
        }
        d = std::to_string(checks) + " identities on " + std::to_string(cases.size()) + " crossings, " +
            std::to_string(bad) + " mismatches";
        return bad == 0 && checks > 0;
    });

    criterion(3, "conifold point and w", 1.0, [&](std::string& d) {
        const Rat want_c[] = {Rat(1), make_rat(1, 4), Rat(1)};
        bool ok = true;
        for (std::size_t i = 0; i < all.size(); ++i) {
            const auto& wc = all[i]->wc;
            long long neg = 0, pos = 0;
            for (int j = 0; j < wc.git.m; ++j) (wc.De(j) < 0 ? neg : pos) += wc.De(j);
            const long long w = w_constant(wc);
            const Rat c = conifold_point(wc);
            d += all[i]->cfg.name + ": c=" + to_string(c) + " w=" + std::to_string(w) + " ";
            ok = ok && c == want_c[i] && w == 1 && -1 - neg == w && -1 + pos == w;
        }
        return ok;
    });

    criterion(4, "Mellin-Barnes residue identity", 60.0, [&](std::string& d) {
        double inside = 0, outside = 0;
        std::size_t n = 0;
        for (const auto* ex : {&conifold, &a1}) {
            const auto& wc = ex->wc;
            Sampler s(ex->cfg.seed);
            for (int k = 0; k < 5; ++k) {
                const auto lam = generic(s, wc, 0.3, false);
                for (const auto& p : fixed_points(wc.git, wc.A_plus, 1)) {
                    if (wc.A_minus.contains(p.delta)) continue;
                    for (const auto& dp : starting_degrees(wc, p, ex->cfg.degree_bound)) {
                        const auto chk = verify_residue_identity(wc, make_inner_spec(wc, p, dp), lam, 0.3, 3.0);
                        inside = std::max(inside, chk.right_error);
                        outside = std::max(outside, chk.left_error);
                        ++n;
                    }
                }
            }
        }
        d = "inside " + sci(inside) + ", outside " + sci(outside) + " over " + std::to_string(n) + " integrals";
        return n > 0 && inside < kMB && outside < kMB;
    });

    criterion(5, "UH-FM diagram", 120.0, [&](std::string& d) {
        double worst = 0, weakest = INFINITY;
        std::size_t evals = 0;
        for (const auto* ex : all) {
            Sampler s(ex->cfg.seed);
            std::vector<std::vector<cplx>> samples;
            for (int k = 0; k < 20; ++k) samples.push_back(generic(s, ex->wc, 1.0, true));
            const auto rep = verify_uhfm(ex->wc, samples);
            worst = std::max(worst, rep.max_residual);
            evals += rep.evaluations;
            const auto pairs = next_to_pairs(ex->wc).size();
            for (std::size_t i = 0; i < pairs; ++i) {
                const auto bad = verify_uhfm(ex->wc, samples,
                                             [i](std::size_t k, cplx c) { return k == i ? c * (1.0 + 1e-3) : c; });
                weakest = std::min(weakest, bad.max_residual);
            }
        }
        d = "residual " + sci(worst) + " over " + std::to_string(evals) + " evaluations, perturbed minimum " +
            sci(weakest);
        return evals > 0 && worst < kUHFM && weakest > kSensitivity;
    });

    criterion(6, "pairing preservation", 60.0, [&](std::string& d) {
        double worst = 0;
        std::size_t evals = 0;
        for (const auto* ex : {&conifold, &a1}) {
            Sampler s(ex->cfg.seed);
            std::vector<std::pair<std::vector<cplx>, cplx>> samples;
            while (samples.size() < 10) {
                auto lam = s.box(ex->wc.git.m, 1.0);
                const cplx z = s.annulus(ex->cfg.z_min, ex->cfg.z_max);
                std::vector<cplx> scaled;
                for (auto x : lam) scaled.push_back(kTwoPiI * x / z);
                if (resonance_distance(ex->wc, scaled) > kGenericDistance) samples.push_back({lam, z});
            }
            const auto rep = verify_pairing_preserved(ex->wc, samples);
            worst = std::max(worst, rep.max_residual);
            evals += rep.evaluations;
        }
        d = "residual " + sci(worst) + " over " + std::to_string(evals) + " pairings";
        return evals > 0 && worst < kPairing;
    });

    criterion(7, "localized HRR", 5.0, [&](std::string& d) {
        double worst = 0;
        Sampler s(7);
        for (const auto& D : {std::vector<IntVec>{{1}, {1}}, std::vector<IntVec>{{2}, {2}}}) {
            const auto g = make_git(D);
            const auto A = validate_stability(g, {Rat(1)});
            for (int k = 0; k < 10; ++k) {
                const auto lam = s.box(2, 1.0);
                const cplx chi = euler_pairing(g, A, KClass::one(1, 2), KClass::one(1, 2), lam);
                worst = std::max(worst, std::abs(chi - 1.0));
            }
        }
        d = "|chi(O,O) - 1| " + sci(worst) + " on P^1 and P(2,2)";
        return worst < kHRR;
    });

    criterion(8, "GKZ ODE annihilation", 10.0, [&](std::string& d) {
        double worst = 0;
        std::size_t blocks = 0;
        for (const auto* ex : all) {
            Sampler s(ex->cfg.seed);
            for (int k = 0; k < 3; ++k) {
                const auto lam = generic(s, ex->wc, 0.3, false);
                for (const auto& side : {ex->wc, swap_sides(ex->wc)})
                    for (const auto& p : fixed_points(side.git, side.A_plus, 1))
                        for (const auto& blk : h_restriction_series(side, p, 40, ex->cfg.degree_bound, lam)) {
                            worst = std::max(worst, gkz_ode_residual(blk.series, blk.spec, lam));
                            ++blocks;
                        }
            }
        }
        d = "relative residual " + sci(worst) + " over " + std::to_string(blocks) + " series, K=40";
        return blocks > 0 && worst < kODE;
    });

    criterion(9, "lift independence", 5.0, [&](std::string& d) {
        double worst = 0;
        std::size_t n = 0;
        for (const auto* ex : all) {
            Sampler s(ex->cfg.seed);
            for (int k = 0; k < 5; ++k) {
                const auto lam = generic(s, ex->wc, 1.0, true);
                for (const auto& pr : next_to_pairs(ex->wc)) {
                    IntVec v(ex->wc.git.r);
                    for (auto& x : v) x = static_cast<long long>(std::floor(s.uniform(-3.0, 4.0)));
                    worst = std::max(worst, lift_invariance_check(ex->wc, pr, v, lam));
                    ++n;
                }
            }
        }
        d = "max relative change " + sci(worst) + " over " + std::to_string(n) + " lift pairs";
        return n > 0 && worst < kLifts;
    });

    criterion(10, "deterministic reports", 60.0, [&](std::string& d) {
        RunOptions opt;
        opt.samples = 3;
        std::size_t compared = 0;
        for (const auto* ex : all) {
            for (const char* suite : {"uhfm", "lifts", "ode"}) {
                const auto a = dump_report(cmd_verify(ex->cfg, suite, opt).report);
                const auto b = dump_report(cmd_verify(ex->cfg, suite, opt).report);
                if (a != b) {
                    d = ex->cfg.name + " " + suite + " differs between runs";
                    return false;
                }
                ++compared;
            }
            if (dump_report(cmd_continuation(ex->cfg, opt).report) != dump_report(cmd_continuation(ex->cfg, opt).report)) {
                d = ex->cfg.name + " continuation differs between runs";
                return false;
            }
            ++compared;
        }
        d = std::to_string(compared) + " report pairs byte-identical";
        return true;
    });

    std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
