#include "wallcross/errors.hpp"
#include "wallcross/mellinbarnes.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace wallcross;

namespace {

Rat q(long long a, long long b = 1) { return make_rat(a, b); }

WallCrossing conifold() { return wall_crossing(make_git({{1}, {1}, {-1}, {-1}}), {q(1)}, {q(-1)}); }
WallCrossing a1() { return wall_crossing(make_git({{1}, {1}, {-2}}), {q(1)}, {q(-1)}); }
WallCrossing gerbe() { return wall_crossing(make_git({{1, 0}, {1, 2}, {0, 2}}), {q(2), q(1)}, {q(1), q(3)}); }

std::vector<cplx> sample_lambda(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < m) {
        cplx z{U(rng), U(rng)};
        if (std::abs(z) <= 1.0) out.push_back(0.3 * z);
    }
    return out;
}

std::vector<InnerSeriesSpec> outgoing_blocks(const WallCrossing& wc) {
    std::vector<InnerSeriesSpec> out;
    for (const auto& p : fixed_points(wc.git, wc.A_plus, 1)) {
        if (wc.A_minus.contains(p.delta)) continue;
        for (const auto& d : starting_degrees(wc, p, 2)) out.push_back(make_inner_spec(wc, p, d));
    }
    return out;
}

}  // namespace

TEST_CASE("conifold coefficient in closed form") {
    const auto wc = conifold();
    std::mt19937_64 rng(1);
    const auto lam = sample_lambda(rng, 4);
    // delta+ = {1}, delta- = {3}; X = (lambda3 + lambda1)/2 pi i, l = 1.
    const cplx X = (lam[2] + lam[0]) / kTwoPiI;
    const cplx b4p = (lam[3] + lam[0]) / kTwoPiI, b4m = (lam[3] - lam[2]) / kTwoPiI;
    const cplx expect = std::exp(-kPi * cplx(0, 1) * X) * std::sin(kPi * b4p) / std::sin(kPi * b4m);
    const cplx got = continuation_coefficient(wc, {0}, {q(0)}, {2}, {q(0)}, lam);
    CHECK(std::abs(got - expect) < 1e-13);
    CHECK_THROWS_AS(continuation_coefficient(gerbe(), {0, 1}, {q(0), q(0)}, {1, 2}, {q(1, 2), q(0)}, lam),
                    IncompatibleLifts);
}

TEST_CASE("continuation matrix shape") {
    std::mt19937_64 rng(2);
    const auto wc = a1();
    const auto M = continuation_matrix(wc, sample_lambda(rng, 3));
    // Two smooth points on the plus side, each next to both sectors of the orbifold point.
    CHECK(M.size() == 4);
    for (const auto& e : M) CHECK(std::isfinite(std::abs(e.value)));
}

TEST_CASE("integral matches right series and continuation") {
    std::mt19937_64 rng(7);
    for (const auto& base : {conifold(), a1(), gerbe()})
        for (const auto& wc : {base, swap_sides(base)})
            for (const auto& spec : outgoing_blocks(wc)) {
                const auto lam = sample_lambda(rng, wc.git.m);
                const auto chk = verify_residue_identity(wc, spec, lam);
                INFO(to_string(spec.label) << " d+=" << to_string(spec.d_plus));
                CHECK(chk.right_error < 1e-7);
                CHECK(chk.left_error < 1e-7);
                CHECK(chk.residue_error < 1e-10);
            }
}

TEST_CASE("circle corrections are exercised") {
    // beta_3 with real part near 0.3 leaves a left pole to the right of the line.
    const auto wc = conifold();
    const auto spec = outgoing_blocks(wc).front();
    std::vector<cplx> lam = {0.0, 0.1, kTwoPiI * cplx(0.3, 0.05), cplx(0.02, 0.1)};
    const auto res = mb_integral(spec, 0.3, 1, lam);
    CHECK(res.corrections >= 1);
    CHECK(std::abs(res.value - right_series(spec, 0.3, 1, lam)) < 1e-7);
}

TEST_CASE("contour failure paths") {
    const auto wc = conifold();
    const auto spec = outgoing_blocks(wc).front();
    // Pin the line onto a pole.
    // beta_3 = -1/4 puts a left pole at s = -1/4.
    std::vector<cplx> lam = {0.0, 0.0, kTwoPiI * (-0.25), 0.1};
    ContourSpec cs;
    cs.sigma_lo = cs.sigma_hi = -0.25;
    cs.scan_steps = 2;
    CHECK_THROWS_AS(mb_integral(spec, 0.3, 1, lam, cs), ContourTooClose);
    ContourSpec shortline;
    shortline.t_max = 1.0;
    std::mt19937_64 rng(4);
    CHECK_THROWS_AS(mb_integral(spec, 0.3, 1, sample_lambda(rng, 4), shortline), NonConvergent);
}

TEST_CASE("coefficients do not depend on lifts") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> V(-3, 3);
    for (const auto& base : {conifold(), a1(), gerbe()})
        for (const auto& wc : {base, swap_sides(base)})
            for (const auto& pr : next_to_pairs(wc))
                for (int s = 0; s < 5; ++s) {
                    IntVec v(wc.git.r);
                    for (auto& x : v) x = V(rng);
                    CHECK(lift_invariance_check(wc, pr, v, sample_lambda(rng, wc.git.m)) < 1e-12);
                }
}
