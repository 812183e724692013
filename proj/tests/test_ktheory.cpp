#include "wallcross/errors.hpp"
#include "wallcross/ktheory.hpp"

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
    for (int i = 0; i < m; ++i) out.emplace_back(U(rng), U(rng));
    return out;
}

cplx sample_z(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> R(4.0, 8.0), A(-kPi, kPi);
    return std::polar(R(rng), A(rng));
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("class arithmetic") {
    const auto g = conifold().git;
    const KClass one = KClass::one(1, 4);
    const KClass s1 = KClass::S(g, 0);
    CHECK((s1 * KClass::R(g, 0)) == one);
    CHECK((s1 - s1).is_zero());
    CHECK(dual(dual(s1 + one * 3)) == s1 + one * 3);
    CHECK((one - s1).str() == "-L(-1)*e^{-λ1} + 1");
    CHECK(KClass::line(4, {2}).str() == "L(2)");
}

TEST_CASE("isotropy characters and basis") {
    const auto g = make_git({{1}, {1}, {-2}});
    CHECK(isotropy_characters(g, {2}) == std::vector<IntVec>{{-1}, {0}});
    CHECK(isotropy_characters(g, {0}) == std::vector<IntVec>{{0}});
    const auto gw = gerbe();
    const auto& gg = gw.git;
    for (const auto& d : minimal_anticones(gg, gw.A_minus)) {
        std::vector<RatVec> rows;
        for (int i : d) rows.push_back(to_rat(gg.D[i]));
        const double det = std::abs(to_double(determinant(rows)));
        CHECK(double(isotropy_characters(gg, d).size()) == det);
    }
    std::mt19937_64 rng(3);
    const auto wc = conifold();
    const auto lam = sample_lambda(rng, 4);
    const KClass e = basis_e(wc.git, {2}, {0});
    const auto u = restrict_u(wc.git, {2});
    cplx expect = 1.0;
    for (int i : {0, 1, 3}) expect *= 1.0 - std::exp(-u[i].eval(lam));
    CHECK(std::abs(chern_restrict(e, wc.git, {2}, {q(0)}, lam) - expect) < 1e-13);
    CHECK(std::abs(chern_restrict(e, wc.git, {3}, {q(0)}, lam)) < 1e-13);
}

TEST_CASE("chern restriction examples") {
    std::mt19937_64 rng(8);
    const auto g = conifold().git;
    const auto lam = sample_lambda(rng, 4);
    CHECK(std::abs(chern_restrict(KClass::S(g, 2), g, {0}, {q(0)}, lam) - std::exp(-(lam[0] + lam[2]))) < 1e-13);
    const KClass a = KClass::one(1, 4) - KClass::S(g, 1), b = KClass::line(4, {3}) + KClass::S(g, 3) * 2;
    for (const Anticone& d : {Anticone{0}, Anticone{1}})
        CHECK(std::abs(chern_restrict(a * b, g, d, {q(0)}, lam) -
                       chern_restrict(a, g, d, {q(0)}, lam) * chern_restrict(b, g, d, {q(0)}, lam)) < 1e-12);
    const auto h = make_git({{1}, {1}, {-2}});
    // On the half sector S_1 picks up the phase e^{-pi i}.
    const auto u = restrict_u(h, {2});
    CHECK(std::abs(chern_restrict(KClass::S(h, 0), h, {2}, {q(1, 2)}, lam) + std::exp(-u[0].eval(lam))) < 1e-13);
    CHECK(std::abs(chern_restrict(KClass::one(1, 3), h, {2}, {q(1, 2)}, lam) - 1.0) < 1e-15);
}

TEST_CASE("root averaging and exact division") {
    CHECK(!roots_projector(2, 3));
    CHECK(roots_projector(2, 4) == 2);
    CHECK(roots_projector(1, -5) == -5);
    const RootDatum d{2, 3};
    auto T = [&](long long k) { return KClass::t_power(1, 3, d, k); };
    const KClass quotient = divide_one_minus_tinv(T(0) - T(-3));
    CHECK(quotient == T(0) + T(-1) + T(-2));
    CHECK_THROWS_AS(divide_one_minus_tinv(T(0) + T(-1)), NonLaurent);
}

TEST_CASE("Fourier-Mukai images") {
    const auto wc = conifold();
    const auto& g = wc.git;
    const KClass one = KClass::one(1, 4);
    const KClass expect = (one - KClass::S(g, 3)) * (one - KClass::S(g, 2) * KClass::S(g, 0)) *
                          (one - KClass::S(g, 2) * KClass::S(g, 1));
    CHECK(fm_transform(wc, {2}, {0}) == expect);

    const auto w = a1();
    for (const auto& rho : isotropy_characters(w.git, {2})) {
        const KClass img = fm_transform(w, {2}, rho);
        CHECK(!img.root);
        for (const auto& [mono, c] : img.terms) CHECK(mono.t == 0);
    }
    const auto gw = gerbe();
    CHECK(fm_transform(gw, {0, 2}, {0, 0}) == basis_e(gw.git, {0, 2}, {0, 0}));
}

TEST_CASE("chern matching on next-to pairs") {
    std::mt19937_64 rng(12);
    for (const auto& base : {conifold(), a1(), gerbe()})
        for (const auto& wc : {base, swap_sides(base)}) {
            const auto& g = wc.git;
            for (const auto& pr : next_to_pairs(wc)) {
                const auto lam = sample_lambda(rng, g.m);
                const auto& fm = pr.f_minus_lift;
                const RootDatum d{pr.j_minus, pr.l};
                const cplx zeta = std::polar(1.0, -2.0 * kPi * to_double(g.pair(pr.j_minus, fm)) / double(pr.l));
                auto plus = [&](const KClass& k) { return chern_restrict(k, g, pr.plus.delta, pr.plus.f.f, lam, zeta); };
                auto minus = [&](const KClass& k) { return chern_restrict(k, g, pr.minus.delta, fm, lam); };
                for (long long p0 = -2; p0 <= 2; ++p0) {
                    IntVec rho(g.r, 0);
                    rho[0] = p0;
                    const KClass lhs = KClass::line(g.m, rho) * KClass::t_power(g.r, g.m, d, dot(rho, wc.e));
                    CHECK(rel(plus(lhs), minus(KClass::line(g.m, rho))) < 1e-10);
                }
                for (int j = 0; j < g.m; ++j) {
                    const KClass lhs = KClass::S(g, j) * KClass::t_power(g.r, g.m, d, -wc.De(j));
                    CHECK(rel(plus(lhs), minus(KClass::S(g, j))) < 1e-10);
                }
                // The coefficient written as a K-class expression.
                auto ch = [&](const KClass& k) { return plus(k); };
                const KClass one = KClass::one(g.r, g.m);
                const cplx tinv = ch(KClass::t_power(g.r, g.m, d, -1));
                cplx value = (1.0 - ch(KClass::S(g, pr.j_minus))) / (double(pr.l) * (1.0 - tinv));
                for (int j = 0; j < g.m; ++j) {
                    if (std::binary_search(pr.minus.delta.begin(), pr.minus.delta.end(), j) || wc.De(j) >= 0) continue;
                    value *= (1.0 - ch(KClass::S(g, j))) /
                             (1.0 - ch(KClass::S(g, j) * KClass::t_power(g.r, g.m, d, -wc.De(j))));
                }
                const cplx C = continuation_coefficient(wc, pr.plus.delta, pr.plus.f.f, pr.minus.delta, fm, lam);
                CHECK(rel(value, C) < 1e-10);
            }
        }
}

TEST_CASE("localized Euler characteristic on compact examples") {
    std::mt19937_64 rng(17);
    for (const auto& D : {std::vector<IntVec>{{1}, {1}}, std::vector<IntVec>{{2}, {2}}}) {
        const auto g = make_git(D);
        const auto A = validate_stability(g, {q(1)});
        for (int s = 0; s < 10; ++s) {
            const auto lam = sample_lambda(rng, 2);
            CHECK(std::abs(euler_pairing(g, A, KClass::one(1, 2), KClass::one(1, 2), lam) - 1.0) < 1e-12);
        }
    }
    // chi(P^1, O(n)) is the character sum_{k=0}^{n} e^{-(n-k) lambda_1 - k lambda_2}.
    const auto g = make_git({{1}, {1}});
    const auto A = validate_stability(g, {q(1)});
    const auto lam = sample_lambda(rng, 2);
    for (long long n = 0; n < 4; ++n) {
        cplx expect = 0.0;
        for (long long k = 0; k <= n; ++k) expect += std::exp(-double(n - k) * lam[0] - double(k) * lam[1]);
        CHECK(rel(euler_characteristic(g, A, KClass::line(2, {n}), lam), expect) < 1e-12);
    }
    const cplx z = sample_z(rng);
    std::vector<cplx> scaled;
    for (auto x : lam) scaled.push_back(kTwoPiI * x / z);
    const KClass E = KClass::line(2, {2}) - KClass::S(g, 0);
    CHECK(std::abs(euler_pairing(g, A, E, E, lam, z) - euler_pairing(g, A, E, E, scaled)) < 1e-12);
    CHECK_THROWS_AS(euler_characteristic(g, A, E, {0.0, 0.0}), ResonantSample);
}

TEST_CASE("UH-FM identity and its sensitivity") {
    std::mt19937_64 rng(7);
    for (const auto& base : {conifold(), a1(), gerbe()})
        for (const auto& wc : {base, swap_sides(base)}) {
            std::vector<std::vector<cplx>> samples;
            for (int s = 0; s < 5; ++s) samples.push_back(sample_lambda(rng, wc.git.m));
            const auto rep = verify_uhfm(wc, samples);
            INFO(rep.worst);
            CHECK(rep.max_residual < 1e-9);
            CHECK(rep.evaluations > 0);
            const auto n = next_to_pairs(wc).size();
            for (std::size_t i = 0; i < n; ++i) {
                const auto bad = verify_uhfm(wc, samples, [i](std::size_t k, cplx c) { return k == i ? c * (1.0 + 1e-3) : c; });
                CHECK(bad.max_residual > 1e-4);
            }
        }
}

TEST_CASE("Fourier-Mukai preserves the pairing") {
    std::mt19937_64 rng(19);
    for (const auto& base : {conifold(), a1()})
        for (const auto& wc : {base, swap_sides(base)}) {
            std::vector<std::pair<std::vector<cplx>, cplx>> samples;
            for (int s = 0; s < 4; ++s) samples.push_back({sample_lambda(rng, wc.git.m), sample_z(rng)});
            const auto rep = verify_pairing_preserved(wc, samples);
            INFO(rep.worst);
            CHECK(rep.max_residual < 1e-8);
        }
}

TEST_CASE("Gamma and framing restrictions") {
    const auto g = make_git({{1}, {1}, {-2}});
    const FixedPointLabel smooth{{0}, make_sector(g, {q(0)})};
    const cplx z{1.3, 0.4};
    const std::vector<cplx> zero(3, 0.0);
    CHECK(std::abs(gamma_restrict(g, smooth, zero, 1.0) - 1.0) < 1e-14);
    const auto fr = framing_restrict(KClass::one(1, 3), g, smooth, zero, std::log(z));
    CHECK(std::abs(fr.value - z) < 1e-13);  // dim X = 2
    CHECK(fr.z_power == q(1));

    std::mt19937_64 rng(4);
    const auto lam = sample_lambda(rng, 3);
    const FixedPointLabel half{{2}, make_sector(g, {q(1, 2)})};
    const auto u = restrict_u(g, {2});
    const cplx expect = gamma(0.5 + u[0].eval(lam) / z) * gamma(0.5 + u[1].eval(lam) / z);
    CHECK(std::abs(gamma_restrict(g, half, lam, z) - expect) < 1e-13);

    // Product of the Gamma class and its dual against the sine closed form.
    for (const auto& p : {smooth, half}) {
        const auto uu = restrict_u(g, p.delta);
        cplx prod = 1.0, closed = 1.0;
        const auto inv = FixedPointLabel{p.delta, inv_sector(g, p.f)};
        std::vector<cplx> neg;
        for (auto x : lam) neg.push_back(-x);
        prod = gamma_restrict(g, p, lam, z) * gamma_restrict(g, inv, neg, z);
        for (int j = 0; j < 3; ++j) {
            const double a = to_double(frac(g.pair(j, p.f.f)));
            const cplx x = uu[j].eval(lam) / z;
            if (std::binary_search(p.delta.begin(), p.delta.end(), j)) continue;
            if (a == 0.0)
                closed *= kTwoPiI * x * std::exp(-kPi * cplx(0, 1) * x) / (1.0 - std::exp(-kTwoPiI * x));
            else
                closed *= kPi / std::sin(kPi * (a + x));
        }
        CHECK(rel(prod, closed) < 1e-12);
    }

    // (lambda, z) -> (s lambda, s z) with the log of s added to log z.
    const double s = 1.9;
    std::vector<cplx> scaled;
    for (auto x : lam) scaled.push_back(s * x);
    const KClass E = KClass::line(3, {1}) - KClass::S(g, 2);
    for (const auto& p : {smooth, half}) {
        const auto a = framing_restrict(E, g, p, lam, std::log(z));
        const auto b = framing_restrict(E, g, p, scaled, std::log(z) + std::log(s));
        const auto u2 = restrict_u(g, p.delta);
        cplx rho = 0.0;
        for (int j = 0; j < 3; ++j) rho += u2[j].eval(lam);
        const cplx factor = std::pow(s, to_double(a.z_power)) * std::exp(std::log(s) * rho / z);
        CHECK(rel(b.value, a.value * factor) < 1e-12);
    }
}

TEST_CASE("framings pair to the modified Euler pairing") {
    std::mt19937_64 rng(23);
    for (const auto& wc : {conifold(), a1(), swap_sides(a1())}) {
        const auto& g = wc.git;
        const auto& A = wc.A_minus;
        const int dim = g.m - g.r;
        const auto basis = k_basis(g, A);
        for (int s = 0; s < 3; ++s) {
            const auto lam = sample_lambda(rng, g.m);
            const cplx z = sample_z(rng);
            const cplx log_z = std::log(z);
            for (const auto& ea : basis)
                for (const auto& eb : basis) {
                    const KClass E = basis_e(g, ea.delta, ea.rho_hat), F = basis_e(g, eb.delta, eb.rho_hat);
                    cplx sum = 0.0;
                    for (const auto& p : fixed_points(g, A)) {
                        const FixedPointLabel ip{p.delta, inv_sector(g, p.f)};
                        const auto u = restrict_u(g, p.delta);
                        cplx euler = 1.0;
                        for (int j = 0; j < g.m; ++j)
                            if (!std::binary_search(p.delta.begin(), p.delta.end(), j) && is_integer(g.pair(j, p.f.f)))
                                euler *= u[j].eval(lam);
                        std::vector<RatVec> rows;
                        for (int i : p.delta) rows.push_back(to_rat(g.D[i]));
                        const double order = std::abs(to_double(determinant(rows)));
                        const cplx a = framing_restrict(E, g, p, lam, log_z - kPi * cplx(0, 1)).value;
                        const cplx b = framing_restrict(F, g, ip, lam, log_z).value;
                        sum += a * b / (euler * order);
                    }
                    sum /= std::pow(2.0 * kPi, double(dim));
                    CHECK(rel(sum, euler_pairing(g, A, E, F, lam, z)) < 1e-9);
                }
        }
    }
}
