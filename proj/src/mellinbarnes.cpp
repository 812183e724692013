#include "wallcross/mellinbarnes.hpp"

#include "wallcross/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace wallcross {

namespace {

constexpr double kCollision = 1e-10;

cplx sin_pi(cplx z) { return std::sin(kPi * z); }

std::optional<Rat> multiple_of(const RatVec& v, const IntVec& e) {
    std::optional<Rat> alpha;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (e[k] == 0) {
            if (v[k] != 0) return std::nullopt;
            continue;
        }
        const Rat a = v[k] / Rat(e[k]);
        if (alpha && *alpha != a) return std::nullopt;
        alpha = a;
    }
    return alpha ? alpha : std::optional<Rat>(Rat(0));
}

// Left poles s = (beta_j + d_j - n) / l_j of Gamma(-beta_j - d_j - s e_j).
struct LeftPole {
    int j;
    long long n;
    cplx s;
};

std::vector<LeftPole> left_poles_right_of(const InnerSeriesSpec& spec, const std::vector<cplx>& beta, double re_min) {
    std::vector<LeftPole> out;
    for (std::size_t j = 0; j < spec.e.size(); ++j) {
        if (spec.e[j] >= 0) continue;
        const double l = double(-spec.e[j]);
        for (long long n = 0;; ++n) {
            const cplx s = (beta[j] + to_double(spec.d[j]) - double(n)) / l;
            if (s.real() < re_min) break;
            out.push_back({int(j), n, s});
        }
    }
    return out;
}

struct Integrand {
    const InnerSeriesSpec& spec;
    std::vector<cplx> beta;
    double log_y;

    cplx operator()(cplx s) const {
        const cplx sn = sin_pi(s);
        if (sn == 0.0) return std::numeric_limits<double>::infinity();
        cplx log_f = std::log(kPi) - std::log(sn) + s * log_y;
        for (std::size_t j = 0; j < spec.e.size(); ++j) {
            const double ej = double(spec.e[j]);
            const cplx a = beta[j] + to_double(spec.d[j]) + s * ej;
            if (spec.e[j] < 0) {
                log_f += lgamma(-a);
            } else {
                const cplx z = 1.0 + a;
                if (pole_distance(z) == 0.0) return 0.0;
                log_f -= lgamma(z);
            }
        }
        return std::exp(log_f);
    }
};

// prod_{e_j < 0} sin(pi(-beta_j - d_j)) / pi
cplx series_constant(const InnerSeriesSpec& spec, const std::vector<cplx>& beta) {
    cplx S = 1.0;
    for (std::size_t j = 0; j < spec.e.size(); ++j) {
        if (spec.e[j] >= 0) continue;
        if (spec.u[j].is_zero())
            throw PreconditionFailed("the fixed-point anticone contains an index with negative pairing against e");
        S *= sin_pi(-beta[j] - to_double(spec.d[j])) / kPi;
    }
    return S;
}

// Residue of the integrand at a left pole.
cplx left_residue(const Integrand& F, const LeftPole& p) {
    const auto& spec = F.spec;
    const double l = double(-spec.e[p.j]);
    const cplx sn = sin_pi(p.s);
    if (std::abs(sn) < kCollision) throw PoleCollision("left pole at an integer");
    cplx log_r = std::log(kPi) - std::log(sn) + p.s * F.log_y - std::lgamma(double(p.n) + 1.0) - std::log(l);
    for (std::size_t j = 0; j < spec.e.size(); ++j) {
        if (int(j) == p.j) continue;
        const cplx a = F.beta[j] + to_double(spec.d[j]) + p.s * double(spec.e[j]);
        if (spec.e[j] < 0) {
            if (pole_distance(-a) < kCollision) throw PoleCollision("two left poles coincide");
            log_r += lgamma(-a);
        } else {
            if (pole_distance(1.0 + a) == 0.0) return 0.0;
            log_r -= lgamma(1.0 + a);
        }
    }
    const cplx sign = (p.n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(log_r);
}

InnerSeriesSpec minus_spec(const WallCrossing& wc, const Anticone& dm, const RatVec& d_minus) {
    InnerSeriesSpec s;
    s.label.delta = dm;
    s.d_plus = d_minus;
    s.u = restrict_u(wc.git, dm);
    for (int j = 0; j < wc.git.m; ++j) {
        s.d.push_back(wc.git.pair(j, d_minus));
        s.e.push_back(-wc.De(j));
        s.a0.push_back(Rat(0));
    }
    return s;
}

}  // namespace

cplx continuation_coefficient(const WallCrossing& wc, const Anticone& dp, const RatVec& fp, const Anticone& dm,
                              const RatVec& fm, const std::vector<cplx>& lambda) {
    const auto& git = wc.git;
    if (!multiple_of(sub(fm, fp), wc.e))
        throw IncompatibleLifts("f_minus - f_plus = " + to_string(sub(fm, fp)) + " is not a multiple of e");
    int jm = -1;
    for (int j : dm)
        if (!std::binary_search(dp.begin(), dp.end(), j)) jm = j;
    if (jm < 0 || wc.De(jm) >= 0) throw NotAdjacentAnticones("no entering index with negative pairing against e");
    const auto up = restrict_u(git, dp), um = restrict_u(git, dm);
    const long long w = w_constant(wc);
    const double De = double(wc.De(jm)), l = -De;
    const cplx X = up[jm].eval(lambda) / kTwoPiI + to_double(git.pair(jm, sub(fp, fm)));
    const cplx den = l * sin_pi(X / l);
    if (std::abs(den) < kCollision) throw PoleCollision("sin(pi X / l) vanishes");
    cplx C = std::exp(kPi * cplx(0, 1) * double(w) * X / De) * sin_pi(X) / den;
    for (int j = 0; j < git.m; ++j) {
        if (j == jm || wc.De(j) >= 0) continue;
        const cplx num = sin_pi(up[j].eval(lambda) / kTwoPiI + to_double(git.pair(j, fp)));
        const cplx dd = sin_pi(um[j].eval(lambda) / kTwoPiI + to_double(git.pair(j, fm)));
        if (std::abs(dd) < kCollision) throw PoleCollision("vanishing sine on the minus side");
        C *= num / dd;
    }
    return C;
}

std::vector<ContinuationEntry> continuation_matrix(const WallCrossing& wc, const std::vector<cplx>& lambda) {
    std::vector<ContinuationEntry> out;
    for (const auto& p : fixed_points(wc.git, wc.A_plus, 1)) {
        if (!wc.A_minus.contains(p.delta)) continue;
        FixedPointLabel q = p;
        q.f.side = -1;
        out.push_back({p, q, 1.0});
    }
    for (const auto& pr : next_to_pairs(wc))
        out.push_back({pr.plus, pr.minus,
                       continuation_coefficient(wc, pr.plus.delta, pr.plus.f.f, pr.minus.delta, pr.f_minus_lift, lambda)});
    return out;
}

cplx ray_point(double abs_x, long long w) { return std::polar(abs_x, kPi * double(w)); }

MBResult mb_integral(const InnerSeriesSpec& spec, double abs_x, long long w, const std::vector<cplx>& lambda,
                     const ContourSpec& contour) {
    const auto beta = spec.beta(lambda);
    const cplx S = series_constant(spec, beta);
    const Integrand F{spec, beta, std::log(abs_x)};

    // Poles relevant for the line position: 0, -1 and the left poles nearby.
    std::vector<cplx> poles = {0.0, -1.0};
    for (const auto& p : left_poles_right_of(spec, beta, -2.0)) poles.push_back(p.s);
    MBResult res;
    res.clearance = -1;
    for (int i = 0; i < contour.scan_steps; ++i) {
        const double sig =
            contour.sigma_lo + (contour.sigma_hi - contour.sigma_lo) * double(i) / double(contour.scan_steps - 1);
        double c = std::numeric_limits<double>::infinity();
        for (auto p : poles) c = std::min(c, std::abs(p.real() - sig));
        if (c > res.clearance) {
            res.clearance = c;
            res.sigma0 = sig;
        }
    }
    if (res.clearance < contour.min_clearance)
        throw ContourTooClose("best line clearance " + std::to_string(res.clearance));

    const double sig = res.sigma0;
    auto part = [&](bool imag_part) {
        auto f = [&](double t) {
            const cplx v = F(cplx(sig, t));
            return imag_part ? v.imag() : v.real();
        };
        double err = 0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -contour.t_max, contour.t_max,
                                                                                       15, contour.tol, &err);
        res.error += err;
        return v;
    };
    const double tail = std::max(std::abs(F(cplx(sig, contour.t_max))), std::abs(F(cplx(sig, -contour.t_max))));
    if (!(tail < contour.tol)) throw NonConvergent("integrand at the truncation height is " + std::to_string(tail));
    cplx J = -cplx(part(false), part(true)) / (2.0 * kPi);
    if (!std::isfinite(J.real()) || !std::isfinite(J.imag())) throw NonConvergent("non-finite quadrature");

    // Left poles on the wrong side of the line: subtract counterclockwise circles.
    const auto wrong = left_poles_right_of(spec, beta, sig);
    for (const auto& p : wrong) {
        double gap = std::numeric_limits<double>::infinity();
        for (auto q : poles)
            if (std::abs(q - p.s) > 0) gap = std::min(gap, std::abs(q - p.s));
        for (long long k = 1; double(k) < p.s.real() + 2.0; ++k) gap = std::min(gap, std::abs(p.s - double(k)));
        if (gap < kCollision) throw PoleCollision("left pole collides with another pole");
        const double rad = 0.4 * gap;
        cplx circ = 0.0;
        const int N = contour.circle_points;
        for (int i = 0; i < N; ++i) {
            const cplx u = std::polar(1.0, 2.0 * kPi * double(i) / double(N));
            circ += F(p.s + rad * u) * rad * u;
        }
        // (1 / 2 pi i) oint F ds with ds = i rad u dtheta
        J -= circ / double(N);
    }
    res.corrections = static_cast<int>(wrong.size());
    // Normalize so that the right residue sum reads sum raw_k x^k.
    res.value = S * J;
    (void)w;
    return res;
}

cplx right_series(const InnerSeriesSpec& spec, double abs_x, long long w, const std::vector<cplx>& lambda) {
    const cplx x = ray_point(abs_x, w);
    cplx sum = 0.0, xk = 1.0;
    int small = 0;
    for (long long k = 0; k < 5000 && small < 8; ++k, xk *= x) {
        const cplx t = raw_coefficient(spec, k, lambda) * xk;
        sum += t;
        small = (std::abs(t) <= 1e-17 * std::abs(sum)) ? small + 1 : 0;
    }
    if (small < 8) throw NonConvergent("right series did not settle");
    return sum;
}

cplx left_residue_sum(const InnerSeriesSpec& spec, double abs_x, long long w, const std::vector<cplx>& lambda) {
    (void)w;
    const auto beta = spec.beta(lambda);
    const cplx S = series_constant(spec, beta);
    const Integrand F{spec, beta, std::log(abs_x)};
    cplx sum = 0.0;
    for (std::size_t j = 0; j < spec.e.size(); ++j) {
        if (spec.e[j] >= 0) continue;
        const double l = double(-spec.e[j]);
        int small = 0;
        long long n = 0;
        for (; n < 20000 && small < 8 * l; ++n) {
            const LeftPole p{int(j), n, (beta[j] + to_double(spec.d[j]) - double(n)) / l};
            const cplx t = left_residue(F, p);
            sum += t;
            small = (std::abs(t) <= 1e-17 * std::abs(sum)) ? small + 1 : 0;
        }
        if (small < 8 * l) throw NonConvergent("left residue sum did not settle");
    }
    return -S * sum;
}

cplx continued_series(const WallCrossing& wc, const InnerSeriesSpec& spec, double abs_x,
                      const std::vector<cplx>& lambda) {
    const auto& git = wc.git;
    const Anticone& dp = spec.label.delta;
    const long long w = w_constant(wc);
    const cplx log_x{std::log(abs_x), kPi * double(w)};
    const auto up = restrict_u(git, dp);
    cplx sum = 0.0;
    for (int jm = 0; jm < git.m; ++jm) {
        if (wc.De(jm) >= 0) continue;
        Anticone dm = {jm};
        for (int i : dp)
            if (wc.De(i) == 0) dm.push_back(i);
        std::sort(dm.begin(), dm.end());
        if (static_cast<int>(dm.size()) != git.r || !wc.A_minus.contains(dm))
            throw PreconditionFailed("no anticone on the minus side for entering index " + std::to_string(jm + 1));
        const long long l = -wc.De(jm);
        const cplx bj = up[jm].eval(lambda) / kTwoPiI;
        for (long long lp = 0; lp < l; ++lp) {
            const RatVec d_minus = add(spec.d_plus, scale((spec.d[jm] - Rat(lp)) / Rat(l), to_rat(wc.e)));
            const cplx C = continuation_coefficient(wc, dp, spec.d_plus, dm, d_minus, lambda);
            const auto ms = minus_spec(wc, dm, d_minus);
            const cplx X = bj + to_double(spec.d[jm]) - double(lp);
            int small = 0;
            long long k = 0;
            for (; k < 20000 && small < 8; ++k) {
                const cplx p = X / double(l) - double(k);
                const cplx t = C * std::exp(p * log_x) * raw_coefficient(ms, k, lambda);
                sum += t;
                small = (std::abs(t) <= 1e-17 * std::abs(sum)) ? small + 1 : 0;
            }
            if (small < 8) throw NonConvergent("continued series did not settle");
        }
    }
    return sum;
}

ResidueCheck verify_residue_identity(const WallCrossing& wc, const InnerSeriesSpec& spec,
                                     const std::vector<cplx>& lambda, double small, double large,
                                     const ContourSpec& contour) {
    const double c = std::abs(to_double(conifold_point(wc)));
    const long long w = w_constant(wc);
    auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    ResidueCheck out;
    out.small = mb_integral(spec, small * c, w, lambda, contour);
    out.right_error = rel(out.small.value, right_series(spec, small * c, w, lambda));
    out.large = mb_integral(spec, large * c, w, lambda, contour);
    const cplx cont = continued_series(wc, spec, large * c, lambda);
    out.left_error = rel(out.large.value, cont);
    out.residue_error = rel(left_residue_sum(spec, large * c, w, lambda), cont);
    return out;
}

double lift_invariance_check(const WallCrossing& wc, const NextToPair& pair, const IntVec& v,
                             const std::vector<cplx>& lambda) {
    const auto& dp = pair.plus.delta;
    const auto& dm = pair.minus.delta;
    const RatVec& fp = pair.plus.f.f;
    const RatVec& fm = pair.f_minus_lift;
    const cplx base = continuation_coefficient(wc, dp, fp, dm, fm, lambda);
    const RatVec vr = to_rat(v);
    const cplx shifted = continuation_coefficient(wc, dp, add(fp, vr), dm, add(fm, vr), lambda);
    const cplx stepped = continuation_coefficient(wc, dp, fp, dm, add(fm, to_rat(wc.e)), lambda);
    const double scale = std::max(std::abs(base), 1e-300);
    return std::max(std::abs(shifted - base), std::abs(stepped - base)) / scale;
}

}  // namespace wallcross
