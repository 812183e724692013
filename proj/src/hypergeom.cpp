#include "wallcross/hypergeom.hpp"

#include "wallcross/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wallcross {

namespace {

constexpr double kPoleTol = 1e-10;

Rat int_power(const Rat& base, long long n) {
    Rat out = 1;
    const long long a = n < 0 ? -n : n;
    for (long long i = 0; i < a; ++i) out *= base;
    return n < 0 ? Rat(1) / out : out;
}

cplx to_c(const Rat& q) { return {to_double(q), 0.0}; }

// All n in [0, bound]^r, ordered by total degree then lexicographically.
std::vector<std::vector<long long>> degree_box(int r, int bound) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> n(r, 0);
    while (true) {
        out.push_back(n);
        int i = r - 1;
        while (i >= 0 && n[i] == bound) n[i--] = 0;
        if (i < 0) break;
        ++n[i];
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        long long sa = 0, sb = 0;
        for (auto x : a) sa += x;
        for (auto x : b) sb += x;
        return sa < sb;
    });
    return out;
}

std::vector<RatVec> delta_columns(const GITData& git, const Anticone& delta) {
    std::vector<RatVec> cols(git.r, RatVec(git.r));
    for (int a = 0; a < git.r; ++a)
        for (int k = 0; k < git.r; ++k) cols[k][a] = Rat(git.D[delta[a]][k]);
    return cols;
}

Rat a0_of(const Rat& x) { return is_integer(x) ? Rat(0) : frac(x) - 1; }

// log of prod_j Gamma(num_j) / Gamma(den_j) with exact handling of the
// integer factors on delta; returns false when the product vanishes.
bool log_ratio(const InnerSeriesSpec& s, long long k, const std::vector<cplx>& beta, bool with_numerator,
               cplx& out) {
    out = 0;
    for (std::size_t j = 0; j < s.d.size(); ++j) {
        const Rat shift = s.d[j] + Rat(k * s.e[j]);
        if (s.u[j].is_zero()) {
            if (!is_integer(shift)) throw PreconditionFailed("non-integral degree on the fixed-point anticone");
            const double n = to_double(shift);
            if (n < 0) return false;
            out -= std::lgamma(n + 1.0);
            continue;
        }
        if (with_numerator) {
            const cplx z1 = 1.0 + beta[j] + to_c(s.a0[j]);
            if (pole_distance(z1) < kPoleTol) throw PoleCollision("Gamma(" + std::to_string(z1.real()) + ") at a pole");
            out += lgamma(z1);
        }
        const cplx w = 1.0 + beta[j] + to_c(frac(shift));
        const long long n = floor_rat(shift).convert_to<long long>();
        if (pole_distance(w + double(n)) == 0.0) return false;
        out -= lgamma_shifted(w, n);
    }
    return true;
}

}  // namespace

Rat conifold_point(const WallCrossing& wc) {
    Rat c = 1;
    for (int j = 0; j < wc.git.m; ++j) {
        const long long p = wc.De(j);
        if (p != 0) c *= int_power(Rat(p), p);
    }
    return c;
}

long long w_constant(const std::vector<long long>& De) {
    long long neg = 0, pos = 0;
    for (long long x : De) (x < 0 ? neg : pos) += x;
    const long long w1 = -1 - neg;
    const long long w2 = -1 + pos;
    if (w1 != w2)
        throw CrepancyViolation("w is " + std::to_string(w1) + " from negative pairings but " + std::to_string(w2) +
                                " from positive ones");
    return w1;
}

long long w_constant(const WallCrossing& wc) {
    std::vector<long long> De;
    for (int j = 0; j < wc.git.m; ++j) De.push_back(wc.De(j));
    return w_constant(De);
}

std::vector<cplx> InnerSeriesSpec::beta(const std::vector<cplx>& lambda) const {
    std::vector<cplx> out;
    for (const auto& f : u) out.push_back(f.eval(lambda) / kTwoPiI);
    return out;
}

InnerSeriesSpec make_inner_spec(const WallCrossing& wc, const FixedPointLabel& label, const RatVec& d_plus) {
    InnerSeriesSpec s;
    s.label = label;
    s.d_plus = d_plus;
    s.u = restrict_u(wc.git, label.delta);
    for (int j = 0; j < wc.git.m; ++j) {
        s.d.push_back(wc.git.pair(j, d_plus));
        s.e.push_back(wc.De(j));
        s.a0.push_back(a0_of(s.d.back()));
    }
    return s;
}

cplx inner_sum_coefficient(const InnerSeriesSpec& spec, long long k, const std::vector<cplx>& lambda) {
    cplx lr;
    if (!log_ratio(spec, k, spec.beta(lambda), true, lr)) return 0.0;
    return std::exp(lr);
}

cplx raw_coefficient(const InnerSeriesSpec& spec, long long k, const std::vector<cplx>& lambda) {
    cplx lr;
    if (!log_ratio(spec, k, spec.beta(lambda), false, lr)) return 0.0;
    return std::exp(lr);
}

cplx normalization(const InnerSeriesSpec& spec, const std::vector<cplx>& lambda) {
    const auto beta = spec.beta(lambda);
    cplx out = 1.0;
    for (std::size_t j = 0; j < spec.d.size(); ++j)
        if (!spec.u[j].is_zero()) out *= gamma(1.0 + beta[j] + to_c(spec.a0[j]));
    return out;
}

cplx TruncatedSeries::operator()(cplx x) const {
    cplx acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<RatVec> starting_degrees(const WallCrossing& wc, const FixedPointLabel& label, int bound) {
    const auto& git = wc.git;
    const auto cols = delta_columns(git, label.delta);
    std::vector<RatVec> out;
    for (const auto& n : degree_box(git.r, bound)) {
        bool exits = false;
        for (int a = 0; a < git.r; ++a)
            if (wc.De(label.delta[a]) > n[a]) exits = true;
        if (!exits) continue;
        RatVec rhs;
        for (long long x : n) rhs.push_back(Rat(x));
        auto d = solve_columns(cols, rhs);
        if (!d) throw SingularBasis("anticone is not a basis");
        if (is_integral(sub(*d, label.f.f))) out.push_back(*d);
    }
    return out;
}

std::vector<SeriesBlock> h_restriction_series(const WallCrossing& wc, const FixedPointLabel& label, int K, int bound,
                                              const std::vector<cplx>& lambda) {
    std::vector<SeriesBlock> out;
    for (const auto& d : starting_degrees(wc, label, bound)) {
        SeriesBlock b;
        b.spec = make_inner_spec(wc, label, d);
        b.series.variable = "y^e";
        for (int k = 0; k <= K; ++k) b.series.coefficients.push_back(inner_sum_coefficient(b.spec, k, lambda));
        out.push_back(std::move(b));
    }
    return out;
}

double gkz_ode_residual(const TruncatedSeries& series, const InnerSeriesSpec& spec, const std::vector<cplx>& lambda) {
    const auto beta = spec.beta(lambda);
    long long emax = 0;
    for (long long x : spec.e) emax = std::max(emax, x);
    double worst = 0.0;
    const auto& phi = series.coefficients;
    for (long long k = 1; k <= series.order() - emax; ++k) {
        cplx A = 1.0, B = 1.0;
        for (std::size_t j = 0; j < spec.e.size(); ++j) {
            const long long ej = spec.e[j];
            const cplx base = to_c(spec.d[j]) + beta[j];
            if (ej > 0)
                for (long long l = 0; l < ej; ++l) A *= double(ej * k - l) + base;
            else if (ej < 0)
                for (long long l = 0; l < -ej; ++l) B *= double(ej * (k - 1) - l) + base;
        }
        const cplx lhs = A * phi[k], rhs = B * phi[k - 1];
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

cplx i_function_coefficient(const GITData& git, const FixedPointLabel& label, const RatVec& d, cplx z,
                            const std::vector<cplx>& lambda) {
    if (z == 0.0) throw PreconditionFailed("z must be nonzero");
    const auto u = restrict_u(git, label.delta);
    cplx log_val = 0.0;
    Rat zpow = 0;
    for (int j = 0; j < git.m; ++j) {
        const Rat dj = git.pair(j, d);
        const Rat a0 = a0_of(dj);
        zpow += a0 - dj;
        if (u[j].is_zero()) {
            if (!is_integer(dj)) return 0.0;
            if (dj < 0) return 0.0;
            log_val -= std::lgamma(to_double(dj) + 1.0);
            continue;
        }
        const cplx b = u[j].eval(lambda) / z;
        const cplx z1 = 1.0 + b + to_c(a0);
        if (pole_distance(z1) < kPoleTol) throw PoleCollision("I-function factor at a Gamma pole");
        const cplx w = 1.0 + b + to_c(frac(dj));
        const long long n = floor_rat(dj).convert_to<long long>();
        if (pole_distance(w + double(n)) == 0.0) return 0.0;
        log_val += lgamma(z1) - lgamma_shifted(w, n);
    }
    return std::exp(log_val + to_double(zpow) * std::log(z));
}

std::vector<LeadingTerm> i_function_leading(const WallCrossing& wc, int side, cplx z, const std::vector<cplx>& lambda) {
    const auto& git = wc.git;
    std::vector<LeadingTerm> out;
    for (const auto& p : fixed_points(git, wc.anticones(side), side)) {
        const auto cols = delta_columns(git, p.delta);
        const Rat det = determinant(cols);
        const int bound = static_cast<int>(to_double(det < 0 ? -det : det));
        for (const auto& n : degree_box(git.r, bound)) {
            RatVec rhs;
            for (long long x : n) rhs.push_back(Rat(x));
            RatVec d = *solve_columns(cols, rhs);
            // The d-summand sits on the sector [-d].
            if (!is_integral(add(d, p.f.f))) continue;
            out.push_back({p, d, i_function_coefficient(git, p, d, z, lambda)});
            break;
        }
    }
    return out;
}

}  // namespace wallcross
