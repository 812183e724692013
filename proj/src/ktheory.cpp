#include "wallcross/ktheory.hpp"

#include "wallcross/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wallcross {

namespace {

constexpr double kResonance = 1e-8;

void add_term(std::map<Monomial, long long>& terms, const Monomial& mono, long long c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(mono, c);
    if (!fresh && (it->second += c) == 0) terms.erase(it);
}

std::optional<RootDatum> merge_root(const std::optional<RootDatum>& a, const std::optional<RootDatum>& b) {
    if (a && b && !(*a == *b)) throw PreconditionFailed("classes with different root generators");
    return a ? a : b;
}

cplx phase(const Rat& q) { return std::polar(1.0, 2.0 * kPi * to_double(frac(q))); }

IntVec ivec_add(const IntVec& a, const IntVec& b) {
    IntVec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

std::vector<cplx> rescaled(const std::vector<cplx>& lambda, std::optional<cplx> z) {
    if (!z) return lambda;
    std::vector<cplx> out;
    for (auto x : lambda) out.push_back(kTwoPiI * x / *z);
    return out;
}

long long group_order(const GITData& git, const Anticone& delta) {
    std::vector<RatVec> rows;
    for (int i : delta) rows.push_back(to_rat(git.D[i]));
    const Rat d = determinant(rows);
    return static_cast<long long>(std::llround(std::abs(to_double(d))));
}

}  // namespace

KClass KClass::one(int r, int m) {
    KClass k(r, m);
    k.terms[{IntVec(r, 0), IntVec(m, 0), 0}] = 1;
    return k;
}

KClass KClass::line(int m, const IntVec& p) {
    KClass k(static_cast<int>(p.size()), m);
    k.terms[{p, IntVec(m, 0), 0}] = 1;
    return k;
}

KClass KClass::S(const GITData& git, int j) {
    KClass k(git.r, git.m);
    IntVec p(git.r), n(git.m, 0);
    for (int a = 0; a < git.r; ++a) p[a] = -git.D[j][a];
    n[j] = -1;
    k.terms[{p, n, 0}] = 1;
    return k;
}

KClass KClass::R(const GITData& git, int j) {
    KClass k(git.r, git.m);
    IntVec n(git.m, 0);
    n[j] = 1;
    k.terms[{git.D[j], n, 0}] = 1;
    return k;
}

KClass KClass::character(int r, const IntVec& n) {
    KClass k(r, static_cast<int>(n.size()));
    k.terms[{IntVec(r, 0), n, 0}] = 1;
    return k;
}

KClass KClass::t_power(int r, int m, const RootDatum& d, long long e) {
    KClass k(r, m);
    k.root = d;
    k.terms[{IntVec(r, 0), IntVec(m, 0), e}] = 1;
    return k;
}

KClass KClass::operator+(const KClass& o) const {
    KClass out = *this;
    out.root = merge_root(root, o.root);
    for (const auto& [mono, c] : o.terms) add_term(out.terms, mono, c);
    return out;
}

KClass KClass::operator-(const KClass& o) const { return *this + o * -1; }

KClass KClass::operator*(const KClass& o) const {
    KClass out(r, m);
    out.root = merge_root(root, o.root);
    for (const auto& [a, ca] : terms)
        for (const auto& [b, cb] : o.terms) add_term(out.terms, {ivec_add(a.p, b.p), ivec_add(a.n, b.n), a.t + b.t}, ca * cb);
    return out;
}

KClass KClass::operator*(long long s) const {
    KClass out(r, m);
    out.root = root;
    for (const auto& [mono, c] : terms) add_term(out.terms, mono, c * s);
    return out;
}

std::string KClass::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : terms) {
        std::vector<std::string> f;
        if (std::any_of(mono.p.begin(), mono.p.end(), [](long long x) { return x != 0; }))
            f.push_back("L" + to_string(to_rat(mono.p)));
        std::string ch;
        for (int i = 0; i < m; ++i) {
            const long long x = mono.n[i];
            if (x == 0) continue;
            if (!ch.empty() && x > 0) ch += "+";
            if (x == -1) ch += "-";
            else if (x != 1) ch += std::to_string(x);
            ch += "λ" + std::to_string(i + 1);
        }
        if (!ch.empty()) f.push_back("e^{" + ch + "}");
        if (mono.t != 0) f.push_back("t^" + std::to_string(mono.t));
        std::string body;
        for (std::size_t i = 0; i < f.size(); ++i) body += (i ? "*" : "") + f[i];
        const long long a = std::llabs(c);
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        if (body.empty()) os << a;
        else if (a == 1) os << body;
        else os << a << "*" << body;
        first = false;
    }
    return os.str();
}

KClass dual(const KClass& k) {
    KClass out(k.r, k.m);
    out.root = k.root;
    for (const auto& [mono, c] : k.terms) {
        Monomial d = mono;
        for (auto& x : d.p) x = -x;
        for (auto& x : d.n) x = -x;
        d.t = -d.t;
        add_term(out.terms, d, c);
    }
    return out;
}

std::vector<IntVec> isotropy_characters(const GITData& git, const Anticone& delta) {
    std::vector<RatVec> cols;
    IntVec bound(git.r, 0);
    for (int i : delta) {
        cols.push_back(to_rat(git.D[i]));
        for (int k = 0; k < git.r; ++k) bound[k] += std::llabs(git.D[i][k]);
    }
    std::vector<IntVec> out;
    IntVec p(git.r);
    for (int k = 0; k < git.r; ++k) p[k] = -bound[k];
    while (true) {
        auto c = solve_columns(cols, to_rat(p));
        if (!c) throw SingularBasis("anticone " + to_string(delta) + " is not a basis");
        if (std::all_of(c->begin(), c->end(), [](const Rat& x) { return x >= 0 && x < 1; })) out.push_back(p);
        int k = git.r - 1;
        while (k >= 0 && p[k] == bound[k]) {
            p[k] = -bound[k];
            --k;
        }
        if (k < 0) break;
        ++p[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

KClass basis_e(const GITData& git, const Anticone& delta, const IntVec& rho_hat) {
    KClass out = KClass::line(git.m, rho_hat);
    const KClass one = KClass::one(git.r, git.m);
    for (int i = 0; i < git.m; ++i)
        if (!std::binary_search(delta.begin(), delta.end(), i)) out = out * (one - KClass::S(git, i));
    return out;
}

std::optional<long long> roots_projector(long long l, long long n) {
    if (l < 1) throw PreconditionFailed("root order must be positive");
    if (n % l != 0) return std::nullopt;
    return n / l;
}

KClass average_roots(const GITData& git, const KClass& k) {
    if (!k.root) return k;
    const RootDatum d = *k.root;
    KClass out(k.r, k.m);
    for (const auto& [mono, c] : k.terms) {
        const auto q = roots_projector(d.l, mono.t);
        if (!q) continue;
        Monomial a = mono;
        a.t = 0;
        for (int x = 0; x < git.r; ++x) a.p[x] += *q * git.D[d.j_minus][x];
        a.n[d.j_minus] += *q;
        add_term(out.terms, a, c);
    }
    for (const auto& [mono, c] : out.terms)
        if (mono.t != 0) throw NonLaurent("t-power " + std::to_string(mono.t) + " survives averaging");
    return out;
}

KClass divide_one_minus_tinv(const KClass& k) {
    // With u = t^{-1}: (1 - u) q = N gives q_j = sum_{i <= j} N_i in increasing powers of u.
    std::map<long long, KClass> byu;
    for (const auto& [mono, c] : k.terms) {
        Monomial base = mono;
        base.t = 0;
        auto [it, fresh] = byu.try_emplace(-mono.t, KClass(k.r, k.m));
        add_term(it->second.terms, base, c);
    }
    KClass out(k.r, k.m);
    out.root = k.root;
    if (byu.empty()) return out;
    KClass acc(k.r, k.m);
    const long long lo = byu.begin()->first, hi = byu.rbegin()->first;
    for (long long u = lo; u <= hi; ++u) {
        auto it = byu.find(u);
        if (it != byu.end()) acc = acc + it->second;
        if (u == hi) break;
        for (const auto& [mono, c] : acc.terms) {
            Monomial a = mono;
            a.t = -u;
            add_term(out.terms, a, c);
        }
    }
    if (!acc.is_zero()) throw NonLaurent("numerator is not divisible by 1 - t^{-1}");
    return out;
}

KClass fm_summand(const WallCrossing& wc, const Anticone& dm, const IntVec& rho_hat) {
    const auto& git = wc.git;
    int jm = -1;
    for (int j : dm)
        if (wc.De(j) < 0) {
            if (jm >= 0) throw PreconditionFailed("several indices of the anticone pair negatively with e");
            jm = j;
        }
    if (jm < 0) throw PreconditionFailed("no index of the anticone pairs negatively with e");
    const RootDatum d{jm, -wc.De(jm)};
    auto T = [&](long long k) { return KClass::t_power(git.r, git.m, d, k); };
    const KClass one = KClass::one(git.r, git.m);
    // (1 - S_{j-}) with S_{j-} = t^{-l}, divided exactly by (1 - t^{-1}).
    KClass out = divide_one_minus_tinv(T(0) - T(-d.l));
    out = out * KClass::line(git.m, rho_hat) * T(dot(rho_hat, wc.e));
    for (int i = 0; i < git.m; ++i) {
        if (std::binary_search(dm.begin(), dm.end(), i)) continue;
        if (wc.De(i) < 0)
            out = out * (one - KClass::S(git, i));
        else
            out = out * (T(0) - T(-wc.De(i)) * KClass::S(git, i));
    }
    return out;
}

KClass fm_transform(const WallCrossing& wc, const Anticone& dm, const IntVec& rho_hat) {
    if (wc.A_plus.contains(dm)) return basis_e(wc.git, dm, rho_hat);
    return average_roots(wc.git, fm_summand(wc, dm, rho_hat));
}

cplx chern_restrict(const KClass& k, const GITData& git, const Anticone& delta, const RatVec& f,
                    const std::vector<cplx>& lambda, cplx zeta) {
    const auto u = restrict_u(git, delta);
    cplx tval = 1.0;
    if (k.root) {
        const int j = k.root->j_minus;
        const double l = double(k.root->l);
        tval = zeta * std::exp(kTwoPiI * to_double(git.pair(j, f)) / l + u[j].eval(lambda) / l);
    }
    cplx sum = 0.0;
    for (const auto& [mono, c] : k.terms) {
        const RatVec p = to_rat(mono.p);
        cplx ex = theta_restrict(git, delta, p).eval(lambda);
        for (int i = 0; i < git.m; ++i) ex += double(mono.n[i]) * lambda[i];
        cplx term = double(c) * phase(dot(p, f)) * std::exp(ex);
        if (mono.t != 0) term *= std::pow(tval, double(mono.t));
        sum += term;
    }
    return sum;
}

cplx chern_restrict(const KClass& k, const GITData& git, const FixedPointLabel& label, const std::vector<cplx>& lambda,
                    cplx zeta) {
    return chern_restrict(k, git, label.delta, label.f.f, lambda, zeta);
}

cplx gamma_restrict(const GITData& git, const FixedPointLabel& label, const std::vector<cplx>& lambda, cplx z) {
    const auto u = restrict_u(git, label.delta);
    cplx out = 1.0;
    for (int j = 0; j < git.m; ++j) {
        const cplx a = 1.0 - to_double(frac(git.pair(j, label.f.f))) + u[j].eval(lambda) / z;
        if (pole_distance(a) < 1e-10) throw PoleCollision("Gamma factor " + std::to_string(j + 1) + " at a pole");
        out *= gamma(a);
    }
    return out;
}

FramingValue framing_restrict(const KClass& E, const GITData& git, const FixedPointLabel& label,
                              const std::vector<cplx>& lambda, cplx log_z) {
    const cplx z = std::exp(log_z);
    if (std::abs(z) == 0.0) throw PreconditionFailed("z must be nonzero");
    FramingValue out;
    out.label = label;
    out.log_z = log_z;
    out.z_power = Rat(git.m - git.r, 2) - label.f.age;
    const auto u = restrict_u(git, label.delta);
    cplx rho = 0.0;
    for (int j = 0; j < git.m; ++j) rho += u[j].eval(lambda);
    const SectorLabel inv = inv_sector(git, label.f);
    const cplx ch = chern_restrict(E, git, label.delta, inv.f, rescaled(lambda, z));
    out.value = std::exp(to_double(out.z_power) * log_z + log_z * rho / z) * gamma_restrict(git, label, lambda, z) * ch;
    return out;
}

cplx euler_characteristic(const GITData& git, const AnticoneSet& A, const KClass& V, const std::vector<cplx>& lambda,
                          std::optional<cplx> z) {
    const auto lam = rescaled(lambda, z);
    const KClass one = KClass::one(git.r, git.m);
    cplx sum = 0.0;
    for (const auto& p : fixed_points(git, A)) {
        cplx term = chern_restrict(V, git, p, lam);
        for (int j = 0; j < git.m; ++j) {
            if (std::binary_search(p.delta.begin(), p.delta.end(), j)) continue;
            const cplx den = 1.0 - chern_restrict(KClass::S(git, j), git, p, lam);
            if (std::abs(den) < kResonance)
                throw ResonantSample("1 - S_" + std::to_string(j + 1) + " vanishes at " + to_string(p));
            term /= den;
        }
        sum += term / double(group_order(git, p.delta));
    }
    return sum;
}

cplx euler_pairing(const GITData& git, const AnticoneSet& A, const KClass& E, const KClass& F,
                   const std::vector<cplx>& lambda, std::optional<cplx> z) {
    return euler_characteristic(git, A, dual(E) * F, lambda, z);
}

std::vector<BasisElement> k_basis(const GITData& git, const AnticoneSet& A) {
    std::vector<BasisElement> out;
    for (const auto& d : minimal_anticones(git, A))
        for (const auto& rho : isotropy_characters(git, d)) out.push_back({d, rho});
    return out;
}

namespace {

std::string describe(const BasisElement& b) { return "e(" + to_string(b.delta) + "," + to_string(to_rat(b.rho_hat)) + ")"; }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

ResidualReport verify_uhfm(const WallCrossing& wc, const std::vector<std::vector<cplx>>& samples,
                           const CoefficientHook& hook) {
    const auto& git = wc.git;
    const auto pairs = next_to_pairs(wc);
    const auto basis = k_basis(git, wc.A_minus);
    const auto points = fixed_points(git, wc.A_plus, 1);
    std::vector<KClass> e, fm;
    for (const auto& b : basis) {
        e.push_back(basis_e(git, b.delta, b.rho_hat));
        fm.push_back(fm_transform(wc, b.delta, b.rho_hat));
    }
    ResidualReport rep;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& lam = samples[s];
        std::vector<cplx> C;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& pr = pairs[i];
            cplx c = continuation_coefficient(wc, pr.plus.delta, pr.plus.f.f, pr.minus.delta, pr.f_minus_lift, lam);
            C.push_back(hook ? hook(i, c) : c);
        }
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (const auto& p : points) {
                const cplx lhs = chern_restrict(fm[b], git, p, lam);
                cplx rhs = 0.0;
                if (wc.A_minus.contains(p.delta)) {
                    rhs = chern_restrict(e[b], git, p, lam);
                } else {
                    for (std::size_t i = 0; i < pairs.size(); ++i)
                        if (pairs[i].plus == p)
                            rhs += C[i] * chern_restrict(e[b], git, pairs[i].minus.delta, pairs[i].f_minus_lift, lam);
                }
                const double r = rel(lhs, rhs);
                ++rep.evaluations;
                if (!(r <= rep.max_residual)) {
                    rep.max_residual = std::isnan(r) ? INFINITY : r;
                    rep.worst = describe(basis[b]) + " at " + to_string(p) + ", sample " + std::to_string(s);
                }
            }
    }
    return rep;
}

ResidualReport verify_pairing_preserved(const WallCrossing& wc,
                                        const std::vector<std::pair<std::vector<cplx>, cplx>>& samples) {
    const auto& git = wc.git;
    const auto basis = k_basis(git, wc.A_minus);
    std::vector<KClass> e, fm;
    for (const auto& b : basis) {
        e.push_back(basis_e(git, b.delta, b.rho_hat));
        fm.push_back(fm_transform(wc, b.delta, b.rho_hat));
    }
    ResidualReport rep;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& [lam, z] = samples[s];
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const cplx minus = euler_pairing(git, wc.A_minus, e[a], e[b], lam, z);
                const cplx plus = euler_pairing(git, wc.A_plus, fm[a], fm[b], lam, z);
                const double r = rel(plus, minus);
                ++rep.evaluations;
                if (!(r <= rep.max_residual)) {
                    rep.max_residual = std::isnan(r) ? INFINITY : r;
                    rep.worst = describe(basis[a]) + " x " + describe(basis[b]) + ", sample " + std::to_string(s);
                }
            }
    }
    return rep;
}

}  // namespace wallcross
