#include "wallcross/gitfan.hpp"

#include "wallcross/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace wallcross {

std::vector<RatVec> GITData::Drat() const {
    std::vector<RatVec> out;
    out.reserve(D.size());
    for (const auto& d : D) out.push_back(to_rat(d));
    return out;
}

GITData make_git(std::vector<IntVec> D, std::vector<std::string> labels) {
    GITData g;
    g.m = static_cast<int>(D.size());
    if (g.m == 0) throw ConfigError("no characters given");
    g.r = static_cast<int>(D[0].size());
    if (g.r < 1) throw ConfigError("torus rank must be at least 1");
    if (g.m < g.r) throw ConfigError("need m >= r");
    if (g.m > 20) throw ConfigError("at most 20 characters are supported");
    for (std::size_t i = 0; i < D.size(); ++i)
        if (static_cast<int>(D[i].size()) != g.r)
            throw ConfigError("row " + std::to_string(i + 1) + " of D has length " + std::to_string(D[i].size()) +
                              ", expected " + std::to_string(g.r));
    g.D = std::move(D);
    if (static_cast<int>(rank(g.Drat())) != g.r) throw ConfigError("characters do not span a space of dimension r");
    if (labels.empty())
        for (int i = 0; i < g.m; ++i) labels.push_back("D" + std::to_string(i + 1));
    if (static_cast<int>(labels.size()) != g.m) throw ConfigError("label count differs from m");
    g.labels = std::move(labels);
    return g;
}

Mask to_mask(const IndexSet& s) {
    Mask m = 0;
    for (int i : s) m |= Mask(1) << i;
    return m;
}

IndexSet from_mask(Mask m, int n) {
    IndexSet s;
    for (int i = 0; i < n; ++i)
        if (m & (Mask(1) << i)) s.push_back(i);
    return s;
}

std::string to_string(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i] + 1);
    }
    return out + "}";
}

bool in_open_cone(const GITData& git, Mask I, const RatVec& omega) {
    IndexSet idx = from_mask(I, git.m);
    if (idx.empty()) return std::all_of(omega.begin(), omega.end(), [](const Rat& q) { return q == 0; });
    std::vector<RatVec> V;
    RatVec s(git.r, Rat(0));
    for (int i : idx) {
        V.push_back(to_rat(git.D[i]));
        s = add(s, V.back());
    }
    const std::size_t k = rank(V);
    {
        auto with = V;
        with.push_back(omega);
        if (rank(with) != k) return false;
    }
    // omega is a strictly positive combination iff omega - eps*s lies in the
    // cone for small eps > 0; test this on every basis drawn from V.
    const std::size_t n = V.size();
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        std::vector<RatVec> B;
        for (auto p : pick) B.push_back(V[p]);
        auto cx = solve_columns(B, omega);
        if (cx) {
            auto cs = solve_columns(B, s);
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i) {
                if ((*cx)[i] > 0) continue;
                if ((*cx)[i] == 0 && (*cs)[i] <= 0) continue;
                ok = false;
            }
            if (ok) return true;
        }
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return false;
}

AnticoneSet anticone_set(const GITData& git, const RatVec& omega) {
    if (static_cast<int>(omega.size()) != git.r) throw ConfigError("stability condition has wrong dimension");
    AnticoneSet A;
    A.omega = omega;
    A.m = git.m;
    const Mask total = Mask(1) << git.m;
    A.member.assign(total, 0);
    for (Mask s = 0; s < total; ++s) {
        if (in_open_cone(git, s, omega)) {
            A.member[s] = 1;
            A.masks.push_back(s);
        }
    }
    return A;
}

AnticoneSet validate_stability(const GITData& git, const RatVec& omega) {
    AnticoneSet A = anticone_set(git, omega);
    const Mask full = (Mask(1) << git.m) - 1;
    if (!A.contains(full))
        throw EmptyQuotient("the full index set is not an anticone for omega=" + to_string(omega));
    for (Mask s : A.masks) {
        std::vector<RatVec> V;
        for (int i : from_mask(s, git.m)) V.push_back(to_rat(git.D[i]));
        if (static_cast<int>(rank(V)) != git.r)
            throw NotDeligneMumford("spanning condition fails for anticone I=" + to_string(from_mask(s, git.m)));
    }
    return A;
}

std::vector<Anticone> minimal_anticones(const GITData& git, const AnticoneSet& A) {
    std::vector<Anticone> out;
    for (Mask s : A.masks)
        if (std::popcount(s) == git.r) out.push_back(from_mask(s, git.m));
    std::sort(out.begin(), out.end());
    return out;
}

IndexSet s_set(const AnticoneSet& A) {
    const Mask full = (Mask(1) << A.m) - 1;
    IndexSet S;
    for (int i = 0; i < A.m; ++i)
        if (!A.contains(full & ~(Mask(1) << i))) S.push_back(i);
    return S;
}

bool SectorLabel::is_zero() const {
    return std::all_of(f.begin(), f.end(), [](const Rat& q) { return q == 0; });
}

bool SectorLabel::operator<(const SectorLabel& o) const { return f < o.f; }

SectorLabel make_sector(const GITData& git, const RatVec& f, int side) {
    SectorLabel s;
    s.f = frac(f);
    s.side = side;
    s.age = 0;
    for (int i = 0; i < git.m; ++i) {
        Rat p = git.pair(i, s.f);
        if (is_integer(p))
            s.I_f.push_back(i);
        else
            s.age += frac(p);
    }
    return s;
}

std::vector<RatVec> isotropy_sectors(const GITData& git, const Anticone& delta) {
    std::vector<RatVec> rows;
    for (int i : delta) rows.push_back(to_rat(git.D[i]));
    if (static_cast<int>(delta.size()) != git.r || rank(rows) != rows.size())
        throw SingularBasis("anticone " + to_string(delta) + " is not a basis");
    // Generators are the columns of the inverse of the delta-submatrix.
    std::vector<RatVec> cols(git.r, RatVec(git.r));
    for (int i = 0; i < git.r; ++i)
        for (int k = 0; k < git.r; ++k) cols[k][i] = rows[i][k];
    std::vector<RatVec> gens;
    for (int k = 0; k < git.r; ++k) {
        RatVec rhs(git.r, Rat(0));
        rhs[k] = 1;
        gens.push_back(frac(*solve_columns(cols, rhs)));
    }
    std::set<RatVec> seen{RatVec(git.r, Rat(0))};
    std::vector<RatVec> queue{RatVec(git.r, Rat(0))};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& g : gens) {
            RatVec y = frac(add(queue[q], g));
            if (seen.insert(y).second) queue.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<SectorLabel> box_elements(const GITData& git, const RatVec& omega, int side) {
    AnticoneSet A = validate_stability(git, omega);
    std::set<RatVec> all;
    for (const auto& d : minimal_anticones(git, A))
        for (auto& f : isotropy_sectors(git, d)) all.insert(f);
    std::vector<SectorLabel> out;
    for (const auto& f : all) out.push_back(make_sector(git, f, side));
    return out;
}

SectorLabel inv_sector(const GITData& git, const SectorLabel& f) {
    return make_sector(git, scale(Rat(-1), f.f), f.side);
}

bool FixedPointLabel::operator<(const FixedPointLabel& o) const {
    if (delta != o.delta) return delta < o.delta;
    return f < o.f;
}

std::string to_string(const FixedPointLabel& p) { return "(" + to_string(p.delta) + "," + to_string(p.f.f) + ")"; }

std::vector<FixedPointLabel> fixed_points(const GITData& git, const AnticoneSet& A, int side) {
    std::vector<FixedPointLabel> out;
    for (const auto& d : minimal_anticones(git, A))
        for (const auto& f : isotropy_sectors(git, d)) out.push_back({d, make_sector(git, f, side)});
    return out;
}

std::string to_string(WallCase c) {
    switch (c) {
        case WallCase::I: return "I";
        case WallCase::IIi: return "II-i";
        case WallCase::IIii: return "II-ii";
        case WallCase::III: return "III";
    }
    return "?";
}

std::map<int, RatVec> xi_vectors(const GITData& git, const AnticoneSet& A) {
    std::map<int, RatVec> out;
    const auto mins = minimal_anticones(git, A);
    for (int j : s_set(A)) {
        bool found = false;
        for (const auto& d : mins) {
            if (!std::binary_search(d.begin(), d.end(), j)) continue;
            std::vector<RatVec> cols(git.r, RatVec(git.r));
            RatVec rhs(git.r, Rat(0));
            for (int a = 0; a < git.r; ++a) {
                for (int k = 0; k < git.r; ++k) cols[k][a] = Rat(git.D[d[a]][k]);
                if (d[a] == j) rhs[a] = 1;
            }
            auto xi = solve_columns(cols, rhs);
            if (!xi) continue;
            bool ok = true;
            for (int i = 0; i < git.m && ok; ++i)
                if (!std::binary_search(d.begin(), d.end(), i) && git.pair(i, *xi) > 0) ok = false;
            if (ok) {
                out[j] = *xi;
                found = true;
                break;
            }
        }
        if (!found) throw PreconditionFailed("extended vector " + std::to_string(j + 1) + " lies outside the fan");
    }
    return out;
}

namespace {

struct Crossing {
    Rat t;
    IntVec normal;
};

IntVec canonical_sign(IntVec n) {
    for (long long x : n) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : n) y = -y;
        break;
    }
    return n;
}

// Normals of hyperplanes spanned by r-1 independent characters.
std::vector<IntVec> candidate_normals(const GITData& git) {
    std::set<IntVec> normals;
    const int k = git.r - 1;
    if (k == 0) return {IntVec{1}};
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    RatVec probe(git.r, Rat(0));
    while (true) {
        std::vector<RatVec> rows;
        for (int p : pick) rows.push_back(to_rat(git.D[p]));
        if (static_cast<int>(rank(rows)) == k) {
            auto ker = kernel(rows, git.r);
            // Any vector off the hyperplane fixes an orientation; canonical_sign resets it.
            RatVec side = ker[0];
            normals.insert(canonical_sign(primitive_wall_normal(rows, side)));
        }
        int i = k;
        while (i > 0 && pick[i - 1] == git.m - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (int j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return {normals.begin(), normals.end()};
}

RatVec lerp(const RatVec& a, const RatVec& b, const Rat& t) { return add(a, scale(t, sub(b, a))); }

bool holds_case(const WallCrossing& wc, WallCase c, int& ip, int& im) {
    auto minus_set = [](const IndexSet& a, const IndexSet& b) {
        IndexSet out;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    };
    const auto& Sp = wc.S_plus;
    const auto& Sm = wc.S_minus;
    switch (c) {
        case WallCase::I:
            return Sp == Sm && wc.M_plus.size() >= 2 && wc.M_minus.size() >= 2;
        case WallCase::IIi: {
            auto extra = minus_set(Sm, Sp);
            if (!std::includes(Sm.begin(), Sm.end(), Sp.begin(), Sp.end()) || extra.size() != 1) return false;
            if (wc.M_minus != extra || wc.M_plus.size() < 2) return false;
            im = extra[0];
            return true;
        }
        case WallCase::IIii: {
            auto extra = minus_set(Sp, Sm);
            if (!std::includes(Sp.begin(), Sp.end(), Sm.begin(), Sm.end()) || extra.size() != 1) return false;
            if (wc.M_plus != extra || wc.M_minus.size() < 2) return false;
            ip = extra[0];
            return true;
        }
        case WallCase::III: {
            auto ep = minus_set(Sp, wc.S_zero);
            auto em = minus_set(Sm, wc.S_zero);
            if (ep.size() != 1 || em.size() != 1) return false;
            if (wc.M_plus != ep || wc.M_minus != em) return false;
            ip = ep[0];
            im = em[0];
            return true;
        }
    }
    return false;
}

}  // namespace

WallCrossing wall_crossing(const GITData& git, const RatVec& omega_plus, const RatVec& omega_minus) {
    WallCrossing wc;
    wc.git = git;
    wc.omega_plus = omega_plus;
    wc.omega_minus = omega_minus;
    wc.A_plus = validate_stability(git, omega_plus);
    wc.A_minus = validate_stability(git, omega_minus);
    if (wc.A_plus.masks == wc.A_minus.masks) throw NotAdjacent("both stability conditions lie in the same chamber");

    std::vector<Crossing> crossings;
    for (const auto& n : candidate_normals(git)) {
        Rat a = dot(n, omega_plus), b = dot(n, omega_minus);
        if ((a > 0 && b < 0) || (a < 0 && b > 0)) crossings.push_back({a / (a - b), n});
    }
    std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
    std::vector<std::vector<Crossing>> groups;
    for (const auto& c : crossings) {
        if (groups.empty() || groups.back()[0].t != c.t) groups.emplace_back();
        groups.back().push_back(c);
    }
    // Anticone sets between consecutive crossings of the segment.
    std::vector<std::vector<Mask>> samples;
    samples.push_back(wc.A_plus.masks);
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        Rat mid = (groups[g][0].t + groups[g + 1][0].t) / 2;
        samples.push_back(anticone_set(git, lerp(omega_plus, omega_minus, mid)).masks);
    }
    samples.push_back(wc.A_minus.masks);
    std::vector<std::size_t> changes;
    for (std::size_t g = 0; g < groups.size(); ++g)
        if (samples[g] != samples[g + 1]) changes.push_back(g);
    if (changes.size() != 1)
        throw NotAdjacent("the segment between the chambers crosses " + std::to_string(changes.size()) + " walls");
    const auto& wall = groups[changes[0]];
    if (wall.size() != 1) throw NotAdjacent("the chambers meet only along a locus of codimension at least two");

    wc.omega_zero = lerp(omega_plus, omega_minus, wall[0].t);
    wc.A_zero = anticone_set(git, wc.omega_zero);
    wc.e = wall[0].normal;
    if (dot(wc.e, omega_plus) < 0)
        for (auto& x : wc.e) x = -x;

    long long total = 0;
    for (int i = 0; i < git.m; ++i) {
        long long p = wc.De(i);
        total += p;
        (p > 0 ? wc.M_plus : p < 0 ? wc.M_minus : wc.M_zero).push_back(i);
    }
    if (total != 0) throw NotCrepant("sum of characters pairs to " + std::to_string(total) + " with the wall normal");
    if (wc.M_plus.empty() || wc.M_minus.empty()) throw NotAdjacent("wall normal has a constant sign on the characters");

    wc.S_plus = s_set(wc.A_plus);
    wc.S_minus = s_set(wc.A_minus);
    std::set_intersection(wc.S_plus.begin(), wc.S_plus.end(), wc.S_minus.begin(), wc.S_minus.end(),
                          std::back_inserter(wc.S_zero));

    int found = 0;
    for (WallCase c : {WallCase::I, WallCase::IIi, WallCase::IIii, WallCase::III}) {
        int ip = -1, im = -1;
        if (holds_case(wc, c, ip, im)) {
            ++found;
            wc.wall_case = c;
            if (ip >= 0) wc.i_plus = ip;
            if (im >= 0) wc.i_minus = im;
        }
    }
    if (found != 1)
        throw InconsistentClassification(std::to_string(found) + " of the four wall-crossing types apply");

    wc.xi_plus = xi_vectors(git, wc.A_plus);
    wc.xi_minus = xi_vectors(git, wc.A_minus);
    return wc;
}

WallCrossing swap_sides(const WallCrossing& wc) { return wall_crossing(wc.git, wc.omega_minus, wc.omega_plus); }

bool anticones_next_to(const WallCrossing& wc, const Anticone& dp, const Anticone& dm) {
    const int r = wc.git.r;
    if (static_cast<int>(dp.size()) != r || static_cast<int>(dm.size()) != r) return false;
    if (!wc.A_plus.contains(dp) || !wc.A_minus.contains(dm)) return false;
    IndexSet common, only_p, only_m;
    std::set_intersection(dp.begin(), dp.end(), dm.begin(), dm.end(), std::back_inserter(common));
    std::set_difference(dp.begin(), dp.end(), dm.begin(), dm.end(), std::back_inserter(only_p));
    std::set_difference(dm.begin(), dm.end(), dp.begin(), dp.end(), std::back_inserter(only_m));
    if (static_cast<int>(common.size()) != r - 1) return false;
    for (int j : common)
        if (wc.De(j) != 0) return false;
    return wc.De(only_p[0]) > 0 && wc.De(only_m[0]) < 0;
}

std::vector<NextToPair> next_to_pairs(const WallCrossing& wc) {
    std::vector<NextToPair> out;
    const auto& git = wc.git;
    for (const auto& dp : minimal_anticones(git, wc.A_plus)) {
        if (wc.A_minus.contains(dp)) continue;
        for (const auto& dm : minimal_anticones(git, wc.A_minus)) {
            if (wc.A_plus.contains(dm) || !anticones_next_to(wc, dp, dm)) continue;
            int jp = -1, jm = -1;
            for (int j : dp)
                if (!std::binary_search(dm.begin(), dm.end(), j)) jp = j;
            for (int j : dm)
                if (!std::binary_search(dp.begin(), dp.end(), j)) jm = j;
            const auto fm_list = isotropy_sectors(git, dm);
            for (const auto& fp : isotropy_sectors(git, dp)) {
                for (const auto& fm : fm_list) {
                    auto alpha = rational_line_membership(sub(fm, fp), wc.e);
                    if (!alpha) continue;
                    NextToPair p;
                    p.plus = {dp, make_sector(git, fp, +1)};
                    p.minus = {dm, make_sector(git, fm, -1)};
                    p.alpha = *alpha;
                    p.f_minus_lift = add(fp, scale(*alpha, to_rat(wc.e)));
                    p.j_plus = jp;
                    p.j_minus = jm;
                    p.l = -wc.De(jm);
                    out.push_back(p);
                }
            }
        }
    }
    return out;
}

bool is_nef(const GITData& git, const AnticoneSet& A, const IndexSet& S, const RatVec& p) {
    for (const auto& d : minimal_anticones(git, A)) {
        std::vector<RatVec> cols;
        for (int i : d) cols.push_back(to_rat(git.D[i]));
        const RatVec c = *solve_columns(cols, p);
        for (std::size_t a = 0; a < d.size(); ++a)
            if (!std::binary_search(S.begin(), S.end(), d[a]) && c[a] < 0) return false;
    }
    return true;
}

namespace {

std::vector<std::vector<Int>> coords_in(const LatticeBasis& lat, const std::vector<IntVec>& vs) {
    std::vector<std::vector<Int>> out;
    for (const auto& v : vs) {
        auto c = coordinates(lat, to_rat(v));
        if (!c || !is_integral(*c)) throw PreconditionFailed("vector " + to_string(to_rat(v)) + " is outside the lattice");
        std::vector<Int> row;
        for (const auto& q : *c) row.push_back(boost::multiprecision::numerator(q));
        out.push_back(row);
    }
    return out;
}

// Nonzero points sum k_i g_i with |k_i| <= K, ordered by max-norm, then lexicographically.
std::vector<IntVec> lattice_points(const LatticeBasis& lat, int K) {
    const std::size_t n = lat.generators.size();
    const std::size_t r = lat.dim;
    std::vector<IntVec> gens;
    for (const auto& g : lat.generators) {
        IntVec v;
        for (const auto& q : g) v.push_back(static_cast<long long>(boost::multiprecision::numerator(q)));
        gens.push_back(v);
    }
    std::vector<IntVec> out;
    std::vector<long long> k(n, -K);
    while (true) {
        IntVec v(r, 0);
        bool zero = true;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < r; ++i) v[i] += k[a] * gens[a][i];
        for (long long x : v) zero = zero && x == 0;
        if (!zero) out.push_back(v);
        std::size_t i = n;
        while (i > 0 && k[i - 1] == K) k[--i] = -K;
        if (i == 0) break;
        ++k[i - 1];
    }
    auto norm = [](const IntVec& x) {
        long long m = 0;
        for (long long y : x) m = std::max(m, y < 0 ? -y : y);
        return m;
    };
    std::sort(out.begin(), out.end(), [&](const IntVec& a, const IntVec& b) {
        const long long na = norm(a), nb = norm(b);
        return na != nb ? na < nb : a < b;
    });
    return out;
}

LatticeBasis wall_sublattice(const LatticeBasis& M, const IntVec& e) {
    const std::size_t r = M.dim;
    std::vector<std::vector<Int>> rows;
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<Int> row(r + 1, Int(0));
        row[0] = boost::multiprecision::numerator(dot(e, M.generators[k]));
        row[k + 1] = 1;
        rows.push_back(row);
    }
    auto H = hermite_normal_form(rows);
    std::vector<RatVec> gens;
    for (const auto& row : H) {
        if (row[0] != 0) continue;
        RatVec v(r, Rat(0));
        for (std::size_t k = 0; k < r; ++k) v = add(v, scale(Rat(row[k + 1]), M.generators[k]));
        gens.push_back(v);
    }
    return lattice_span(gens, r);
}


// Extends `partial` to a basis of `lat` using vectors accepted by `ok`.  All
// but the last vector come from a growing search; the last one is taken from
// the completions s*w + sum a_p p of the remaining rank-one quotient.
template <class Pred>
std::vector<IntVec> complete_basis(const LatticeBasis& lat, std::vector<IntVec> partial, Pred ok) {
    const std::size_t n = lat.generators.size();
    if (!extends_to_basis(coords_in(lat, partial)))
        throw PreconditionFailed("given vectors do not extend to a lattice basis");
    int K = 2;
    while (partial.size() + 1 < n) {
        bool added = false;
        for (const auto& v : lattice_points(lat, K)) {
            auto trial = partial;
            trial.push_back(v);
            if (ok(v) && extends_to_basis(coords_in(lat, trial))) {
                partial = trial;
                added = true;
                break;
            }
        }
        if (!added) {
            if (K >= 64) throw PreconditionFailed("no admissible basis vector within the search box");
            K *= 2;
        }
    }
    if (partial.size() == n) return partial;
    IntVec w;
    for (int k = 1; w.empty(); ++k) {
        for (const auto& v : lattice_points(lat, k)) {
            auto trial = partial;
            trial.push_back(v);
            if (extends_to_basis(coords_in(lat, trial))) {
                w = v;
                break;
            }
        }
    }
    const std::size_t d = partial.size();
    for (long long bound = 0; bound <= 4096; bound = bound == 0 ? 1 : bound * 2) {
        // Coefficient vectors in [-bound, bound]^d ordered by max-norm, then lexicographically.
        std::vector<std::vector<long long>> coefs;
        std::vector<long long> a(d, -bound);
        while (true) {
            coefs.push_back(a);
            std::size_t i = d;
            while (i > 0 && a[i - 1] == bound) a[--i] = -bound;
            if (i == 0) break;
            ++a[i - 1];
        }
        auto norm = [](const std::vector<long long>& x) {
            long long m = 0;
            for (long long y : x) m = std::max(m, y < 0 ? -y : y);
            return m;
        };
        std::stable_sort(coefs.begin(), coefs.end(), [&](const auto& x, const auto& y) { return norm(x) < norm(y); });
        for (const auto& c : coefs) {
            for (int sgn : {1, -1}) {
                IntVec v = w;
                for (auto& x : v) x *= sgn;
                for (std::size_t p = 0; p < d; ++p)
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[p] * partial[p][i];
                if (ok(v)) {
                    partial.push_back(v);
                    return partial;
                }
            }
        }
        if (coefs.size() > 2000000) break;
    }
    throw PreconditionFailed("no admissible completion of the basis within the search box");
}

}  // namespace

CoordinateChange coordinate_change(const WallCrossing& wc) {
    const auto& git = wc.git;
    const int r = git.r;
    const LatticeBasis Mp = dual_lattice(extended_lattice(git, wc.omega_plus));
    const LatticeBasis Mm = dual_lattice(extended_lattice(git, wc.omega_minus));
    const LatticeBasis Wp = wall_sublattice(Mp, wc.e);
    if (!(Wp == wall_sublattice(Mm, wc.e))) throw PreconditionFailed("wall sublattices of the two dual lattices differ");

    auto nef_both = [&](const IntVec& v) {
        return is_nef(git, wc.A_plus, wc.S_plus, to_rat(v)) && is_nef(git, wc.A_minus, wc.S_minus, to_rat(v));
    };
    std::vector<IntVec> start;
    for (int j : wc.S_zero) start.push_back(git.D[j]);
    const std::vector<IntVec> wall = complete_basis(Wp, start, nef_both);

    auto off_wall = [&](int side) -> IntVec {
        const LatticeBasis& M = side > 0 ? Mp : Mm;
        std::optional<int> special = side > 0 ? wc.i_plus : wc.i_minus;
        if (special) {
            const IntVec& v = git.D[*special];
            auto trial = wall;
            trial.push_back(v);
            if (!extends_to_basis(coords_in(M, trial)))
                throw PreconditionFailed("wall basis does not extend by the extra character");
            return v;
        }
        auto ok = [&](const IntVec& v) {
            return side * dot(wc.e, v) > 0 && is_nef(git, wc.anticones(side), wc.S(side), to_rat(v));
        };
        return complete_basis(M, wall, ok).back();
    };
    const IntVec pr_plus = off_wall(+1);
    const IntVec pr_minus = off_wall(-1);

    CoordinateChange cc;
    cc.basis_plus = wall;
    cc.basis_plus.push_back(pr_plus);
    cc.basis_minus = wall;
    cc.basis_minus.push_back(pr_minus);

    std::vector<RatVec> cols;
    for (const auto& w : wall) cols.push_back(to_rat(w));
    cols.push_back(to_rat(pr_minus));
    auto coef = solve_columns(cols, to_rat(pr_plus));
    if (!coef) throw SingularBasis("transition between the bases failed");
    cc.c = -(*coef)[r - 1];
    cc.c_i.assign(coef->begin(), coef->begin() + (r - 1));
    if (cc.c <= 0) throw PreconditionFailed("coordinate change exponent is not positive");
    Int B = boost::multiprecision::denominator(cc.c);
    for (const auto& q : cc.c_i) {
        Int d = boost::multiprecision::denominator(q);
        B = B / boost::multiprecision::gcd(B, d) * d;
    }
    cc.B = B;
    cc.A = boost::multiprecision::numerator(cc.c * Rat(B));
    for (const auto& q : cc.c_i) cc.A_i.push_back(boost::multiprecision::numerator(q * Rat(B)));
    return cc;
}

}  // namespace wallcross
