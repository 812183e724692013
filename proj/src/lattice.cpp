#include "wallcross/lattice.hpp"

#include "wallcross/errors.hpp"
#include "wallcross/gitfan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wallcross {

Int floor_rat(const Rat& q) {
    Int n = boost::multiprecision::numerator(q);
    Int d = boost::multiprecision::denominator(q);
    Int t = n / d;
    if (n < 0 && t * d != n) t -= 1;
    return t;
}

Rat frac(const Rat& q) { return q - Rat(floor_rat(q)); }

bool is_integer(const Rat& q) { return boost::multiprecision::denominator(q) == 1; }

Rat make_rat(long long num, long long den) {
    if (den == 0) throw PreconditionFailed("zero denominator");
    return Rat(Int(num), Int(den));
}

std::string to_string(const Rat& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) os << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

double to_double(const Rat& q) { return q.convert_to<double>(); }

RatVec to_rat(const IntVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

long long dot(const IntVec& a, const IntVec& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
    RatVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
    return out;
}

RatVec scale(const Rat& s, const RatVec& a) {
    RatVec out(a);
    for (auto& x : out) x *= s;
    return out;
}

bool is_integral(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& q) { return is_integer(q); });
}

RatVec frac(const RatVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(frac(q));
    return out;
}

std::string to_string(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVec>& M, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < ncols && row < M.size(); ++c) {
        std::size_t p = row;
        while (p < M.size() && M[p][c] == 0) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[row]);
        Rat inv = 1 / M[row][c];
        for (auto& x : M[row]) x *= inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == row || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (std::size_t k = 0; k < M[i].size(); ++k) M[i][k] -= f * M[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

}  // namespace

std::size_t rank(const std::vector<RatVec>& rows) {
    if (rows.empty()) return 0;
    std::vector<RatVec> M = rows;
    return rref(M, rows[0].size()).size();
}

std::optional<RatVec> solve_columns(const std::vector<RatVec>& cols, const RatVec& b) {
    const std::size_t k = cols.size();
    const std::size_t n = b.size();
    std::vector<RatVec> M(n, RatVec(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) M[i][j] = cols[j][i];
        M[i][k] = b[i];
    }
    auto piv = rref(M, k + 1);
    // A pivot in the augmented column means b is outside the span.
    if (!piv.empty() && piv.back() == k) return std::nullopt;
    if (piv.size() != k) return std::nullopt;
    RatVec x(k);
    for (std::size_t i = 0; i < k; ++i) x[piv[i]] = M[i][k];
    return x;
}

std::vector<RatVec> kernel(const std::vector<RatVec>& rows, std::size_t dim) {
    std::vector<RatVec> M = rows;
    auto piv = rref(M, dim);
    std::vector<bool> is_piv(dim, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<RatVec> out;
    for (std::size_t f = 0; f < dim; ++f) {
        if (is_piv[f]) continue;
        RatVec v(dim, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -M[i][f];
        out.push_back(v);
    }
    return out;
}

Rat determinant(const std::vector<RatVec>& rows) {
    std::vector<RatVec> M = rows;
    const std::size_t n = M.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(M[p], M[c]);
            det = -det;
        }
        det *= M[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (M[i][c] == 0) continue;
            Rat f = M[i][c] / M[c][c];
            for (std::size_t k = c; k < n; ++k) M[i][k] -= f * M[c][k];
        }
    }
    return det;
}

std::vector<std::vector<Int>> hermite_normal_form(std::vector<std::vector<Int>> M) {
    if (M.empty()) return M;
    const std::size_t ncols = M[0].size();
    std::size_t prow = 0;
    for (std::size_t c = 0; c < ncols && prow < M.size(); ++c) {
        while (true) {
            std::size_t best = M.size();
            for (std::size_t i = prow; i < M.size(); ++i) {
                if (M[i][c] == 0) continue;
                if (best == M.size() || boost::multiprecision::abs(M[i][c]) < boost::multiprecision::abs(M[best][c]))
                    best = i;
            }
            if (best == M.size()) break;
            std::swap(M[prow], M[best]);
            bool done = true;
            for (std::size_t i = prow + 1; i < M.size(); ++i) {
                if (M[i][c] == 0) continue;
                Int q = M[i][c] / M[prow][c];
                for (std::size_t k = 0; k < ncols; ++k) M[i][k] -= q * M[prow][k];
                if (M[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (M[prow][c] == 0) continue;
        if (M[prow][c] < 0)
            for (auto& x : M[prow]) x = -x;
        for (std::size_t i = 0; i < prow; ++i) {
            Int q = M[i][c] / M[prow][c];
            if (M[i][c] < 0 && q * M[prow][c] != M[i][c]) q -= 1;
            for (std::size_t k = 0; k < ncols; ++k) M[i][k] -= q * M[prow][k];
        }
        ++prow;
    }
    M.resize(prow);
    return M;
}

LatticeBasis lattice_span(const std::vector<RatVec>& gens, std::size_t dim) {
    Int den = 1;
    for (const auto& g : gens)
        for (const auto& q : g) den = lcm_int(den, boost::multiprecision::denominator(q));
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens) {
        std::vector<Int> row(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            Rat s = g[i] * Rat(den);
            row[i] = boost::multiprecision::numerator(s);
        }
        rows.push_back(row);
    }
    auto H = hermite_normal_form(rows);
    LatticeBasis out;
    out.dim = dim;
    for (const auto& row : H) {
        RatVec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = Rat(row[i], den);
        out.generators.push_back(v);
    }
    return out;
}

LatticeBasis standard_lattice(std::size_t dim) {
    std::vector<RatVec> gens;
    for (std::size_t i = 0; i < dim; ++i) {
        RatVec v(dim, Rat(0));
        v[i] = 1;
        gens.push_back(v);
    }
    return lattice_span(gens, dim);
}

std::optional<RatVec> coordinates(const LatticeBasis& lat, const RatVec& v) {
    return solve_columns(lat.generators, v);
}

bool LatticeBasis::contains(const RatVec& v) const {
    auto c = coordinates(*this, v);
    return c && is_integral(*c);
}

Int LatticeBasis::index_over(const LatticeBasis& sub) const {
    if (generators.size() != dim || sub.generators.size() != dim)
        throw PreconditionFailed("index_over needs full-rank lattices");
    Rat q = determinant(sub.generators) / determinant(generators);
    if (q < 0) q = -q;
    if (!is_integer(q)) throw PreconditionFailed("not a sublattice");
    return boost::multiprecision::numerator(q);
}

LatticeBasis dual_lattice(const LatticeBasis& lat) {
    const std::size_t n = lat.dim;
    if (lat.generators.size() != n) throw PreconditionFailed("dual of a non-full-rank lattice");
    // u_j satisfies b_i . u_j = delta_ij.
    std::vector<RatVec> duals;
    for (std::size_t j = 0; j < n; ++j) {
        RatVec rhs(n, Rat(0));
        rhs[j] = 1;
        std::vector<RatVec> cols(n, RatVec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) cols[k][i] = lat.generators[i][k];
        auto u = solve_columns(cols, rhs);
        if (!u) throw SingularBasis("lattice generators are dependent");
        duals.push_back(*u);
    }
    return lattice_span(duals, n);
}

bool extends_to_basis(const std::vector<std::vector<Int>>& coords) {
    if (coords.empty()) return true;
    const std::size_t k = coords.size();
    const std::size_t n = coords[0].size();
    if (k > n) return false;
    Int g = 0;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<RatVec> minor(k, RatVec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = Rat(coords[i][pick[j]]);
        Rat d = determinant(minor);
        g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(d));
        if (g == 1) return true;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return boost::multiprecision::abs(g) == 1;
}

RatVec express_in_anticone_basis(const std::vector<RatVec>& D, const IndexSet& delta, int j) {
    std::vector<RatVec> cols;
    for (int i : delta) cols.push_back(D.at(i));
    if (rank(cols) != cols.size() || cols.empty() || cols.size() != D.at(j).size())
        throw SingularBasis("characters indexed by the anticone are not a basis");
    auto c = solve_columns(cols, D.at(j));
    if (!c) throw SingularBasis("character is not in the span of the anticone basis");
    return *c;
}

IntVec primitive_wall_normal(const std::vector<RatVec>& wall_chars, const RatVec& positive_side) {
    const std::size_t r = positive_side.size();
    if (r == 0) throw NotAHyperplane("empty ambient space");
    std::vector<RatVec> rows;
    for (const auto& w : wall_chars) rows.push_back(w);
    if (rank(rows) + 1 != r)
        throw NotAHyperplane("wall characters span a subspace of dimension " + std::to_string(rank(rows)) +
                             ", expected " + std::to_string(r - 1));
    auto ker = rows.empty() ? std::vector<RatVec>{RatVec(1, Rat(1))} : kernel(rows, r);
    RatVec k = ker.at(0);
    Int den = 1;
    for (const auto& q : k) den = lcm_int(den, boost::multiprecision::denominator(q));
    std::vector<Int> ints(r);
    Int g = 0;
    for (std::size_t i = 0; i < r; ++i) {
        ints[i] = boost::multiprecision::numerator(k[i] * Rat(den));
        g = boost::multiprecision::gcd(g, ints[i]);
    }
    IntVec e(r);
    for (std::size_t i = 0; i < r; ++i) e[i] = static_cast<long long>(ints[i] / g);
    Rat side = dot(e, positive_side);
    if (side == 0) throw PreconditionFailed("positive side lies on the wall");
    if (side < 0)
        for (auto& x : e) x = -x;
    return e;
}

std::optional<Rat> rational_line_membership(const RatVec& v, const IntVec& e) {
    std::size_t i = 0;
    while (i < e.size() && e[i] == 0) ++i;
    if (i == e.size()) throw PreconditionFailed("zero direction vector");
    const long long ei = e[i];
    const long long n = ei < 0 ? -ei : ei;
    for (long long k = 0; k < n; ++k) {
        Rat alpha = frac((v[i] + Rat(k)) / Rat(ei));
        RatVec diff(v.size());
        for (std::size_t t = 0; t < v.size(); ++t) diff[t] = v[t] - alpha * Rat(e[t]);
        if (is_integral(diff)) return alpha;
    }
    return std::nullopt;
}

LatticeBasis extended_lattice(const GITData& git, const RatVec& omega) {
    validate_stability(git, omega);
    std::vector<RatVec> gens = standard_lattice(git.r).generators;
    for (const auto& s : box_elements(git, omega)) gens.push_back(s.f);
    return lattice_span(gens, git.r);
}

}  // namespace wallcross
