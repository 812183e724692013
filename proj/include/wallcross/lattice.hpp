#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wallcross {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Vectors in L (x) Q or its dual. Dimension is r unless noted.
using RatVec = std::vector<Rat>;
using IntVec = std::vector<long long>;
using IndexSet = std::vector<int>;  // sorted, 0-based

// Rational helpers
Int floor_rat(const Rat& q);
Rat frac(const Rat& q);  // q - floor(q), in [0, 1)
bool is_integer(const Rat& q);
Rat make_rat(long long num, long long den = 1);
std::string to_string(const Rat& q);
double to_double(const Rat& q);

RatVec to_rat(const IntVec& v);
Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const IntVec& a, const RatVec& b);
long long dot(const IntVec& a, const IntVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& s, const RatVec& a);
bool is_integral(const RatVec& v);
RatVec frac(const RatVec& v);  // entrywise reduction into [0, 1)
std::string to_string(const RatVec& v);

// Exact Gaussian elimination helpers. `rows` is a list of row vectors.
std::size_t rank(const std::vector<RatVec>& rows);
// Solves sum_k c_k cols[k] = b; returns nullopt when b is not in the span or
// the columns are dependent.
std::optional<RatVec> solve_columns(const std::vector<RatVec>& cols, const RatVec& b);
// Basis of the rational kernel {x : row . x = 0 for all rows}.
std::vector<RatVec> kernel(const std::vector<RatVec>& rows, std::size_t dim);
Rat determinant(const std::vector<RatVec>& rows);

// Row-style Hermite normal form of integer rows; zero rows dropped.
std::vector<std::vector<Int>> hermite_normal_form(std::vector<std::vector<Int>> rows);

// Finitely generated subgroup of Q^dim in canonical (Hermite-reduced) form.
struct LatticeBasis {
    std::size_t dim = 0;
    std::vector<RatVec> generators;

    bool contains(const RatVec& v) const;
    // Index [this : sub] for a full-rank sublattice.
    Int index_over(const LatticeBasis& sub) const;
    bool operator==(const LatticeBasis& o) const { return dim == o.dim && generators == o.generators; }
};

LatticeBasis lattice_span(const std::vector<RatVec>& gens, std::size_t dim);
LatticeBasis standard_lattice(std::size_t dim);
// Dual lattice {u : u . v in Z for all v in lattice}; requires full rank.
LatticeBasis dual_lattice(const LatticeBasis& lat);
// Coordinates of v in the given basis; nullopt when v is outside the span.
std::optional<RatVec> coordinates(const LatticeBasis& lat, const RatVec& v);
// True when the integer coordinate rows extend to a basis of the ambient lattice.
bool extends_to_basis(const std::vector<std::vector<Int>>& coords);

// Writes D_j in the basis {D_i : i in delta}; entries ordered as delta.
RatVec express_in_anticone_basis(const std::vector<RatVec>& D, const IndexSet& delta, int j);

// Primitive integral e orthogonal to every wall character, positive on positive_side.
IntVec primitive_wall_normal(const std::vector<RatVec>& wall_chars, const RatVec& positive_side);

// The unique alpha in [0, 1) with v - alpha e integral, if any.
std::optional<Rat> rational_line_membership(const RatVec& v, const IntVec& e);

struct GITData;
// Lattice generated by L = Z^r and all box representatives.
LatticeBasis extended_lattice(const GITData& git, const RatVec& omega);

}  // namespace wallcross
