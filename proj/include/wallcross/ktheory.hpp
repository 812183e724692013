#pragma once

#include "wallcross/mellinbarnes.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wallcross {

// L(p) e^{n . lambda} t^k. S_j is stored as L(-D_j) e^{-lambda_j}.
struct Monomial {
    IntVec p;       // character in L^vee
    IntVec n;       // torus character
    long long t = 0;

    auto operator<=>(const Monomial&) const = default;
};

// The root generator t with t^l = R_{j_minus}.
struct RootDatum {
    int j_minus = -1;
    long long l = 1;
    bool operator==(const RootDatum&) const = default;
};

struct KClass {
    int r = 0, m = 0;
    std::map<Monomial, long long> terms;
    std::optional<RootDatum> root;

    KClass() = default;
    KClass(int r_, int m_) : r(r_), m(m_) {}

    static KClass one(int r, int m);
    static KClass line(int m, const IntVec& p);           // L(p)
    static KClass S(const GITData& git, int j);            // S_j
    static KClass R(const GITData& git, int j);            // R_j = S_j^{-1}
    static KClass character(int r, const IntVec& n);       // e^{n . lambda}
    static KClass t_power(int r, int m, const RootDatum& d, long long k);

    bool is_zero() const { return terms.empty(); }
    KClass operator+(const KClass& o) const;
    KClass operator-(const KClass& o) const;
    KClass operator*(const KClass& o) const;
    KClass operator*(long long s) const;
    bool operator==(const KClass& o) const { return terms == o.terms; }
    std::string str() const;
};

KClass dual(const KClass& k);

// Canonical lifts of the characters of G_delta: D_delta-coordinates in [0, 1).
std::vector<IntVec> isotropy_characters(const GITData& git, const Anticone& delta);
KClass basis_e(const GITData& git, const Anticone& delta, const IntVec& rho_hat);

// Exponent n/l of R_{j_minus} when l | n.
std::optional<long long> roots_projector(long long l, long long n);
// (1/l) sum over t in the root set, applied termwise; NonLaurent if any t survives.
KClass average_roots(const GITData& git, const KClass& k);
// Exact quotient by (1 - t^{-1}); NonLaurent when the division is not exact.
KClass divide_one_minus_tinv(const KClass& k);

// The summand before averaging; fm_transform averages it.
KClass fm_summand(const WallCrossing& wc, const Anticone& delta_minus, const IntVec& rho_hat);
KClass fm_transform(const WallCrossing& wc, const Anticone& delta_minus, const IntVec& rho_hat);

// Restriction of the modified Chern character at (delta, f) for the lift f.
// t restricts to zeta e^{2 pi i D_{j-}.f / l} e^{u_{j-}(delta)/l}.
cplx chern_restrict(const KClass& k, const GITData& git, const Anticone& delta, const RatVec& f,
                    const std::vector<cplx>& lambda, cplx zeta = 1.0);
cplx chern_restrict(const KClass& k, const GITData& git, const FixedPointLabel& label, const std::vector<cplx>& lambda,
                    cplx zeta = 1.0);

// prod_j Gamma(1 - <D_j . f> + u_j(delta)/z)
cplx gamma_restrict(const GITData& git, const FixedPointLabel& label, const std::vector<cplx>& lambda, cplx z);

struct FramingValue {
    FixedPointLabel label;
    cplx value;
    cplx log_z;
    Rat z_power;  // dim X / 2 - age, the power gained under (lambda, z) -> (s lambda, s z)
};

// Fixed-point value of z^{-mu} z^{rho} (Gamma cup (2 pi i)^{deg/2} inv^* ch(E)), without the
// (2 pi)^{-dim/2} prefactor. log_z selects the branch.
FramingValue framing_restrict(const KClass& E, const GITData& git, const FixedPointLabel& label,
                              const std::vector<cplx>& lambda, cplx log_z);

// Localized Euler pairing over the inertia fixed points of the chamber A.
// With z given, lambda is replaced by 2 pi i lambda / z first.
cplx euler_characteristic(const GITData& git, const AnticoneSet& A, const KClass& V, const std::vector<cplx>& lambda,
                          std::optional<cplx> z = std::nullopt);
cplx euler_pairing(const GITData& git, const AnticoneSet& A, const KClass& E, const KClass& F,
                   const std::vector<cplx>& lambda, std::optional<cplx> z = std::nullopt);

struct BasisElement {
    Anticone delta;
    IntVec rho_hat;
};
std::vector<BasisElement> k_basis(const GITData& git, const AnticoneSet& A);

struct ResidualReport {
    double max_residual = 0;
    std::string worst;  // offending combination
    std::size_t evaluations = 0;
};

// Optional hook altering the continuation coefficient of next-to pair `index`.
using CoefficientHook = std::function<cplx(std::size_t index, cplx value)>;

ResidualReport verify_uhfm(const WallCrossing& wc, const std::vector<std::vector<cplx>>& lambda_samples,
                           const CoefficientHook& hook = {});
ResidualReport verify_pairing_preserved(const WallCrossing& wc,
                                        const std::vector<std::pair<std::vector<cplx>, cplx>>& samples);

}  // namespace wallcross
