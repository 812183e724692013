#pragma once

#include "wallcross/gitfan.hpp"

#include <complex>
#include <string>
#include <vector>

namespace wallcross {

using cplx = std::complex<double>;

// Exact rational combination of the equivariant parameters lambda_1..lambda_m.
struct LinearForm {
    std::vector<Rat> coeffs;

    LinearForm() = default;
    explicit LinearForm(int m) : coeffs(m, Rat(0)) {}
    static LinearForm lambda(int m, int i);

    bool is_zero() const;
    LinearForm operator+(const LinearForm& o) const;
    LinearForm operator-(const LinearForm& o) const;
    LinearForm operator-() const;
    LinearForm operator*(const Rat& s) const;
    bool operator==(const LinearForm& o) const { return coeffs == o.coeffs; }
    cplx eval(const std::vector<cplx>& lambda) const;
    std::string str() const;  // e.g. "λ1+1/2λ3"
};

// u_j(delta) for every j; zero exactly on delta.
std::vector<LinearForm> restrict_u(const GITData& git, const Anticone& delta);
// Restriction of theta(p) to the fixed point delta.
LinearForm theta_restrict(const GITData& git, const Anticone& delta, const RatVec& p);

bool verify_weight_transition(const WallCrossing& wc, const Anticone& delta_plus, const Anticone& delta_minus, int j);

struct SigmaRestriction {
    std::vector<LinearForm> log_y;    // coefficient of log y_i for the side's basis
    std::vector<LinearForm> lattice;  // coefficient of the k-th coordinate of log q in L^vee
    LinearForm c0;
};

SigmaRestriction sigma_restrict(const WallCrossing& wc, const CoordinateChange& cc, const Anticone& delta, int side);
// Both parts of the transition rule for sigma: equal on common anticones, and
// differing by u_{j-}(delta+)/(D_{j-}.e) times the pairing with e on next-to pairs.
bool verify_sigma_transition(const WallCrossing& wc, const CoordinateChange& cc, const Anticone& delta_plus,
                             const Anticone& delta_minus);

struct MovingWeight {
    int j;
    LinearForm weight;
    Rat fraction;  // <D_j . f>
};

struct NormalWeights {
    FixedPointLabel label;
    std::vector<std::pair<int, LinearForm>> fixed;
    std::vector<MovingWeight> moving;
};

NormalWeights normal_weights(const GITData& git, const FixedPointLabel& label);

}  // namespace wallcross
