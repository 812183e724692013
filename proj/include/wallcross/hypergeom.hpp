#pragma once

#include "wallcross/localization.hpp"
#include "wallcross/special.hpp"

#include <map>
#include <vector>

namespace wallcross {

Rat conifold_point(const WallCrossing& wc);
// -1 - sum_{De<0} De and -1 + sum_{De>0} De; CrepancyViolation when they differ.
long long w_constant(const std::vector<long long>& De);
long long w_constant(const WallCrossing& wc);

// Inner series along e at a fixed point, for one starting degree d_plus.
struct InnerSeriesSpec {
    FixedPointLabel label;
    RatVec d_plus;
    std::vector<Rat> d;          // D_j . d_plus
    std::vector<long long> e;    // D_j . e
    std::vector<Rat> a0;         // largest a <= 0 with a = d_j mod 1
    std::vector<LinearForm> u;   // u_j(delta)

    std::vector<cplx> beta(const std::vector<cplx>& lambda) const;  // u_j(delta) / 2 pi i
};

InnerSeriesSpec make_inner_spec(const WallCrossing& wc, const FixedPointLabel& label, const RatVec& d_plus);

// Phi_k = prod_j Gamma(1 + beta_j + a0_j) / Gamma(1 + beta_j + d_j + k e_j), so Phi_0 = 1 when d_plus = 0.
cplx inner_sum_coefficient(const InnerSeriesSpec& spec, long long k, const std::vector<cplx>& lambda);
// 1 / prod_j Gamma(1 + beta_j + d_j + k e_j)
cplx raw_coefficient(const InnerSeriesSpec& spec, long long k, const std::vector<cplx>& lambda);
// prod_j Gamma(1 + beta_j + a0_j), the ratio between the two.
cplx normalization(const InnerSeriesSpec& spec, const std::vector<cplx>& lambda);

struct TruncatedSeries {
    std::string variable;
    std::vector<cplx> coefficients;
    int order() const { return static_cast<int>(coefficients.size()) - 1; }
    cplx operator()(cplx x) const;
};

// Starting degrees d_plus at (delta, f) with D_j . d_plus <= bound on delta.
std::vector<RatVec> starting_degrees(const WallCrossing& wc, const FixedPointLabel& label, int bound);

struct SeriesBlock {
    InnerSeriesSpec spec;
    TruncatedSeries series;
};

std::vector<SeriesBlock> h_restriction_series(const WallCrossing& wc, const FixedPointLabel& label, int K, int bound,
                                              const std::vector<cplx>& lambda);

// Largest relative residual of the recurrence A(k) Phi_k = B(k-1) Phi_{k-1}
// over 1 <= k <= K - max e_j.
double gkz_ode_residual(const TruncatedSeries& series, const InnerSeriesSpec& spec, const std::vector<cplx>& lambda);

// Restricted I-function coefficient of y^d at (delta, f), with beta_j = u_j(delta)/z;
// includes the z-power from the ratio of shifted products.
cplx i_function_coefficient(const GITData& git, const FixedPointLabel& label, const RatVec& d, cplx z,
                            const std::vector<cplx>& lambda);

struct LeadingTerm {
    FixedPointLabel label;
    RatVec d;
    cplx value;
};

// Leading coefficient of e^{-sigma/z} I / z at each fixed point of the chosen side.
std::vector<LeadingTerm> i_function_leading(const WallCrossing& wc, int side, cplx z, const std::vector<cplx>& lambda);

}  // namespace wallcross
