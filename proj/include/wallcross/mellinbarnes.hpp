#pragma once

#include "wallcross/hypergeom.hpp"

#include <vector>

namespace wallcross {

// Continuation coefficient between (delta_plus, f_plus) and (delta_minus, f_minus)
// for lifts with f_minus - f_plus in Q e (IncompatibleLifts otherwise).
cplx continuation_coefficient(const WallCrossing& wc, const Anticone& delta_plus, const RatVec& f_plus,
                              const Anticone& delta_minus, const RatVec& f_minus, const std::vector<cplx>& lambda);

struct ContinuationEntry {
    FixedPointLabel plus, minus;
    cplx value;
};

// One entry per next-to pair, plus 1 on the fixed points common to both sides.
std::vector<ContinuationEntry> continuation_matrix(const WallCrossing& wc, const std::vector<cplx>& lambda);

struct ContourSpec {
    double sigma_lo = -0.45, sigma_hi = -0.05;
    int scan_steps = 41;
    double t_max = 40.0;
    double tol = 1e-11;
    double min_clearance = 1e-3;
    int circle_points = 64;
};

struct MBResult {
    cplx value;         // normalized so that it continues sum_k raw_k x^k
    double sigma0 = 0;
    double clearance = 0;
    double error = 0;   // quadrature estimate
    int corrections = 0;  // left poles to the right of the line
};

// x on the ray arg x = pi w.
cplx ray_point(double abs_x, long long w);

// Barnes-type integral for the block `spec` evaluated at |x| on the ray.
MBResult mb_integral(const InnerSeriesSpec& spec, double abs_x, long long w, const std::vector<cplx>& lambda,
                     const ContourSpec& contour = {});

// sum_k raw_k x^k, summed until the terms are negligible.
cplx right_series(const InnerSeriesSpec& spec, double abs_x, long long w, const std::vector<cplx>& lambda);
// Negative of the left residues, with the same normalization as mb_integral.
cplx left_residue_sum(const InnerSeriesSpec& spec, double abs_x, long long w, const std::vector<cplx>& lambda);
// The same left sum rebuilt from continuation coefficients and the series on the other side.
cplx continued_series(const WallCrossing& wc, const InnerSeriesSpec& spec, double abs_x,
                      const std::vector<cplx>& lambda);

struct ResidueCheck {
    double right_error = 0;  // integral against right_series at small |x|
    double left_error = 0;   // integral against continued_series at large |x|
    double residue_error = 0;  // left_residue_sum against continued_series
    MBResult small, large;
};

// Small and large |x| are given as multiples of |c|.
ResidueCheck verify_residue_identity(const WallCrossing& wc, const InnerSeriesSpec& spec,
                                     const std::vector<cplx>& lambda, double small = 0.3, double large = 3.0,
                                     const ContourSpec& contour = {});

// Largest relative change of C under an L-shift v of both lifts and under f_minus -> f_minus + e.
double lift_invariance_check(const WallCrossing& wc, const NextToPair& pair, const IntVec& v,
                             const std::vector<cplx>& lambda);

}  // namespace wallcross
