#pragma once

#include "wallcross/gitfan.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace wallcross {

using cplx = std::complex<double>;

// Platform-independent draws from a 64-bit Mersenne twister.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi);  // [lo, hi)
    cplx disk(double radius);              // uniform in the closed disk
    // Real and imaginary parts uniform in [-half, half].
    std::vector<cplx> box(int m, double half);
    std::vector<cplx> ball(int m, double radius);
    cplx annulus(double r_lo, double r_hi);

private:
    std::mt19937_64 rng_;
};

// Distance of u_j(delta)/2 pi i + D_j.f from the integers, minimized over all
// inertia fixed points of both chambers and all j outside delta.
double resonance_distance(const WallCrossing& wc, const std::vector<cplx>& lambda);

}  // namespace wallcross
