#include "wallcross/sampling.hpp"

#include "wallcross/localization.hpp"
#include "wallcross/special.hpp"

#include <cmath>
#include <limits>

namespace wallcross {

double Sampler::uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

cplx Sampler::disk(double radius) {
    while (true) {
        const cplx z{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        if (std::norm(z) <= 1.0) return radius * z;
    }
}

std::vector<cplx> Sampler::box(int m, double half) {
    std::vector<cplx> out;
    for (int i = 0; i < m; ++i) {
        const double re = uniform(-half, half);
        out.emplace_back(re, uniform(-half, half));
    }
    return out;
}

std::vector<cplx> Sampler::ball(int m, double radius) {
    std::vector<cplx> out;
    for (int i = 0; i < m; ++i) out.push_back(disk(radius));
    return out;
}

cplx Sampler::annulus(double r_lo, double r_hi) {
    const double r = uniform(r_lo, r_hi);
    return std::polar(r, uniform(-kPi, kPi));
}

double resonance_distance(const WallCrossing& wc, const std::vector<cplx>& lambda) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto* A : {&wc.A_plus, &wc.A_minus})
        for (const auto& p : fixed_points(wc.git, *A)) {
            const auto u = restrict_u(wc.git, p.delta);
            for (int j = 0; j < wc.git.m; ++j) {
                if (u[j].is_zero()) continue;
                const cplx x = u[j].eval(lambda) / kTwoPiI + to_double(wc.git.pair(j, p.f.f));
                best = std::min(best, std::abs(x - std::round(x.real())));
            }
        }
    return best;
}

}  // namespace wallcross
