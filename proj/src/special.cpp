#include "wallcross/special.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace wallcross {

namespace {

// g = 607/128, 15 terms.
constexpr double kG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * kPi);

// log Gamma(z) for Re z >= 1/2.
cplx lgamma_right(cplx z) {
    z -= 1.0;
    cplx a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + double(i));
    const cplx t = z + kG + 0.5;
    return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

// sin(pi z) with the integer part of Re z removed exactly first.
cplx sin_pi(cplx z) {
    const double n = std::round(z.real());
    const cplx s = std::sin(kPi * (z - n));
    return std::fmod(std::abs(n), 2.0) == 1.0 ? -s : s;
}

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cplx lgamma(cplx z) {
    if (z.real() >= 0.5) return lgamma_right(z);
    if (is_nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0.0};
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - std::log(sin_pi(z)) - lgamma_right(1.0 - z);
}

cplx lgamma_shifted(cplx w, long long n) {
    const cplx z = w + double(n);
    if (z.real() >= 0.5) return lgamma_right(z);
    if (is_nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0.0};
    // sin(pi (w + n)) = (-1)^n sin(pi w); the sign enters as i pi n.
    const cplx sign{0.0, kPi * double(n % 2)};
    return std::log(kPi) - std::log(sin_pi(w)) - sign - lgamma_right(1.0 - z);
}

cplx gamma(cplx z) {
    if (z.real() >= 0.5) return std::exp(lgamma_right(z));
    if (is_nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0.0};
    return kPi / (sin_pi(z) * std::exp(lgamma_right(1.0 - z)));
}

cplx rgamma(cplx z) {
    if (z.real() >= 0.5) return std::exp(-lgamma_right(z));
    if (is_nonpositive_integer(z)) return 0.0;
    return sin_pi(z) / kPi * std::exp(lgamma_right(1.0 - z));
}

double pole_distance(cplx z) {
    const double n = std::min(0.0, std::round(z.real()));
    return std::abs(z - cplx(n, 0.0));
}

}  // namespace wallcross
