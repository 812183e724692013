#pragma once

#include <complex>

namespace wallcross {

using cplx = std::complex<double>;

// log Gamma on the principal branch of the Lanczos form, reflected for Re z < 1/2.
// Only exp(lgamma(z)) is meaningful across the branch cut.
cplx lgamma(cplx z);
// lgamma(w + n) for integer n; the reflection works with w so that samples
// close to a pole keep their relative accuracy.
cplx lgamma_shifted(cplx w, long long n);
cplx gamma(cplx z);
// 1/Gamma(z), entire; exact zero at the nonpositive integers.
cplx rgamma(cplx z);
// Distance from z to the nearest nonpositive integer (infinite when Re z > 1/2 and far).
double pole_distance(cplx z);

constexpr double kPi = 3.14159265358979323846264338327950288;
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

}  // namespace wallcross
