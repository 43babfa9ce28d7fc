#pragma once

#include <complex>

namespace levysup {

// Scaled complementary error function erfcx(z) = exp(z^2) erfc(z) for
// complex z. Accurate to ~1e-13 relative over the tested range; never
// overflows for Re z >= 0. For Re z < 0 it uses the reflection
// erfcx(z) = 2 exp(z^2) - erfcx(-z), which overflows once Re(z^2) > ~709.
std::complex<double> erfcx(std::complex<double> z);

// Real fast path with the same guarantees.
double erfcx(double x);

}  // namespace levysup
