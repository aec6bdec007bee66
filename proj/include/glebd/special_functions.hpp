#pragma once

namespace glebd {

// Bessel function of the first kind, order 1. Absolute error <= 1e-10
// over |x| <= 1e4. Throws ValidationError for non-finite input.
double bessel_j1(double x);

}  // namespace glebd
