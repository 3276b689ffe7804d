#pragma once

namespace fisherid {

struct LambertResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // value*exp(value) - x, evaluated overflow-safely
};

// Principal real branch W0 of the Lambert W function: solves w*exp(w) = x for
// x >= -1/e, returning w >= -1. Arguments within 1e-14 below -1/e are clamped
// to the branch point; anything lower throws std::domain_error.
double lambert_w0(double x);

// Same computation with iteration count and achieved residual.
LambertResult lambert_w0_detailed(double x);

}  // namespace fisherid
