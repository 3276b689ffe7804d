#include "fisherid/lambert.hpp"

#include <cmath>
#include <stdexcept>

namespace fisherid {

namespace {

constexpr double kInvE = 0.36787944117144232160;  // 1/e
constexpr double kBranchClampTol = 1e-14;
constexpr int kMaxIterations = 50;
constexpr double kStepTol = 1e-14;

// 2*(e*x + 1), with e carried to double-double precision through fma. The
// plain expression cancels catastrophically near the branch point and costs
// half the significant digits of the series argument.
double branch_argument(double x) {
  constexpr double kEHi = 2.718281828459045235360287;  // rounds to double(e)
  constexpr double kELo = 1.4456468917292502e-16;      // e - double(e)
  const double s = std::fma(kEHi, x, 1.0) + kELo * x;
  return s < 0.0 ? 0.0 : 2.0 * s;
}

// Series around the branch point w = -1 in powers of p = sqrt(2*(e*x + 1)).
double branch_series(double p) {
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

double initial_guess(double x) {
  if (x < -0.3235) {
    return branch_series(std::sqrt(branch_argument(x)));
  }
  if (x < 0.3235) {
    // Taylor expansion of W around 0.
    return x * (1.0 + x * (-1.0 + x * (1.5 - (8.0 / 3.0) * x)));
  }
  if (x <= 10.0) {
    return 0.75 * std::log1p(x);
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1);
}

// Halley on f(w) = w*exp(w) - x; safe while exp(w) cannot overflow.
double halley_direct(double x, double w, int& iterations) {
  for (int i = 0; i < kMaxIterations; ++i) {
    ++iterations;
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    const double next = w - step;
    if (std::abs(step) <= kStepTol * std::max(std::abs(next), 1e-290)) {
      return next;
    }
    w = next;
  }
  return w;
}

// Halley on g(w) = log(w) + w - log(x) for x > 0, w > 0; never overflows,
// which matters for the huge arguments produced by tiny inseparability
// fractions.
double halley_log(double x, double w, int& iterations) {
  const double lx = std::log(x);
  for (int i = 0; i < kMaxIterations; ++i) {
    ++iterations;
    const double g = std::log(w) + w - lx;
    const double g1 = 1.0 + 1.0 / w;
    const double g2 = -1.0 / (w * w);
    const double step = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
    const double next = w - step;
    if (std::abs(step) <= kStepTol * std::abs(next)) {
      return next;
    }
    w = next;
  }
  return w;
}

double safe_residual(double x, double w) {
  if (x > 1e15) {
    // w*exp(w) - x == x * expm1(log(w) + w - log(x)); avoids exp overflow.
    return x * std::expm1(std::log(w) + w - std::log(x));
  }
  return w * std::exp(w) - x;
}

}  // namespace

LambertResult lambert_w0_detailed(double x) {
  if (x < -kInvE - kBranchClampTol) {
    throw std::domain_error("lambert_w0: argument below -1/e");
  }
  if (x < -kInvE) {
    x = -kInvE;
  }

  LambertResult out;
  if (x == 0.0) {
    out.value = 0.0;
    return out;
  }

  if (x < -kInvE + 1e-8) {
    // Close to the branch point the series alone is accurate to full double
    // precision and Halley's denominator degenerates, so skip iterating.
    out.value = branch_series(std::sqrt(branch_argument(x)));
    out.residual = safe_residual(x, out.value);
    return out;
  }

  const double guess = initial_guess(x);
  out.value = (x > 1.5) ? halley_log(x, guess, out.iterations)
                        : halley_direct(x, guess, out.iterations);
  out.residual = safe_residual(x, out.value);
  return out;
}

double lambert_w0(double x) { return lambert_w0_detailed(x).value; }

}  // namespace fisherid
