#include "secnet/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace secnet {

namespace {

constexpr double kPi = std::numbers::pi;

// Series around the branch point z = -1/e in v = sqrt(2(e z + 1)):
// W0(z) = -1 + v - v^2/3 + 11 v^3/72 - 43 v^4/540 + 769 v^5/17280 - 221 v^6/8505
double branch_series(double v) {
  return -1.0 +
         v * (1.0 +
              v * (-1.0 / 3.0 +
                   v * (11.0 / 72.0 +
                        v * (-43.0 / 540.0 +
                             v * (769.0 / 17280.0 + v * (-221.0 / 8505.0))))));
}

// Maclaurin series, adequate as a seed for |z| <= 0.3.
double small_series(double z) {
  return z * (1.0 + z * (-1.0 + z * (1.5 + z * (-8.0 / 3.0))));
}

}  // namespace

double lambert_branch_point() {
  static const double bp = -std::exp(-1.0);
  return bp;
}

double interference_constant(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::domain_error("interference_constant: delta must be in (0, 1)");
  return kPi * delta / std::sin(kPi * delta);
}

double lambert_w0(double z) {
  if (std::isnan(z)) throw std::domain_error("lambert_w0: NaN argument");
  const double bp = lambert_branch_point();
  if (z < bp) throw std::domain_error("lambert_w0: argument below -1/e");
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return z;  // +inf maps to +inf

  double w;
  const double v2 = 2.0 * std::fma(std::exp(1.0), z, 1.0);
  if (v2 < 1e-15) return -1.0;  // within rounding of the branch point itself
  const double v = std::sqrt(v2);
  if (v < 1e-2) {
    // The defining equation is quadratically flat at the branch point, so
    // the truncated series already meets the residual bound; Halley's
    // denominator 1+w would be too close to zero to refine further.
    return branch_series(v);
  }

  if (z < -0.30)
    w = branch_series(v);
  else if (z < 0.5)
    w = small_series(z);
  else if (z < std::exp(1.0))
    w = std::log1p(z) * 0.75;
  else {
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  const double tol = 1e-14 * std::fmax(1.0, std::fabs(z));
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (std::fabs(f) <= tol) break;
    const double fp = ew * (w + 1.0);
    // Halley step: f'' = e^w (w + 2)
    const double step = f / (fp - f * (w + 2.0) / (2.0 * (w + 1.0)));
    double next = w - step;
    if (next < -1.0) next = 0.5 * (w - 1.0);  // stay on the principal branch
    if (next == w) break;
    w = next;
  }
  return w;
}

}  // namespace secnet
