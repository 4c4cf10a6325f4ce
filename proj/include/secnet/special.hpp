#pragma once

namespace secnet {

// Interference constant C(delta) = Gamma(1+delta)Gamma(1-delta)
// = pi*delta / sin(pi*delta), for delta in (0, 1).
// Throws std::domain_error outside the open interval.
double interference_constant(double delta);

// Principal branch W0 of the Lambert-W function: the solution w >= -1 of
// w * exp(w) = z, defined for z >= -1/e.
// Residual |w e^w - z| <= 1e-12 * max(1, |z|) across the domain.
// Throws std::domain_error for z < -1/e.
double lambert_w0(double z);

// Largest double not below -1/e; arguments under this are out of domain.
double lambert_branch_point();

}  // namespace secnet
