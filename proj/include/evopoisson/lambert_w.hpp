#pragma once

namespace evopoisson {

/// Lower real branch W_{-1} of the Lambert W function on [-1/e, 0).
///
/// Returns w <= -1 with w e^w = z. Arguments within 1e-15 to the left of
/// -1/e are snapped to the branch point; anything else outside the domain
/// throws DomainError.
double lambert_w_minus1(double z);

}  // namespace evopoisson
