#pragma once

#include "wqed/types.hpp"

namespace wqed::detail {

// Fills phases for an amplitude evaluated on the 1/Delta pole. linear and
// bracket keep only their limiting directions; total is the finite limit of
// their product.
inline void resonance_limit(CoherenceResult& r, LimitSide side, cplx total) {
  if (side == LimitSide::None)
    throw Error(ErrorKind::ResonancePole, "detuning = 0; request a one-sided limit");
  bool above = side == LimitSide::Above;
  r.limit = above ? LimitFlag::FromAbove : LimitFlag::FromBelow;
  r.linear = above ? -I : I;
  r.phases.phi_linear = above ? -pi / 2 : pi / 2;
  r.phases.phi_total = complex_phase(total);
  r.phases.phi_nonlinear = wrap_phase(r.phases.phi_total - r.phases.phi_linear);
  r.bracket = std::polar(1.0, r.phases.phi_nonlinear);
  r.bracket_terms.clear();
}

}  // namespace wqed::detail
