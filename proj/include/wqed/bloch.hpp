#pragma once

#include <iosfwd>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

// Rotating-frame emitter expectations for a coherently driven two-level
// emitter: s1 = <sigma> e^{i omega_p (t - t0)}, s2 = <sigma^dag sigma>.
struct BlochState {
  cplx s1{0.0, 0.0};
  double s2 = 0.0;
  double time = 0.0;
};

struct BlochParams {
  double detuning = 0.0;
  double gamma = 0.1;
  double omega_rabi = 0.0;

  void validate() const;
};

struct BlochDerivative {
  cplx ds1;
  double ds2;
};

BlochDerivative bloch_rhs(const BlochState& s, const BlochParams& p);

// Largest step accepted by integrate().
double max_bloch_step(const BlochParams& p);

struct IntegrateOptions {
  std::size_t stride = 1;  // keep every stride-th step (the final state is always kept)
  BlochState initial{};    // ground state unless a test overrides it
};

// Classic fourth-order Runge-Kutta with fixed step dt from t = 0 to t_end.
std::vector<BlochState> integrate(const BlochParams& p, double t_end, double dt,
                                  const IntegrateOptions& opt = {});

BlochState steady_state(const BlochParams& p);

struct CoherentObservables {
  double jc = 0.0;
  cplx tilde_tp{1.0, 0.0};
  cplx chi{0.0, 0.0};
  double phi_total = 0.0;
  LimitFlag limit = LimitFlag::None;
};

// Uses the steady state. For omega = 0 returns the single-photon transmission
// with a ZeroDrive flag.
CoherentObservables coherent_observables(const BlochParams& p, const UnitSystem& u = {});

// Transmission amplitude built from an arbitrary (possibly transient) state.
cplx transmission_from_state(const BlochState& s, const BlochParams& p);

// CSV columns: t, Re(S1), Im(S1), S2, Jc_instantaneous.
void write_trajectory_csv(std::ostream& os, const std::vector<BlochState>& traj,
                          const BlochParams& p);

}  // namespace wqed
