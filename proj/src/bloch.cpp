#include "wqed/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "wqed/analytic_2le.hpp"
#include "wqed/report.hpp"

namespace wqed {

void BlochParams::validate() const {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  if (!(omega_rabi >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Rabi frequency must be >= 0");
  if (!std::isfinite(detuning)) throw Error(ErrorKind::InvalidArgument, "detuning not finite");
}

BlochDerivative bloch_rhs(const BlochState& s, const BlochParams& p) {
  const double om = p.omega_rabi;
  BlochDerivative d;
  d.ds1 = cplx{-2.0 * p.gamma, p.detuning} * s.s1 - I * om + 2.0 * I * om * s.s2;
  // i Omega (S1 - S1^*) = -2 Omega Im S1, real by construction.
  d.ds2 = -4.0 * p.gamma * s.s2 - 2.0 * om * s.s1.imag();
  return d;
}

double max_bloch_step(const BlochParams& p) {
  return 0.1 / std::max({p.gamma, p.omega_rabi, std::abs(p.detuning)});
}

std::vector<BlochState> integrate(const BlochParams& p, double t_end, double dt,
                                  const IntegrateOptions& opt) {
  p.validate();
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  if (!(dt > 0.0) || dt > max_bloch_step(p) * (1.0 + 1e-12))
    throw Error(ErrorKind::StepTooLarge, "dt exceeds 0.1/max(gamma, omega, |detuning|)");
  const std::size_t stride = std::max<std::size_t>(opt.stride, 1);
  const auto nsteps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));

  std::vector<BlochState> traj;
  traj.reserve(nsteps / stride + 2);
  BlochState s = opt.initial;
  s.time = 0.0;
  traj.push_back(s);

  auto shifted = [](const BlochState& b, const BlochDerivative& k, double h) {
    BlochState o = b;
    o.s1 += h * k.ds1;
    o.s2 += h * k.ds2;
    return o;
  };

  for (std::size_t n = 1; n <= nsteps; ++n) {
    auto k1 = bloch_rhs(s, p);
    auto k2 = bloch_rhs(shifted(s, k1, dt / 2), p);
    auto k3 = bloch_rhs(shifted(s, k2, dt / 2), p);
    auto k4 = bloch_rhs(shifted(s, k3, dt), p);
    s.s1 += dt / 6.0 * (k1.ds1 + 2.0 * k2.ds1 + 2.0 * k3.ds1 + k4.ds1);
    s.s2 += dt / 6.0 * (k1.ds2 + 2.0 * k2.ds2 + 2.0 * k3.ds2 + k4.ds2);
    s.time = n * dt;
    if (!std::isfinite(s.s2) || !std::isfinite(std::abs(s.s1)) || s.s2 < -1e-6 ||
        s.s2 > 1.0 + 1e-6)
      throw Error(ErrorKind::NonFinite, "Bloch state left the physical region");
    if (n % stride == 0 || n == nsteps) traj.push_back(s);
  }
  return traj;
}

BlochState steady_state(const BlochParams& p) {
  p.validate();
  const double om = p.omega_rabi;
  const double den = p.detuning * p.detuning + 4.0 * p.gamma * p.gamma + 2.0 * om * om;
  BlochState s;
  s.s1 = I * om * cplx{-2.0 * p.gamma, -p.detuning} / den;
  s.s2 = om * om / den;
  return s;
}

cplx transmission_from_state(const BlochState& s, const BlochParams& p) {
  if (p.omega_rabi == 0.0) throw Error(ErrorKind::ZeroDrive, "transmission undefined at zero drive");
  return 1.0 - (2.0 * I * p.gamma / p.omega_rabi) * s.s1;
}

CoherentObservables coherent_observables(const BlochParams& p, const UnitSystem& u) {
  p.validate();
  CoherentObservables o;
  auto ss = steady_state(p);
  o.jc = 2.0 * p.gamma * ss.s2;
  if (p.omega_rabi == 0.0) {
    o.limit = LimitFlag::ZeroDrive;
    o.tilde_tp = single_photon_solution(p.detuning, p.gamma, u).t1p;
  } else {
    o.tilde_tp = transmission_from_state(ss, p);
  }
  o.chi = (o.tilde_tp - 1.0) / (2.0 * I);
  o.phi_total = o.tilde_tp == cplx{0.0, 0.0} ? 0.0 : complex_phase(o.tilde_tp);
  return o;
}

void write_trajectory_csv(std::ostream& os, const std::vector<BlochState>& traj,
                          const BlochParams& p) {
  os << "# detuning=" << format_number(p.detuning) << " gamma=" << format_number(p.gamma)
     << " omega_rabi=" << format_number(p.omega_rabi) << "\n";
  os << "t,re_s1,im_s1,s2,jc\n";
  for (const auto& s : traj) {
    os << format_number(s.time) << ',' << format_number(s.s1.real()) << ','
       << format_number(s.s1.imag()) << ',' << format_number(s.s2) << ','
       << format_number(2.0 * p.gamma * s.s2) << '\n';
  }
}

}  // namespace wqed
