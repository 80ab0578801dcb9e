#include "wqed/analytic_3le.hpp"

#include <cmath>

#include "limits.hpp"
#include "wqed/analytic_2le.hpp"

namespace wqed {

namespace {

double step(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

double drive_intensity(const FieldInput& drive, double gamma_d, const UnitSystem& u) {
  drive.validate();
  if (drive.variant == FieldInput::Variant::Fock && drive.n != 1)
    throw Error(ErrorKind::UnsupportedPhotonNumber, "cross-Kerr drive must be a single photon");
  return drive.intensity(gamma_d, u);
}

}  // namespace

CoherenceResult cross_g1(double probe_detuning, double drive_detuning, double gamma_p,
                         double gamma_d, const FieldInput& drive, LimitSide side,
                         std::optional<double> probe_intensity, const UnitSystem& u) {
  if (!(gamma_p > 0.0) || !(gamma_d > 0.0))
    throw Error(ErrorKind::InvalidArgument, "rates must be positive");
  double id = drive_intensity(drive, gamma_d, u);
  CoherenceResult r;
  r.prefactor = probe_intensity.value_or(id);
  r.weak_field = drive.variant == FieldInput::Variant::Coherent;
  cplx drive_pole{-2.0 * gamma_d, probe_detuning + drive_detuning};  // i(Dp+Dd) - 2Gd

  if (probe_detuning == 0.0) {
    // t1p * correction -> Gd vg Id / (Gp (2Gd - i Dd)) as Dp -> 0.
    cplx total = gamma_d * u.vg * id / (gamma_p * cplx{2.0 * gamma_d, -drive_detuning});
    detail::resonance_limit(r, side, total);
    return r;
  }
  cplx probe_pole{-2.0 * gamma_p, probe_detuning};  // i Dp - 2 Gp
  r.linear = I * probe_detuning / probe_pole;
  r.bracket_terms = {cplx{1.0, 0.0}, -4.0 * gamma_p * gamma_d * u.vg * id /
                                         (I * probe_detuning * probe_pole * drive_pole)};
  r.bracket = r.bracket_terms[0] + r.bracket_terms[1];
  r.phases = decompose(r.linear, r.bracket);
  return r;
}

CrossKerrCoefficient cross_kerr_coefficient(double probe_detuning, double drive_detuning,
                                            double gamma_p, double gamma_d,
                                            double drive_amplitude, const UnitSystem& u) {
  if (!(drive_amplitude > 0.0))
    throw Error(ErrorKind::InvalidArgument, "drive amplitude must be positive");
  // Icd = Ed^2 / vg^2 = Omega_d^2 / (2 vg Gamma_d).
  double omega_d = drive_amplitude * coupling_from_rate(gamma_d, u.vg) / u.vg;
  auto g = cross_g1(probe_detuning, drive_detuning, gamma_p, gamma_d,
                    FieldInput::coherent(omega_d, drive_detuning, Channel::Drive),
                    LimitSide::None, std::nullopt, u);
  CrossKerrCoefficient k;
  k.delta_phi = g.phases.phi_nonlinear;
  k.kc = k.delta_phi / (drive_amplitude * drive_amplitude);
  return k;
}

LadderTwoPhotonEigenstate::LadderTwoPhotonEigenstate(double kp, double kd,
                                                     const EmitterConfig& emitter, double L,
                                                     const UnitSystem& u)
    : kp_(kp), kd_(kd), L_(L), omega21_(emitter.omega21), vg_(u.vg) {
  emitter.validate();
  if (emitter.kind != EmitterKind::LadderThreeLevel)
    throw Error(ErrorKind::InvalidArgument, "ladder eigenstate needs a ladder emitter");
  if (!(L > 0.0)) throw Error(ErrorKind::InvalidArgument, "L must be positive");
  gp_ = emitter.gamma_p;
  gd_ = *emitter.gamma_d;
  dp_ = vg_ * kp_ - emitter.omega21;
  dd_ = vg_ * kd_ - emitter.omega32;
  auto sp = single_photon_solution(dp_, gp_, u);
  t1p_ = sp.t1p;
  r1p_ = sp.r1p;
  ep_ = sp.ep;
  ed_ = emitter.gbar_d(u) / cplx{dp_ + dd_, 2.0 * gd_};
  corr_ = 2.0 * std::sqrt(gp_ * gd_) / vg_ * ep_ * ed_ / L_;
  a_ = cplx{dp_, 2.0 * gp_};
}

cplx LadderTwoPhotonEigenstate::gR(double x) const {
  return std::exp(I * kp_ * x) / std::sqrt(L_) * (step(-x) + t1p_ * step(x));
}

cplx LadderTwoPhotonEigenstate::gL(double x) const {
  return std::exp(-I * kp_ * x) / std::sqrt(L_) * r1p_ * step(-x);
}

cplx LadderTwoPhotonEigenstate::gRR(double x1, double x2) const {
  cplx free = gR(x1) * std::exp(I * kd_ * x2) / std::sqrt(L_);
  double w = step(x2 - x1) * step(x1);
  if (w == 0.0) return free;
  return free - w * corr_ * std::exp(I * (kp_ * x1 + kd_ * x2) + I * a_ * (x2 - x1) / vg_);
}

cplx LadderTwoPhotonEigenstate::gLR(double x1, double x2) const {
  cplx free = gL(x1) * std::exp(I * kd_ * x2) / std::sqrt(L_);
  double w = step(x2 + x1) * step(-x1);
  if (w == 0.0) return free;
  return free - w * corr_ * std::exp(I * (-kp_ * x1 + kd_ * x2) + I * a_ * (x2 + x1) / vg_);
}

cplx LadderTwoPhotonEigenstate::gRL(double x1, double x2) const {
  double w = step(-x2 - x1) * step(x1);
  if (w == 0.0) return 0.0;
  return -w * corr_ * std::exp(I * (kp_ * x1 - kd_ * x2) - I * a_ * (x2 + x1) / vg_);
}

cplx LadderTwoPhotonEigenstate::gLL(double x1, double x2) const {
  double w = step(x1 - x2) * step(-x1);
  if (w == 0.0) return 0.0;
  return -w * corr_ * std::exp(-I * (kp_ * x1 + kd_ * x2) - I * a_ * (x2 - x1) / vg_);
}

cplx LadderTwoPhotonEigenstate::eR(double x) const {
  double gbar_d = coupling_from_rate(gd_, vg_);
  cplx w{vg_ * (kp_ + kd_) - omega21_, 2.0 * gp_};
  cplx free = std::exp(I * kd_ * x) / std::sqrt(L_) * ep_ / std::sqrt(L_);
  cplx corr = -I * gbar_d / vg_ * ep_ * ed_ / L_ * std::exp(I * w * x / vg_);
  return free + corr * step(x);
}

cplx LadderTwoPhotonEigenstate::eL(double x) const {
  double gbar_d = coupling_from_rate(gd_, vg_);
  cplx w{vg_ * (kp_ + kd_) - omega21_, 2.0 * gp_};
  return -I * gbar_d / vg_ * ep_ * ed_ / L_ * std::exp(-I * w * x / vg_) * step(-x);
}

cplx ladder_g1_rr(double probe_detuning, double drive_detuning, double gamma_p, double gamma_d,
                  double L, double xp, double x, bool keep_finite_size, const UnitSystem& u) {
  if (!(xp < 0.0 && x > 0.0)) throw Error(ErrorKind::InvalidArgument, "need x' < 0 < x");
  auto sp = single_photon_solution(probe_detuning, gamma_p, u);
  double kp = (u.omega21 + probe_detuning) / u.vg;
  double gbar_d = coupling_from_rate(gamma_d, u.vg);
  cplx ed = gbar_d / cplx{probe_detuning + drive_detuning, 2.0 * gamma_d};
  cplx a{probe_detuning, 2.0 * gamma_p};
  cplx tail = keep_finite_size ? std::exp(-I * a * (x - L / 2.0) / u.vg) : cplx{0.0, 0.0};
  cplx corr = I * gbar_d / u.vg * ed * sp.ep * sp.ep / L * (1.0 - tail);
  return std::exp(I * kp * (x - xp)) / L * (sp.t1p - corr);
}

}  // namespace wqed
