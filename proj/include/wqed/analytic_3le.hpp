#pragma once

#include <optional>

#include "wqed/types.hpp"

namespace wqed {

// Probe coherence across a ladder emitter in the presence of a weak drive.
// drive is Fock(1, L) or a weak coherent beam; the probe intensity used as
// prefactor defaults to the drive's (matched beams).
CoherenceResult cross_g1(double probe_detuning, double drive_detuning, double gamma_p,
                         double gamma_d, const FieldInput& drive,
                         LimitSide side = LimitSide::None,
                         std::optional<double> probe_intensity = std::nullopt,
                         const UnitSystem& u = {});

struct CrossKerrCoefficient {
  double delta_phi = 0.0;  // phase of the cross bracket
  double kc = 0.0;         // delta_phi / Ed^2
};

CrossKerrCoefficient cross_kerr_coefficient(double probe_detuning, double drive_detuning,
                                            double gamma_p, double gamma_d,
                                            double drive_amplitude, const UnitSystem& u = {});

// Real-space eigenstate for one probe photon (x1) and one drive photon (x2)
// incident from the left on a ladder emitter.
class LadderTwoPhotonEigenstate {
 public:
  LadderTwoPhotonEigenstate(double kp, double kd, const EmitterConfig& emitter, double L,
                            const UnitSystem& u = {});

  cplx gR(double x) const;  // probe single-photon right amplitude
  cplx gL(double x) const;
  cplx gRR(double x1, double x2) const;
  cplx gLR(double x1, double x2) const;
  cplx gRL(double x1, double x2) const;
  cplx gLL(double x1, double x2) const;
  cplx eR(double x) const;
  cplx eL(double x) const;

  double probe_detuning() const { return dp_; }
  double drive_detuning() const { return dd_; }
  cplx ed() const { return ed_; }

 private:
  double kp_, kd_, L_, gp_, gd_, omega21_, vg_, dp_, dd_;
  cplx t1p_, r1p_, ep_, ed_;
  cplx corr_;  // 2 sqrt(Gp Gd)/vg * ep ed / L
  cplx a_;     // Delta_p + 2i Gamma_p
};

// int g~_RR^*(x',y) g~_RR(x,y) dy for x' < 0 < x. With keep_finite_size =
// false the exp(-i a (x - L/2)/vg) term is dropped.
cplx ladder_g1_rr(double probe_detuning, double drive_detuning, double gamma_p, double gamma_d,
                  double L, double xp, double x, bool keep_finite_size = true,
                  const UnitSystem& u = {});

}  // namespace wqed
