#include "wqed/types.hpp"

#include <cmath>

namespace wqed {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroAmplitude: return "ZeroAmplitude";
    case ErrorKind::NotImplemented: return "NotImplemented";
    case ErrorKind::UnsupportedPhotonNumber: return "UnsupportedPhotonNumber";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ResonancePole: return "ResonancePole";
    case ErrorKind::ZeroDrive: return "ZeroDrive";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::NormDrift: return "NormDrift";
    case ErrorKind::PacketOverlapResidual: return "PacketOverlapResidual";
    case ErrorKind::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

void UnitSystem::validate() const {
  if (!(vg > 0.0)) throw Error(ErrorKind::InvalidArgument, "vg must be positive");
  if (!(omega21 > 0.0)) throw Error(ErrorKind::InvalidArgument, "omega21 must be positive");
}

EmitterConfig EmitterConfig::two_level(double gamma_p, double omega21) {
  EmitterConfig e;
  e.kind = EmitterKind::TwoLevel;
  e.gamma_p = gamma_p;
  e.omega21 = omega21;
  e.validate();
  return e;
}

EmitterConfig EmitterConfig::ladder(double gamma_p, double gamma_d, double omega21,
                                    double omega32) {
  EmitterConfig e;
  e.kind = EmitterKind::LadderThreeLevel;
  e.gamma_p = gamma_p;
  e.gamma_d = gamma_d;
  e.omega21 = omega21;
  e.omega32 = omega32;
  e.validate();
  return e;
}

void EmitterConfig::validate() const {
  if (!(gamma_p > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma_p must be positive");
  if (kind == EmitterKind::LadderThreeLevel) {
    if (!gamma_d || !(*gamma_d > 0.0))
      throw Error(ErrorKind::InvalidArgument, "ladder emitter needs gamma_d > 0");
  } else if (gamma_d) {
    throw Error(ErrorKind::InvalidArgument, "gamma_d given for a two-level emitter");
  }
}

double EmitterConfig::gbar_p(const UnitSystem& u) const { return coupling_from_rate(gamma_p, u.vg); }

double EmitterConfig::gbar_d(const UnitSystem& u) const {
  if (!gamma_d) throw Error(ErrorKind::InvalidArgument, "gamma_d absent");
  return coupling_from_rate(*gamma_d, u.vg);
}

double coupling_from_rate(double gamma, double vg) { return std::sqrt(2.0 * vg * gamma); }

double rate_from_coupling(double gbar, double vg) { return gbar * gbar / (2.0 * vg); }

FieldInput FieldInput::fock(int n, double L, double detuning, Channel ch) {
  FieldInput f;
  f.variant = Variant::Fock;
  f.n = n;
  f.L = L;
  f.detuning = detuning;
  f.channel = ch;
  f.validate();
  return f;
}

FieldInput FieldInput::coherent(double omega_rabi, double detuning, Channel ch) {
  FieldInput f;
  f.variant = Variant::Coherent;
  f.omega_rabi = omega_rabi;
  f.detuning = detuning;
  f.channel = ch;
  f.validate();
  return f;
}

void FieldInput::validate() const {
  if (variant == Variant::Fock) {
    if (n == 3) throw Error(ErrorKind::NotImplemented, "Fock inputs with n = 3 are not supported");
    if (n < 1 || n > 2) throw Error(ErrorKind::UnsupportedPhotonNumber, "n must be 1 or 2");
    if (!(L > 0.0)) throw Error(ErrorKind::InvalidArgument, "L must be positive");
  } else if (!(omega_rabi >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Rabi frequency must be non-negative");
  }
}

double FieldInput::intensity(double gamma, const UnitSystem& u) const {
  if (variant == Variant::Fock) return n / L;
  return omega_rabi * omega_rabi / (2.0 * u.vg * gamma);
}

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

double complex_phase(cplx z) {
  if (z == cplx{0.0, 0.0}) throw Error(ErrorKind::ZeroAmplitude, "phase of zero amplitude");
  double a = std::atan2(z.imag(), z.real());
  return a == -pi ? pi : a;
}

PhaseDecomposition decompose(cplx linear, cplx bracket) {
  PhaseDecomposition p;
  p.phi_linear = complex_phase(linear);
  p.phi_nonlinear = complex_phase(bracket);
  p.phi_total = complex_phase(linear * bracket);
  return p;
}

}  // namespace wqed
