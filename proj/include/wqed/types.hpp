#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double pi = std::numbers::pi;

enum class ErrorKind {
  ZeroAmplitude,
  NotImplemented,
  UnsupportedPhotonNumber,
  InvalidArgument,
  ResonancePole,
  ZeroDrive,
  QuadratureFailure,
  StepTooLarge,
  NonFinite,
  DimensionOverflow,
  NormDrift,
  PacketOverlapResidual,
  InsufficientOverlap,
  IoFailure,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// hbar = 1. Frequencies are quoted in units of omega21.
struct UnitSystem {
  double vg = 1.0;
  double omega21 = 1.0;

  void validate() const;
};

enum class EmitterKind { TwoLevel, LadderThreeLevel };

struct EmitterConfig {
  EmitterKind kind = EmitterKind::TwoLevel;
  double omega21 = 1.0;
  double omega32 = 1.0;  // ladder only
  double gamma_p = 0.1;
  std::optional<double> gamma_d;  // ladder only

  static EmitterConfig two_level(double gamma_p, double omega21 = 1.0);
  static EmitterConfig ladder(double gamma_p, double gamma_d, double omega21 = 1.0,
                              double omega32 = 1.0);

  void validate() const;
  double gbar_p(const UnitSystem& u = {}) const;
  double gbar_d(const UnitSystem& u = {}) const;
};

// gbar = sqrt(2 vg Gamma) and its inverse.
double coupling_from_rate(double gamma, double vg = 1.0);
double rate_from_coupling(double gbar, double vg = 1.0);

enum class Channel { Probe, Drive };

struct FieldInput {
  enum class Variant { Fock, Coherent };

  Variant variant = Variant::Fock;
  int n = 1;               // Fock only
  double L = 80.0;         // Fock only
  double omega_rabi = 0.0; // Coherent only
  double detuning = 0.0;
  Channel channel = Channel::Probe;

  static FieldInput fock(int n, double L, double detuning, Channel ch = Channel::Probe);
  static FieldInput coherent(double omega_rabi, double detuning, Channel ch = Channel::Probe);

  void validate() const;
  // Photons per length. For a coherent beam this needs the rate of the
  // transition it drives.
  double intensity(double gamma, const UnitSystem& u = {}) const;
};

struct PhaseDecomposition {
  double phi_linear = 0.0;
  double phi_nonlinear = 0.0;
  double phi_total = 0.0;
};

// Principal angle in (-pi, pi]. Throws ZeroAmplitude for z == 0.
double complex_phase(cplx z);

// Wraps any real angle to (-pi, pi].
double wrap_phase(double phi);

PhaseDecomposition decompose(cplx linear, cplx bracket);

enum class LimitFlag { None, FromAbove, FromBelow, ZeroDrive };

// Which one-sided limit to report when a formula is evaluated on its pole.
enum class LimitSide { None, Above, Below };

struct CoherenceResult {
  double prefactor = 0.0;  // intensity multiplying the bracketed amplitude
  cplx linear{1.0, 0.0};
  cplx bracket{1.0, 0.0};
  std::vector<cplx> bracket_terms;  // bracket = sum of these
  PhaseDecomposition phases;
  LimitFlag limit = LimitFlag::None;
  bool weak_field = false;
};

}  // namespace wqed
