#pragma once

#include "wqed/quadrature.hpp"
#include "wqed/types.hpp"

namespace wqed {

struct SinglePhotonSolution {
  cplx t1p;
  cplx r1p;
  cplx ep;  // emitter amplitude times sqrt(L)
  double detuning = 0.0;
  double gamma = 0.0;
};

SinglePhotonSolution single_photon_solution(double detuning, double gamma,
                                            const UnitSystem& u = {});

// Steady reflection current of an n-photon plane-wave Fock input on a ring of
// length L (n = 1 or 2).
double reflection_current_fock(int n, double detuning, double gamma, double L,
                               const UnitSystem& u = {});

// Exact steady reflection current for a coherent drive of Rabi frequency omega.
double reflection_current_coherent(double detuning, double gamma, double omega,
                                   const UnitSystem& u = {});

struct ExpansionCoefficients {
  double c1 = 0.0;  // per unit intensity
  double c2 = 0.0;  // per unit intensity squared
};

// Jc = c1 Icp + c2 Icp^2 + O(Icp^3).
ExpansionCoefficients coherent_expansion_coefficients(double detuning, double gamma,
                                                      const UnitSystem& u = {});

// First-order coherence across the emitter for a two-photon Fock input. The
// bracket terms are {1, intensity-dependent phase term, emitter-occupation
// term}. At detuning == 0 a LimitSide must be given.
CoherenceResult g1_fock_two_photon(double detuning, double gamma, double L,
                                   LimitSide side = LimitSide::None, const UnitSystem& u = {});

enum class CoherentMode { Exact, WeakExpansion };

CoherenceResult g1_coherent(double detuning, double gamma, double omega, CoherentMode mode,
                            LimitSide side = LimitSide::None, const UnitSystem& u = {});

struct KerrCoefficient {
  // Denominator Delta (Delta^2 + Gamma^2), as printed next to the Kerr
  // coefficient.
  double arctan = 0.0;
  double small_angle = 0.0;
  // Denominator Delta (Delta^2 + 4 Gamma^2), as in the coherence bracket.
  double arctan_bracket = 0.0;
  double small_angle_bracket = 0.0;
  bool out_of_validity = false;  // |Delta| < Gamma
};

KerrCoefficient kerr_coefficient(double detuning, double gamma, double field_amplitude,
                                 const UnitSystem& u = {});

// Real-space two-photon scattering eigenstate of a two-level emitter.
// The step function takes the value 1/2 at the origin.
class TwoPhotonEigenstate {
 public:
  TwoPhotonEigenstate(double kp, const EmitterConfig& emitter, double L, const UnitSystem& u = {});

  cplx gR(double x) const;
  cplx gL(double x) const;
  cplx gRR(double x1, double x2) const;
  cplx gRL(double x1, double x2) const;
  cplx gLL(double x1, double x2) const;
  cplx eR(double x) const;
  cplx eL(double x) const;

  double kp() const { return kp_; }
  double L() const { return L_; }
  double detuning() const { return detuning_; }
  const SinglePhotonSolution& single() const { return sp_; }

 private:
  double kp_, L_, gamma_, omega21_, vg_, detuning_, gbar_;
  SinglePhotonSolution sp_;
  cplx et_;      // ep / sqrt(L)
  cplx w_out_;   // 2 vg kp - omega21 + 2i Gamma
  cplx w_in_;    // omega21 - 2i Gamma
};

// Closed forms for the three contributions to G1 of the two-photon state at
// x' < 0 < x, finite-L terms included.
struct G1TwoPhotonTerms {
  cplx rr;  // 2 * int g_RR^*(x',y) g_RR(x,y) dy
  cplx rl;  // int g_RL^*(x',y) g_RL(x,y) dy
  cplx ee;  // e_R^*(x') e_R(x)
};

G1TwoPhotonTerms g1_two_photon_terms(double detuning, double gamma, double L, double xp,
                                     double x, const UnitSystem& u = {});

// Two-photon reflection current by quadrature over the eigenstate
// amplitudes. Throws QuadratureFailure if the error estimate exceeds 1e-9.
double reflection_current_2_from_eigenstate(double kp, const EmitterConfig& emitter, double L,
                                            const UnitSystem& u = {});

// Sum of the two closed-form pieces of the two-photon current with their
// finite-L exponentials retained.
double reflection_current_2_finite_size(double detuning, double gamma, double L,
                                        const UnitSystem& u = {});

}  // namespace wqed
