#include "wqed/analytic_2le.hpp"

#include <algorithm>
#include <cmath>

#include "limits.hpp"

namespace wqed {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
}

void require_length(double L) {
  if (!(L > 0.0)) throw Error(ErrorKind::InvalidArgument, "L must be positive");
}

double lorentz_den(double detuning, double gamma) {
  return detuning * detuning + 4.0 * gamma * gamma;
}

// Heaviside step with theta(0) = 1/2.
double step(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

}  // namespace

SinglePhotonSolution single_photon_solution(double detuning, double gamma, const UnitSystem& u) {
  require_gamma(gamma);
  SinglePhotonSolution s;
  cplx den{detuning, 2.0 * gamma};
  s.t1p = detuning / den;
  s.r1p = s.t1p - 1.0;
  s.ep = coupling_from_rate(gamma, u.vg) / den;
  s.detuning = detuning;
  s.gamma = gamma;
  return s;
}

double reflection_current_fock(int n, double detuning, double gamma, double L,
                               const UnitSystem& u) {
  require_gamma(gamma);
  require_length(L);
  double d0 = lorentz_den(detuning, gamma);
  double i1 = 1.0 / L;
  double single = u.vg * 4.0 * gamma * gamma / d0;
  if (n == 1) return single * i1;
  if (n == 2) {
    double vi = u.vg * i1;
    return single * 2.0 * i1 - vi * vi * 16.0 * gamma * gamma * gamma / (d0 * d0);
  }
  throw Error(ErrorKind::UnsupportedPhotonNumber, "n must be 1 or 2");
}

double reflection_current_coherent(double detuning, double gamma, double omega,
                                   const UnitSystem&) {
  require_gamma(gamma);
  if (!(omega >= 0.0)) throw Error(ErrorKind::InvalidArgument, "omega must be non-negative");
  double o2 = omega * omega;
  return 2.0 * gamma * o2 / (lorentz_den(detuning, gamma) + 2.0 * o2);
}

ExpansionCoefficients coherent_expansion_coefficients(double detuning, double gamma,
                                                      const UnitSystem& u) {
  require_gamma(gamma);
  double d0 = lorentz_den(detuning, gamma);
  return {u.vg * 4.0 * gamma * gamma / d0,
          -u.vg * u.vg * 16.0 * gamma * gamma * gamma / (d0 * d0)};
}

CoherenceResult g1_fock_two_photon(double detuning, double gamma, double L, LimitSide side,
                                   const UnitSystem& u) {
  require_gamma(gamma);
  require_length(L);
  CoherenceResult r;
  double i1 = 1.0 / L;
  r.prefactor = 2.0 * i1;
  double d0 = lorentz_den(detuning, gamma);
  if (detuning == 0.0) {
    // t1p B -> vg I / Gamma as detuning -> 0 from either side.
    detail::resonance_limit(r, side, cplx{u.vg * i1 / gamma, 0.0});
    return r;
  }
  auto sp = single_photon_solution(detuning, gamma, u);
  r.linear = sp.t1p;
  r.bracket_terms = {cplx{1.0, 0.0},
                     -8.0 * gamma * gamma * u.vg * i1 / (I * detuning * d0),
                     cplx{2.0 * gamma * u.vg * i1 / d0, 0.0}};
  r.bracket = r.bracket_terms[0] + r.bracket_terms[1] + r.bracket_terms[2];
  r.phases = decompose(r.linear, r.bracket);
  return r;
}

CoherenceResult g1_coherent(double detuning, double gamma, double omega, CoherentMode mode,
                            LimitSide side, const UnitSystem& u) {
  require_gamma(gamma);
  if (!(omega >= 0.0)) throw Error(ErrorKind::InvalidArgument, "omega must be non-negative");
  CoherenceResult r;
  double icp = omega * omega / (2.0 * u.vg * gamma);
  r.prefactor = icp;
  double d0 = lorentz_den(detuning, gamma);
  r.weak_field = mode == CoherentMode::WeakExpansion;

  if (mode == CoherentMode::Exact) {
    if (omega == 0.0) {
      auto sp = single_photon_solution(detuning, gamma, u);
      r.limit = LimitFlag::ZeroDrive;
      r.linear = sp.t1p;
      r.bracket = 1.0;
      r.bracket_terms = {cplx{1.0, 0.0}};
      if (detuning != 0.0) r.phases = decompose(r.linear, r.bracket);
      return r;
    }
    double o2 = omega * omega;
    cplx s1 = I * omega * cplx{-2.0 * gamma, -detuning} / (d0 + 2.0 * o2);
    cplx tt = 1.0 - (2.0 * I * gamma / omega) * s1;
    if (detuning == 0.0) {
      detail::resonance_limit(r, side, tt);
      return r;
    }
    auto sp = single_photon_solution(detuning, gamma, u);
    r.linear = sp.t1p;
    r.bracket = tt / sp.t1p;
    r.bracket_terms = {cplx{1.0, 0.0}, r.bracket - 1.0};
    r.phases = decompose(r.linear, r.bracket);
    return r;
  }

  if (detuning == 0.0) {
    detail::resonance_limit(r, side, cplx{u.vg * icp / gamma, 0.0});
    return r;
  }
  auto sp = single_photon_solution(detuning, gamma, u);
  r.linear = sp.t1p;
  r.bracket_terms = {cplx{1.0, 0.0}, -8.0 * gamma * gamma * u.vg * icp / (I * detuning * d0)};
  r.bracket = r.bracket_terms[0] + r.bracket_terms[1];
  r.phases = decompose(r.linear, r.bracket);
  return r;
}

KerrCoefficient kerr_coefficient(double detuning, double gamma, double field_amplitude,
                                 const UnitSystem& u) {
  require_gamma(gamma);
  if (!(field_amplitude > 0.0))
    throw Error(ErrorKind::InvalidArgument, "field amplitude must be positive");
  if (detuning == 0.0) throw Error(ErrorKind::ResonancePole, "Kerr coefficient at zero detuning");
  double e2 = field_amplitude * field_amplitude;
  double icp = e2 / (u.vg * u.vg);
  double g2 = gamma * gamma;
  double den_a = detuning * (detuning * detuning + g2);
  double den_b = detuning * (detuning * detuning + 4.0 * g2);
  KerrCoefficient k;
  k.arctan = std::atan(8.0 * g2 * u.vg * icp / den_a) / e2;
  k.small_angle = 8.0 * g2 / (u.vg * den_a);
  k.arctan_bracket = std::atan(8.0 * g2 * u.vg * icp / den_b) / e2;
  k.small_angle_bracket = 8.0 * g2 / (u.vg * den_b);
  k.out_of_validity = std::abs(detuning) < gamma;
  return k;
}

TwoPhotonEigenstate::TwoPhotonEigenstate(double kp, const EmitterConfig& emitter, double L,
                                         const UnitSystem& u)
    : kp_(kp), L_(L), gamma_(emitter.gamma_p), omega21_(emitter.omega21), vg_(u.vg) {
  emitter.validate();
  require_length(L);
  detuning_ = vg_ * kp_ - omega21_;
  gbar_ = coupling_from_rate(gamma_, vg_);
  sp_ = single_photon_solution(detuning_, gamma_, u);
  et_ = sp_.ep / std::sqrt(L_);
  w_out_ = cplx{2.0 * vg_ * kp_ - omega21_, 2.0 * gamma_};
  w_in_ = cplx{omega21_, -2.0 * gamma_};
}

cplx TwoPhotonEigenstate::gR(double x) const {
  return std::exp(I * kp_ * x) / std::sqrt(L_) * (step(-x) + sp_.t1p * step(x));
}

cplx TwoPhotonEigenstate::gL(double x) const {
  return std::exp(-I * kp_ * x) / std::sqrt(L_) * sp_.r1p * step(-x);
}

cplx TwoPhotonEigenstate::gRR(double x1, double x2) const {
  cplx c = 2.0 * gamma_ / vg_ * et_ * et_;
  cplx s = 0.0;
  double w12 = step(x2 - x1) * step(x1);
  double w21 = step(x1 - x2) * step(x2);
  if (w12 != 0.0) s += w12 * std::exp(I * (w_out_ * x2 + w_in_ * x1) / vg_);
  if (w21 != 0.0) s += w21 * std::exp(I * (w_out_ * x1 + w_in_ * x2) / vg_);
  return gR(x1) * gR(x2) + c * s;
}

cplx TwoPhotonEigenstate::gRL(double x1, double x2) const {
  // x1 is the right mover, x2 the left mover. The two correlated pieces are
  // the reflected partner emitted before (|x2| > x1) or after (x1 > |x2|)
  // the transmitted one.
  cplx c = 2.0 * std::sqrt(2.0) * gamma_ / vg_ * et_ * et_;
  cplx s = 0.0;
  double w_a = step(std::abs(x2) - x1) * step(x1) * step(-x2);
  double w_b = step(x1 - std::abs(x2)) * step(x1) * step(-x2);
  if (w_a != 0.0) s += w_a * std::exp(I * (-w_out_ * x2 + w_in_ * x1) / vg_);
  if (w_b != 0.0) s += w_b * std::exp(I * (w_out_ * x1 - w_in_ * x2) / vg_);
  return std::sqrt(2.0) * gR(x1) * gL(x2) + c * s;
}

cplx TwoPhotonEigenstate::gLL(double x1, double x2) const {
  cplx c = 2.0 * gamma_ / vg_ * et_ * et_;
  cplx s = 0.0;
  double w12 = step(x1 - x2) * step(-x1) * step(-x2);
  double w21 = step(x2 - x1) * step(-x1) * step(-x2);
  if (w12 != 0.0) s += w12 * std::exp(-I * (w_out_ * x2 + w_in_ * x1) / vg_);
  if (w21 != 0.0) s += w21 * std::exp(-I * (w_out_ * x1 + w_in_ * x2) / vg_);
  return gL(x1) * gL(x2) + c * s;
}

cplx TwoPhotonEigenstate::eR(double x) const {
  cplx corr = std::sqrt(2.0) * I * gbar_ / vg_ * et_ * et_ * std::exp(I * w_out_ * x / vg_);
  return std::sqrt(2.0) * gR(x) * et_ + corr * step(x);
}

cplx TwoPhotonEigenstate::eL(double x) const {
  cplx corr = std::sqrt(2.0) * I * gbar_ / vg_ * et_ * et_ * std::exp(-I * w_out_ * x / vg_);
  return std::sqrt(2.0) * gL(x) * et_ + corr * step(-x);
}

G1TwoPhotonTerms g1_two_photon_terms(double detuning, double gamma, double L, double xp,
                                     double x, const UnitSystem& u) {
  require_gamma(gamma);
  require_length(L);
  if (!(xp < 0.0 && x > 0.0)) throw Error(ErrorKind::InvalidArgument, "need x' < 0 < x");
  auto s = single_photon_solution(detuning, gamma, u);
  double kp = (u.omega21 + detuning) / u.vg;
  cplx ph = std::exp(I * kp * (x - xp)) / L;
  cplx a{detuning, 2.0 * gamma};
  cplx near = std::exp(I * a * x / u.vg);
  cplx far = std::exp(-I * a * (x - L / 2.0) / u.vg);
  cplx t = s.t1p, r = s.r1p, e2 = s.ep * s.ep;
  double r2 = std::norm(r);
  G1TwoPhotonTerms g;
  g.rr = ph * ((1.0 + std::norm(t)) * t - 4.0 / L * r * std::conj(t) * e2 +
               2.0 / L * r * std::conj(t) * e2 * (near + far));
  g.rl = ph * (r2 * t - 2.0 / L * r2 * e2 * (1.0 - far) + 2.0 / L * r2 * e2 * (near - 1.0));
  g.ee = 2.0 / (L * L) * std::norm(s.ep) * std::exp(I * kp * (x - xp)) * (t - r * near);
  return g;
}

double reflection_current_2_from_eigenstate(double kp, const EmitterConfig& emitter, double L,
                                            const UnitSystem& u) {
  TwoPhotonEigenstate st(kp, emitter, L, u);
  double gbar = emitter.gbar_p(u);
  auto integrand = [&](double x) {
    return I * gbar * (std::conj(st.eR(x)) * st.gRL(x, 0.0) +
                       std::sqrt(2.0) * std::conj(st.eL(x)) * st.gLL(x, 0.0));
  };
  // Panels of a few carrier periods keep the adaptive rule from having to
  // resolve many cycles at once.
  double period = 4.0 * pi / std::max({std::abs(kp), emitter.omega21 / u.vg, 1e-3});
  std::vector<double> cuts{0.0};
  for (double c = period; c < L / 2.0; c += period) {
    cuts.push_back(c);
    cuts.push_back(-c);
  }
  QuadratureOptions opt;
  opt.rel_tol = 1e-13;
  auto q = integrate_complex(integrand, -L / 2.0, L / 2.0, cuts, opt);
  if (!(q.error_estimate <= 1e-9) || !std::isfinite(q.value.real()))
    throw Error(ErrorKind::QuadratureFailure, "two-photon current integral did not converge");
  return 2.0 * q.value.real();
}

double reflection_current_2_finite_size(double detuning, double gamma, double L,
                                        const UnitSystem& u) {
  require_gamma(gamma);
  require_length(L);
  auto s = single_photon_solution(detuning, gamma, u);
  double gbar = coupling_from_rate(gamma, u.vg);
  cplx ep = s.ep, epc = std::conj(ep), t = s.t1p, r = s.r1p;
  cplx e1 = std::exp(I * cplx{detuning, 2.0 * gamma} * L / (2.0 * u.vg));
  cplx e2 = std::exp(I * cplx{-detuning, 2.0 * gamma} * L / (2.0 * u.vg));
  double decay = 1.0 - std::exp(-2.0 * gamma * L / u.vg);
  double ep4 = std::norm(ep) * std::norm(ep);
  double L2 = L * L;
  cplx right = I * gbar / (2.0 * L) * epc * r + gamma / L * std::norm(t) * std::norm(ep) +
               gamma / L2 * ep4 * decay +
               2.0 * gamma / L2 *
                   (ep * ep * ep * epc * std::conj(t) * (e1 - 1.0) +
                    epc * epc * epc * ep * t * (e2 - 1.0));
  cplx left = I * gbar / (2.0 * L) * std::norm(r) * epc * r + gamma / L2 * ep4 * decay +
              2.0 * gamma * u.vg / (I * L2 * gbar) *
                  (r * r * epc * epc * epc * (1.0 - e2) -
                   std::conj(r) * std::conj(r) * ep * ep * ep * (1.0 - e1));
  return 2.0 * (right + left).real();
}

}  // namespace wqed
