#include <algorithm>
#include <cmath>

#include "wqed/fock_oracle.hpp"

namespace wqed {

namespace {

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

Propagator::Propagator(const SectorHamiltonian& h, const EvolveOptions& opt) : h_(h), opt_(opt) {
  radius_ = opt_.spectral_margin * estimate_spectral_radius(h_, opt_.power_iterations);
  if (!(radius_ > 0.0)) radius_ = 1.0;
  const std::size_t n = h_.dimension();
  t0_.resize(n);
  t1_.resize(n);
  t2_.resize(n);
  acc_.resize(n);
}

void Propagator::advance(std::vector<cplx>& psi, double duration) {
  if (psi.size() != h_.dimension())
    throw Error(ErrorKind::InvalidArgument, "state has wrong dimension");
  if (duration <= 0.0) return;
  const double nominal = opt_.dt > 0.0 ? opt_.dt : 20.0 / radius_;
  if (radius_ * nominal > 200.0)
    throw Error(ErrorKind::StepTooLarge, "Chebyshev step too long for the spectral radius");
  const auto nsteps = static_cast<std::size_t>(std::ceil(duration / nominal - 1e-12));
  const double dt = duration / static_cast<double>(nsteps);
  for (std::size_t s = 0; s < nsteps; ++s) {
    step(psi, dt);
    const double drift = std::abs(norm2(psi) - 1.0);
    drift_ = std::max(drift_, drift);
    if (!(drift <= opt_.norm_tol))
      throw Error(ErrorKind::NormDrift, "norm drifted by " + std::to_string(drift));
  }
}

void Propagator::step(std::vector<cplx>& psi, double dt) {
  const double a = radius_ * dt;
  const int kmax = static_cast<int>(std::ceil(a + 10.0 * std::cbrt(a) + 20.0));
  const std::size_t n = psi.size();
  const double inv_r = 1.0 / radius_;
  const cplx m1 = -I * inv_r;
  const cplx m2 = -2.0 * I * inv_r;

  t0_ = psi;
  h_.apply(t0_.data(), t1_.data());
  ++napply_;
  const double c0 = std::cyl_bessel_j(0.0, a);
  const double c1 = 2.0 * std::cyl_bessel_j(1.0, a);
  for (std::size_t i = 0; i < n; ++i) {
    t1_[i] *= m1;
    acc_[i] = c0 * t0_[i] + c1 * t1_[i];
  }
  for (int k = 2; k <= kmax; ++k) {
    h_.apply(t1_.data(), t2_.data());
    ++napply_;
    const double ck = 2.0 * std::cyl_bessel_j(static_cast<double>(k), a);
    for (std::size_t i = 0; i < n; ++i) {
      t2_[i] = m2 * t2_[i] + t0_[i];
      acc_[i] += ck * t2_[i];
    }
    std::swap(t0_, t1_);
    std::swap(t1_, t2_);
  }
  psi.swap(acc_);
}

std::vector<Snapshot> evolve(const SectorHamiltonian& h, const std::vector<cplx>& psi0,
                             double t_end, const std::vector<double>& snapshot_times,
                             const EvolveOptions& opt) {
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  if (std::abs(norm2(psi0) - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "initial state must be normalized");
  std::vector<double> times;
  for (double t : snapshot_times)
    if (t > 0.0 && t < t_end) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.push_back(t_end);

  Propagator prop(h, opt);
  std::vector<Snapshot> out;
  std::vector<cplx> psi = psi0;
  double now = 0.0;
  for (double t : times) {
    prop.advance(psi, t - now);
    now = t;
    out.push_back({t, psi});
  }
  return out;
}

}  // namespace wqed
