#include <cmath>

#include "wqed/fock_oracle.hpp"

namespace wqed {

namespace {

// u_n(x) = exp(i q_n x) / sqrt(L) for the right-moving probe modes.
std::vector<cplx> mode_functions(const LatticeConfig& c, double x) {
  std::vector<cplx> u(c.right_modes());
  const double s = 1.0 / std::sqrt(c.L);
  for (int n = 0; n < c.right_modes(); ++n) {
    const double q = 2.0 * pi * (n - c.n_modes) / c.L;
    u[n] = s * std::exp(I * q * x);
  }
  return u;
}

// Right-moving field of a freely evolved single packet at position x.
cplx free_field(const LatticeConfig& c, const std::vector<cplx>& f, double x, double t) {
  cplx s = 0.0;
  for (int n = 0; n < c.right_modes(); ++n) {
    const double q = 2.0 * pi * (n - c.n_modes) / c.L;
    s += f[n] * std::exp(I * q * (x - c.vg * t));
  }
  return s / std::sqrt(c.L);
}

// For each grid point, the partial projection F_x(l) = sum_n u_n(x) Phi(n, l)
// over right-moving probe modes n, with Phi the symmetric pair amplitude
// (two-photon 2LE) or the probe x drive amplitude (ladder). Also returns the
// single-photon field where the sector has one.
struct Projection {
  std::vector<std::vector<cplx>> f;  // [grid][l]
  std::vector<cplx> single;          // one-photon field or emitter-branch field
};

Projection project(const SectorHamiltonian& h, const std::vector<cplx>& psi,
                   const std::vector<double>& grid) {
  const auto& c = h.config();
  const int n = c.right_modes();
  const int m = h.photon_modes();
  Projection p;
  p.f.assign(grid.size(), std::vector<cplx>(m, cplx{0.0, 0.0}));
  p.single.assign(grid.size(), cplx{0.0, 0.0});
  std::vector<std::vector<cplx>> u;
  for (double x : grid) u.push_back(mode_functions(c, x));

  switch (c.sector) {
    case Sector::OneExcitation:
      for (std::size_t a = 0; a < grid.size(); ++a)
        for (int j = 0; j < n; ++j) p.single[a] += u[a][j] * psi[j];
      break;
    case Sector::TwoExcitation2LE: {
      const double r2 = 1.0 / std::sqrt(2.0);
      const std::size_t npair = static_cast<std::size_t>(m) * (m + 1) / 2;
      for (int j = 0; j < m; ++j) {
        for (int l = j; l < m; ++l) {
          const cplx v = psi[h.pair_index(j, l)];
          if (v == cplx{0.0, 0.0}) continue;
          if (j == l) {
            if (j < n)
              for (std::size_t a = 0; a < grid.size(); ++a) p.f[a][j] += u[a][j] * v;
            continue;
          }
          const cplx phi = v * r2;
          if (j < n)
            for (std::size_t a = 0; a < grid.size(); ++a) p.f[a][l] += u[a][j] * phi;
          if (l < n)
            for (std::size_t a = 0; a < grid.size(); ++a) p.f[a][j] += u[a][l] * phi;
        }
      }
      for (std::size_t a = 0; a < grid.size(); ++a)
        for (int j = 0; j < n; ++j) p.single[a] += u[a][j] * psi[npair + j];
      break;
    }
    case Sector::TwoExcitationLadder:
      for (int j = 0; j < n; ++j) {
        const cplx* row = psi.data() + static_cast<std::size_t>(j) * m;
        for (std::size_t a = 0; a < grid.size(); ++a) {
          const cplx uj = u[a][j];
          auto& fa = p.f[a];
          for (int l = 0; l < m; ++l) fa[l] += uj * row[l];
        }
      }
      break;
  }
  return p;
}

cplx coherence(const SectorHamiltonian& h, const Projection& p, std::size_t a, std::size_t b) {
  switch (h.config().sector) {
    case Sector::OneExcitation: return std::conj(p.single[a]) * p.single[b];
    case Sector::TwoExcitation2LE: {
      cplx s = 0.0;
      for (std::size_t l = 0; l < p.f[a].size(); ++l) s += std::conj(p.f[a][l]) * p.f[b][l];
      return 2.0 * s + std::conj(p.single[a]) * p.single[b];
    }
    case Sector::TwoExcitationLadder: {
      cplx s = 0.0;
      for (std::size_t l = 0; l < p.f[a].size(); ++l) s += std::conj(p.f[a][l]) * p.f[b][l];
      return s;
    }
  }
  return 0.0;
}

double gaussian_overlap(double s1, double c1, double s2, double c2) {
  // int rho1 rho2 / sqrt(int rho1^2 int rho2^2) for Gaussian densities of
  // standard deviation s and centre c.
  const double v = s1 * s1 + s2 * s2;
  const double cross = std::exp(-(c1 - c2) * (c1 - c2) / (2.0 * v)) / std::sqrt(2.0 * pi * v);
  const double self = 1.0 / (2.0 * std::sqrt(pi) * std::sqrt(s1 * s2));
  return cross / self;
}

struct RunPlan {
  double t_arrival;
  double t_end;
};

RunPlan plan(const LatticeConfig& c) {
  const double x0 = c.launch();
  if (!(x0 < 0.0)) throw Error(ErrorKind::InvalidArgument, "packet must start left of the emitter");
  RunPlan p;
  p.t_arrival = -x0 / c.vg;
  p.t_end = p.t_arrival + c.L / (4.0 * c.vg);
  // Incoming tail still at the emitter when the run stops.
  const double z = c.sigma_k * (x0 + c.vg * p.t_end);
  if (std::exp(-0.5 * z * z) > 1e-6)
    throw Error(ErrorKind::PacketOverlapResidual, "packet has not cleared the emitter by t_end");
  return p;
}

ScatteringOutcome run(const LatticeConfig& c, Sector expected, const ScatterOptions& opt) {
  if (c.sector != expected) throw Error(ErrorKind::InvalidArgument, "config has the wrong sector");
  const auto p = plan(c);
  SectorHamiltonian h(c);
  auto psi0 = initial_state(h);
  const double d = c.offset();

  Propagator prop(h, opt.evolve);
  std::vector<cplx> psi = psi0;
  prop.advance(psi, p.t_arrival);

  ScatteringOutcome out;
  out.t_arrival = p.t_arrival;
  out.t_end = p.t_end;

  auto f = packet_amplitudes(c, c.sigma_k, c.launch());
  {
    auto proj = project(h, psi, {-d, d});
    const cplx g = coherence(h, proj, 0, 1);
    cplx gfree = std::conj(free_field(c, f, -d, p.t_arrival)) * free_field(c, f, d, p.t_arrival);
    if (c.sector == Sector::TwoExcitation2LE) gfree *= 2.0;
    out.g1_ratio = g / gfree;
  }
  if (!opt.g1_grid.empty()) {
    out.g1_grid = opt.g1_grid;
    out.g1_matrix = g1_from_state(h, psi, opt.g1_grid);
  }

  prop.advance(psi, p.t_end - p.t_arrival);
  out.norm_drift = prop.max_norm_drift();

  const auto counts = photon_counts(h, psi);
  const double nphot = c.sector == Sector::TwoExcitation2LE ? 2.0 : 1.0;
  out.transmission_prob = counts.right / nphot;
  out.reflection_prob = counts.left / nphot;
  out.residual_emitter_pop = counts.emitter;
  out.left_flux_integral = counts.left;
  if (counts.emitter > 1e-6)
    throw Error(ErrorKind::PacketOverlapResidual, "emitter still excited at t_end");

  if (c.sector == Sector::OneExcitation) {
    cplx ov = 0.0;
    for (int j = 0; j < c.right_modes(); ++j)
      ov += std::conj(f[j] * std::exp(-I * h.detuning_of_mode(j) * p.t_end)) * psi[j];
    out.transmitted_phase = std::abs(ov) > 0.0 ? complex_phase(ov) : 0.0;
  }
  return out;
}

}  // namespace

std::vector<std::vector<cplx>> g1_from_state(const SectorHamiltonian& h,
                                             const std::vector<cplx>& psi,
                                             const std::vector<double>& grid) {
  if (psi.size() != h.dimension()) throw Error(ErrorKind::InvalidArgument, "wrong dimension");
  auto proj = project(h, psi, grid);
  std::vector<std::vector<cplx>> g(grid.size(), std::vector<cplx>(grid.size()));
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = 0; b < grid.size(); ++b) g[a][b] = coherence(h, proj, a, b);
  return g;
}

PhotonCounts photon_counts(const SectorHamiltonian& h, const std::vector<cplx>& psi) {
  const auto& c = h.config();
  const int n = c.right_modes();
  const int m = h.photon_modes();
  PhotonCounts pc;
  switch (c.sector) {
    case Sector::OneExcitation:
      for (int j = 0; j < m; ++j) (j < n ? pc.right : pc.left) += std::norm(psi[j]);
      pc.emitter = std::norm(psi[m]);
      break;
    case Sector::TwoExcitation2LE: {
      const std::size_t npair = static_cast<std::size_t>(m) * (m + 1) / 2;
      for (int j = 0; j < m; ++j) {
        for (int l = j; l < m; ++l) {
          const double w = std::norm(psi[h.pair_index(j, l)]);
          if (j == l) {
            (j < n ? pc.right : pc.left) += 2.0 * w;
          } else {
            (j < n ? pc.right : pc.left) += w;
            (l < n ? pc.right : pc.left) += w;
          }
        }
      }
      for (int l = 0; l < m; ++l) {
        const double w = std::norm(psi[npair + l]);
        (l < n ? pc.right : pc.left) += w;
        pc.emitter += w;
      }
      break;
    }
    case Sector::TwoExcitationLadder: {
      const std::size_t mm = static_cast<std::size_t>(m) * m;
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
          const double w = std::norm(psi[static_cast<std::size_t>(j) * m + l]);
          (j < n ? pc.right : pc.left) += w;
          (l < n ? pc.drive_right : pc.drive_left) += w;
        }
      for (int l = 0; l < m; ++l) {
        const double w = std::norm(psi[mm + l]);
        (l < n ? pc.drive_right : pc.drive_left) += w;
        pc.emitter += w;
      }
      pc.emitter += std::norm(psi[mm + m]);
      break;
    }
  }
  return pc;
}

ScatteringOutcome scatter_one_photon(const LatticeConfig& c, const ScatterOptions& opt) {
  return run(c, Sector::OneExcitation, opt);
}

ScatteringOutcome scatter_two_photons_2le(const LatticeConfig& c, const ScatterOptions& opt) {
  return run(c, Sector::TwoExcitation2LE, opt);
}

ScatteringOutcome scatter_probe_drive_ladder(const LatticeConfig& c, const ScatterOptions& opt) {
  if (c.sector != Sector::TwoExcitationLadder)
    throw Error(ErrorKind::InvalidArgument, "config has the wrong sector");
  const double ovl = gaussian_overlap(1.0 / c.sigma_k, c.launch(), 1.0 / c.drive_width(),
                                      c.drive_launch());
  if (ovl < c.min_overlap)
    throw Error(ErrorKind::InsufficientOverlap,
                "probe and drive overlap " + std::to_string(ovl) + " below threshold");
  return run(c, Sector::TwoExcitationLadder, opt);
}

KerrMeasurement measure_kerr(const LatticeConfig& cfg, const ScatterOptions& opt) {
  KerrMeasurement k;
  LatticeConfig one = cfg;
  one.sector = Sector::OneExcitation;
  k.one = scatter_one_photon(one, opt);
  k.two = scatter_two_photons_2le(cfg, opt);
  k.phi_linear = complex_phase(k.one.g1_ratio);
  k.phi_nonlinear = complex_phase(k.two.g1_ratio / k.one.g1_ratio);
  k.flux_deficit = k.two.left_flux_integral - 2.0 * k.one.left_flux_integral;
  k.integrated_density_sq = cfg.sigma_k / (2.0 * std::sqrt(pi));
  return k;
}

CrossKerrMeasurement measure_cross_kerr(const LatticeConfig& cfg, const ScatterOptions& opt) {
  CrossKerrMeasurement k;
  LatticeConfig one = cfg;
  one.sector = Sector::OneExcitation;
  k.probe_only = scatter_one_photon(one, opt);
  k.with_drive = scatter_probe_drive_ladder(cfg, opt);
  k.delta_phi = complex_phase(k.with_drive.g1_ratio / k.probe_only.g1_ratio);
  return k;
}

}  // namespace wqed
