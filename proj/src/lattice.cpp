#include <cmath>
#include <random>

#include "wqed/fock_oracle.hpp"

namespace wqed {

LatticeConfig LatticeConfig::for_packet(const EmitterConfig& emitter, Sector sector,
                                        double detuning, double sigma_k, double band,
                                        double vg) {
  LatticeConfig c;
  c.emitter = emitter;
  c.sector = sector;
  c.vg = vg;
  c.sigma_k = sigma_k;
  // Smallest ring that still puts four grid points inside sigma_k.
  c.L = 8.0 * pi / sigma_k;
  c.n_modes = 2 * static_cast<int>(std::ceil(band * c.L / (4.0 * pi * vg)));
  c.k0 = (emitter.omega21 + detuning) / vg;
  c.drive_k0 = emitter.omega32 / vg;
  return c;
}

void LatticeConfig::validate() const {
  emitter.validate();
  auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidArgument, m); };
  if (n_modes < 64 || n_modes % 2 != 0) fail("n_modes must be even and >= 64");
  if (!(L > 0.0)) fail("L must be positive");
  if (!(vg > 0.0)) fail("vg must be positive");
  if (!(sigma_k > 0.0)) fail("sigma_k must be positive");
  if (!(coupling_scale >= 0.0) || !(drive_coupling_scale >= 0.0))
    fail("coupling scales must be non-negative");
  const double slack = 1.0 + 1e-9;
  if (sigma_k > emitter.gamma_p / (10.0 * vg) * slack)
    fail("sigma_k must not exceed gamma_p / (10 vg)");
  if (1.0 / sigma_k > L / 8.0 * slack) fail("packet extent 1/sigma_k must fit in L/8");
  if (sigma_k * slack < 4.0 * 2.0 * pi / L) fail("grid spacing 2 pi/L must resolve sigma_k");
  if (sector == Sector::TwoExcitation2LE && emitter.kind != EmitterKind::TwoLevel)
    fail("two-photon 2LE sector needs a two-level emitter");
  if (sector == Sector::TwoExcitationLadder && emitter.kind != EmitterKind::LadderThreeLevel)
    fail("ladder sector needs a ladder emitter");
  if (sector == Sector::TwoExcitationLadder && !(drive_width() > 0.0))
    fail("drive packet width must be positive");
}

double LatticeConfig::peak_density() const { return sigma_k / std::sqrt(2.0 * pi); }

double LatticeConfig::mode_detuning(int n) const {
  return vg * 2.0 * pi * (n - n_modes) / L;
}

std::size_t sector_dimension(const LatticeConfig& c) {
  const std::size_t m = 2 * static_cast<std::size_t>(c.right_modes());
  switch (c.sector) {
    case Sector::OneExcitation: return m + 1;
    case Sector::TwoExcitation2LE: return m * (m + 1) / 2 + m;
    case Sector::TwoExcitationLadder: return m * m + m + 1;
  }
  return 0;
}

SectorHamiltonian::SectorHamiltonian(const LatticeConfig& c) : cfg_(c) {
  c.validate();
  dim_ = sector_dimension(c);
  if (dim_ > c.dimension_cap)
    throw Error(ErrorKind::DimensionOverflow,
                "sector dimension " + std::to_string(dim_) + " exceeds cap " +
                    std::to_string(c.dimension_cap));
  m_ = 2 * c.right_modes();
  npair_ = static_cast<std::size_t>(m_) * (m_ + 1) / 2;
  delta_.resize(m_);
  for (int j = 0; j < m_; ++j) delta_[j] = c.mode_detuning(j % c.right_modes());
  const UnitSystem u{c.vg, c.emitter.omega21};
  gp_ = c.coupling_scale * c.emitter.gbar_p(u) / std::sqrt(c.L);
  dp_ = c.probe_detuning();
  if (c.emitter.kind == EmitterKind::LadderThreeLevel) {
    gd_ = c.drive_coupling_scale * c.emitter.gbar_d(u) / std::sqrt(c.L);
    dd_ = c.drive_detuning();
  }
}

SectorHamiltonian build_sector(const LatticeConfig& c) { return SectorHamiltonian(c); }

std::size_t SectorHamiltonian::pair_index(int j, int l) const {
  const auto js = static_cast<std::size_t>(j);
  return js * m_ - js * (js - 1) / 2 + static_cast<std::size_t>(l - j);
}

void SectorHamiltonian::apply(const cplx* in, cplx* out) const {
  switch (cfg_.sector) {
    case Sector::OneExcitation: apply_one(in, out); break;
    case Sector::TwoExcitation2LE: apply_two(in, out); break;
    case Sector::TwoExcitationLadder: apply_ladder(in, out); break;
  }
}

std::vector<cplx> SectorHamiltonian::apply(const std::vector<cplx>& in) const {
  if (in.size() != dim_) throw Error(ErrorKind::InvalidArgument, "state has wrong dimension");
  std::vector<cplx> out(dim_);
  apply(in.data(), out.data());
  return out;
}

void SectorHamiltonian::apply_one(const cplx* in, cplx* out) const {
  const cplx e = in[m_];
  cplx sum = 0.0;
  for (int j = 0; j < m_; ++j) {
    out[j] = delta_[j] * in[j] + gp_ * e;
    sum += in[j];
  }
  out[m_] = -dp_ * e + gp_ * sum;
}

void SectorHamiltonian::apply_two(const cplx* in, cplx* out) const {
  const cplx* e = in + npair_;
  cplx* oe = out + npair_;
  const double s2 = std::sqrt(2.0);
  std::vector<cplx> col(m_, cplx{0.0, 0.0});
  std::size_t k = 0;
  for (int j = 0; j < m_; ++j) {
    const double dj = delta_[j];
    const cplx ej = e[j];
    const cplx diag = in[k];
    out[k] = 2.0 * dj * diag + s2 * gp_ * ej;
    ++k;
    cplx row = 0.0;
    for (int l = j + 1; l < m_; ++l, ++k) {
      const cplx p = in[k];
      out[k] = (dj + delta_[l]) * p + gp_ * (ej + e[l]);
      row += p;
      col[l] += p;
    }
    oe[j] = (delta_[j] - dp_) * ej + gp_ * row + s2 * gp_ * diag;
  }
  for (int l = 0; l < m_; ++l) oe[l] += gp_ * col[l];
}

void SectorHamiltonian::apply_ladder(const cplx* in, cplx* out) const {
  const std::size_t mm = static_cast<std::size_t>(m_) * m_;
  const cplx* s2 = in + mm;
  const cplx s3 = in[mm + m_];
  cplx* o2 = out + mm;
  std::vector<cplx> col(m_, cplx{0.0, 0.0});
  for (int j = 0; j < m_; ++j) {
    const double dj = delta_[j];
    const cplx* row = in + static_cast<std::size_t>(j) * m_;
    cplx* orow = out + static_cast<std::size_t>(j) * m_;
    for (int l = 0; l < m_; ++l) {
      orow[l] = (dj + delta_[l]) * row[l] + gp_ * s2[l];
      col[l] += row[l];
    }
  }
  cplx sum2 = 0.0;
  for (int l = 0; l < m_; ++l) {
    o2[l] = (delta_[l] - dp_) * s2[l] + gp_ * col[l] + gd_ * s3;
    sum2 += s2[l];
  }
  out[mm + m_] = -(dp_ + dd_) * s3 + gd_ * sum2;
}

Eigen::SparseMatrix<cplx> SectorHamiltonian::to_sparse() const {
  using T = Eigen::Triplet<cplx>;
  std::vector<T> t;
  auto add = [&](std::size_t r, std::size_t c, double v) {
    t.emplace_back(static_cast<int>(r), static_cast<int>(c), cplx{v, 0.0});
  };
  const double s2 = std::sqrt(2.0);
  switch (cfg_.sector) {
    case Sector::OneExcitation:
      for (int j = 0; j < m_; ++j) {
        add(j, j, delta_[j]);
        add(j, m_, gp_);
        add(m_, j, gp_);
      }
      add(m_, m_, -dp_);
      break;
    case Sector::TwoExcitation2LE:
      for (int j = 0; j < m_; ++j) {
        for (int l = j; l < m_; ++l) {
          const std::size_t k = pair_index(j, l);
          add(k, k, delta_[j] + delta_[l]);
          const double g = j == l ? s2 * gp_ : gp_;
          add(k, npair_ + l, g);
          add(npair_ + l, k, g);
          if (j != l) {
            add(k, npair_ + j, g);
            add(npair_ + j, k, g);
          }
        }
        add(npair_ + j, npair_ + j, delta_[j] - dp_);
      }
      break;
    case Sector::TwoExcitationLadder: {
      const std::size_t mm = static_cast<std::size_t>(m_) * m_;
      for (int j = 0; j < m_; ++j)
        for (int l = 0; l < m_; ++l) {
          const std::size_t k = static_cast<std::size_t>(j) * m_ + l;
          add(k, k, delta_[j] + delta_[l]);
          add(k, mm + l, gp_);
          add(mm + l, k, gp_);
        }
      for (int l = 0; l < m_; ++l) {
        add(mm + l, mm + l, delta_[l] - dp_);
        add(mm + l, mm + m_, gd_);
        add(mm + m_, mm + l, gd_);
      }
      add(mm + m_, mm + m_, -(dp_ + dd_));
      break;
    }
  }
  Eigen::SparseMatrix<cplx> h(static_cast<int>(dim_), static_cast<int>(dim_));
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

std::string SectorHamiltonian::basis_label(std::size_t i) const {
  auto mode = [&](int j, const char* pol) {
    const int n = cfg_.right_modes();
    return std::string(j < n ? "R" : "L") + pol + std::to_string(j % n);
  };
  switch (cfg_.sector) {
    case Sector::OneExcitation:
      return i < static_cast<std::size_t>(m_) ? mode(static_cast<int>(i), "") : "e";
    case Sector::TwoExcitation2LE: {
      if (i >= npair_) return "e+" + mode(static_cast<int>(i - npair_), "");
      int j = 0;
      while (j + 1 < m_ && pair_index(j + 1, j + 1) <= i) ++j;
      const int l = j + static_cast<int>(i - pair_index(j, j));
      return mode(j, "") + "," + mode(l, "");
    }
    case Sector::TwoExcitationLadder: {
      const std::size_t mm = static_cast<std::size_t>(m_) * m_;
      if (i < mm)
        return mode(static_cast<int>(i / m_), "p") + "," + mode(static_cast<int>(i % m_), "d");
      if (i < mm + m_) return "2+" + mode(static_cast<int>(i - mm), "d");
      return "3";
    }
  }
  return "?";
}

std::vector<cplx> packet_amplitudes(const LatticeConfig& c, double sigma_k, double x0) {
  std::vector<cplx> a(c.right_modes());
  double norm = 0.0;
  for (int n = 0; n < c.right_modes(); ++n) {
    const double q = 2.0 * pi * (n - c.n_modes) / c.L;
    a[n] = std::exp(-(q / sigma_k) * (q / sigma_k)) * std::exp(-I * q * x0);
    norm += std::norm(a[n]);
  }
  for (auto& v : a) v /= std::sqrt(norm);
  return a;
}

std::vector<cplx> initial_state(const SectorHamiltonian& h) {
  const auto& c = h.config();
  const int n = c.right_modes();
  const int m = h.photon_modes();
  std::vector<cplx> psi(h.dimension(), cplx{0.0, 0.0});
  auto f = packet_amplitudes(c, c.sigma_k, c.launch());
  switch (c.sector) {
    case Sector::OneExcitation:
      for (int j = 0; j < n; ++j) psi[j] = f[j];
      break;
    case Sector::TwoExcitation2LE: {
      const double s2 = std::sqrt(2.0);
      for (int j = 0; j < n; ++j)
        for (int l = j; l < n; ++l)
          psi[h.pair_index(j, l)] = (j == l ? 1.0 : s2) * f[j] * f[l];
      break;
    }
    case Sector::TwoExcitationLadder: {
      auto d = packet_amplitudes(c, c.drive_width(), c.drive_launch());
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) psi[static_cast<std::size_t>(j) * m + l] = f[j] * d[l];
      break;
    }
  }
  return psi;
}

double estimate_spectral_radius(const SectorHamiltonian& h, int iterations) {
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(h.dimension()), w(h.dimension());
  double norm = 0.0;
  for (auto& x : v) {
    x = cplx{nd(rng), nd(rng)};
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    h.apply(v.data(), w.data());
    double nw = 0.0;
    for (const auto& x : w) nw += std::norm(x);
    nw = std::sqrt(nw);
    lambda = std::max(lambda, nw);
    if (nw == 0.0) break;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / nw;
  }
  return lambda;
}

}  // namespace wqed
