#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "wqed/types.hpp"

namespace wqed {

enum class Sector { OneExcitation, TwoExcitation2LE, TwoExcitationLadder };

// Ring of circumference L. Each polarization has 2 n_modes right movers and
// 2 n_modes left movers on the grid q = 2 pi n / L, n in [-n_modes, n_modes),
// measured from the beam carrier. Left movers are labelled by the magnitude
// of their wavevector, so in the frame rotating at the carrier both branches
// carry the detuning vg q.
struct LatticeConfig {
  int n_modes = 64;  // modes on each side of the carrier, per branch
  double L = 0.0;
  double k0 = 0.0;       // probe carrier wavevector (lab frame)
  double sigma_k = 0.0;  // packet amplitude ~ exp(-(q / sigma_k)^2)
  double vg = 1.0;
  EmitterConfig emitter;
  Sector sector = Sector::OneExcitation;

  double x0 = 0.0;  // launch centre; 0 selects -L/4
  // Drive beam (ladder sector only). drive_sigma_k = 0 reuses sigma_k.
  double drive_k0 = 0.0;
  double drive_sigma_k = 0.0;
  double drive_x0 = 0.0;  // 0 selects x0
  double min_overlap = 0.5;

  // Multipliers on the probe and drive couplings; 0 decouples a transition
  // while keeping the packet geometry set by gamma.
  double coupling_scale = 1.0;
  double drive_coupling_scale = 1.0;

  double g1_offset = 0.0;  // coherence is sampled at x' = -d, x = +d; 0 selects 2 vg / gamma_p
  std::size_t dimension_cap = 200000;

  // Fills L, n_modes and k0 for a packet of width sigma_k at the given
  // detuning, with the mode window spanning +-band about the carrier.
  static LatticeConfig for_packet(const EmitterConfig& emitter, Sector sector, double detuning,
                                  double sigma_k, double band, double vg = 1.0);

  void validate() const;
  double probe_detuning() const { return vg * k0 - emitter.omega21; }
  double drive_detuning() const { return vg * drive_k0 - emitter.omega32; }
  double launch() const { return x0 != 0.0 ? x0 : -L / 4.0; }
  double drive_launch() const { return drive_x0 != 0.0 ? drive_x0 : launch(); }
  double drive_width() const { return drive_sigma_k > 0.0 ? drive_sigma_k : sigma_k; }
  double offset() const { return g1_offset > 0.0 ? g1_offset : 2.0 * vg / emitter.gamma_p; }
  // Peak photon density sigma_k / sqrt(2 pi) of the normalized packet.
  double peak_density() const;
  int right_modes() const { return 2 * n_modes; }
  double mode_detuning(int n) const;  // n in [0, right_modes())
};

std::size_t sector_dimension(const LatticeConfig& c);

// Number-conserving Hamiltonian restricted to one excitation sector, in the
// frame rotating at the carrier(s). Applied matrix-free.
//
// Basis layouts (M = 4 n_modes photon modes per polarization, right movers
// first):
//   OneExcitation:     [photon 0..M-1 | emitter]
//   TwoExcitation2LE:  unordered pairs j <= l, stored once (upper triangle,
//                      row-major), then emitter-excited x photon l
//   TwoExcitationLadder: probe j x drive l (row-major), then level 2 x drive
//                      photon l, then level 3
// A pair (j, j) is the normalized doubly occupied mode, so its coupling to
// the emitter carries an extra sqrt(2).
class SectorHamiltonian {
 public:
  explicit SectorHamiltonian(const LatticeConfig& c);

  std::size_t dimension() const { return dim_; }
  const LatticeConfig& config() const { return cfg_; }
  int photon_modes() const { return m_; }

  void apply(const cplx* in, cplx* out) const;
  std::vector<cplx> apply(const std::vector<cplx>& in) const;

  Eigen::SparseMatrix<cplx> to_sparse() const;
  std::string basis_label(std::size_t i) const;

  // Index of the pair (j, l), j <= l, in the two-photon 2LE layout.
  std::size_t pair_index(int j, int l) const;

  double detuning_of_mode(int j) const { return delta_[j]; }

 private:
  LatticeConfig cfg_;
  int m_ = 0;
  std::size_t dim_ = 0;
  std::size_t npair_ = 0;
  std::vector<double> delta_;
  double gp_ = 0.0, gd_ = 0.0;
  double dp_ = 0.0, dd_ = 0.0;

  void apply_one(const cplx* in, cplx* out) const;
  void apply_two(const cplx* in, cplx* out) const;
  void apply_ladder(const cplx* in, cplx* out) const;
};

SectorHamiltonian build_sector(const LatticeConfig& c);

struct EvolveOptions {
  double dt = 0.0;          // Chebyshev step; 0 picks 20 / spectral radius
  double norm_tol = 1e-8;   // allowed |norm - 1| at any step
  double spectral_margin = 1.25;
  int power_iterations = 60;
};

// Chebyshev expansion of exp(-i H dt) with Bessel-function coefficients.
class Propagator {
 public:
  Propagator(const SectorHamiltonian& h, const EvolveOptions& opt = {});

  // Advances psi in place by duration. Throws NormDrift.
  void advance(std::vector<cplx>& psi, double duration);

  double spectral_radius() const { return radius_; }
  double max_norm_drift() const { return drift_; }
  std::size_t applications() const { return napply_; }

 private:
  const SectorHamiltonian& h_;
  EvolveOptions opt_;
  double radius_ = 0.0;
  double drift_ = 0.0;
  std::size_t napply_ = 0;
  std::vector<cplx> t0_, t1_, t2_, acc_;

  void step(std::vector<cplx>& psi, double dt);
};

double estimate_spectral_radius(const SectorHamiltonian& h, int iterations);

struct Snapshot {
  double time = 0.0;
  std::vector<cplx> state;
};

// Returns snapshots at the requested times (sorted, within (0, t_end]) plus
// the final state.
std::vector<Snapshot> evolve(const SectorHamiltonian& h, const std::vector<cplx>& psi0,
                             double t_end, const std::vector<double>& snapshot_times = {},
                             const EvolveOptions& opt = {});

// Normalized right-moving Gaussian packet amplitudes on the probe grid.
std::vector<cplx> packet_amplitudes(const LatticeConfig& c, double sigma_k, double x0);

// Initial state for the configured sector: one probe packet, two identical
// probe packets, or a probe and a drive packet.
std::vector<cplx> initial_state(const SectorHamiltonian& h);

// One-body coherence <a^dag(x') a(x)> of the (probe) right-moving field on a
// position grid; element [a][b] pairs x' = grid[a] with x = grid[b].
std::vector<std::vector<cplx>> g1_from_state(const SectorHamiltonian& h,
                                             const std::vector<cplx>& psi,
                                             const std::vector<double>& grid);

struct PhotonCounts {
  double right = 0.0;     // probe right movers
  double left = 0.0;      // probe left movers
  double emitter = 0.0;   // probability that the emitter is excited
  double drive_right = 0.0;
  double drive_left = 0.0;
};

PhotonCounts photon_counts(const SectorHamiltonian& h, const std::vector<cplx>& psi);

struct ScatteringOutcome {
  double transmission_prob = 0.0;  // transmitted probe photons per input photon
  double reflection_prob = 0.0;
  double residual_emitter_pop = 0.0;
  double transmitted_phase = 0.0;  // one-photon sector only
  std::vector<double> g1_grid;
  std::vector<std::vector<cplx>> g1_matrix;
  cplx g1_ratio{1.0, 0.0};  // G1(-d, d) over the free-evolved value, at arrival
  double left_flux_integral = 0.0;  // left-moving probe photons after scattering
  double norm_drift = 0.0;
  double t_arrival = 0.0;
  double t_end = 0.0;
};

struct ScatterOptions {
  EvolveOptions evolve;
  std::vector<double> g1_grid;  // sampled at t_arrival; empty skips the matrix
};

ScatteringOutcome scatter_one_photon(const LatticeConfig& c, const ScatterOptions& opt = {});
ScatteringOutcome scatter_two_photons_2le(const LatticeConfig& c, const ScatterOptions& opt = {});
ScatteringOutcome scatter_probe_drive_ladder(const LatticeConfig& c,
                                             const ScatterOptions& opt = {});

// Derived comparisons that need a matching one-photon reference run.
struct KerrMeasurement {
  ScatteringOutcome one, two;
  double phi_linear = 0.0;
  double phi_nonlinear = 0.0;      // arg(two.g1_ratio / one.g1_ratio)
  double flux_deficit = 0.0;       // two.left - 2 * one.left
  double integrated_density_sq = 0.0;  // int rho(x)^2 dx of the single packet
};

KerrMeasurement measure_kerr(const LatticeConfig& two_photon_config,
                             const ScatterOptions& opt = {});

struct CrossKerrMeasurement {
  ScatteringOutcome probe_only, with_drive;
  double delta_phi = 0.0;  // arg(with_drive.g1_ratio / probe_only.g1_ratio)
};

CrossKerrMeasurement measure_cross_kerr(const LatticeConfig& ladder_config,
                                        const ScatterOptions& opt = {});

}  // namespace wqed
