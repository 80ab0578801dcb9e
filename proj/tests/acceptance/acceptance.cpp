// Acceptance suite. Run with --criterion N (1..10) or --all. Each criterion
// prints its measurements followed by one PASS/FAIL line; the exit code is 1
// if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "oracles.hpp"
#include "wqed/analytic_2le.hpp"
#include "wqed/analytic_3le.hpp"
#include "wqed/bloch.hpp"
#include "wqed/fock_oracle.hpp"

using namespace wqed;

namespace {

const double G = 0.1;
const double I_FIG = 0.0125;

struct Outcome {
  bool pass = true;
  std::string summary;
};

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
  std::fflush(stdout);
}

bool close_rel(double ref, double x, double tol) { return std::abs(x - ref) <= tol * std::abs(ref); }

// ---------------------------------------------------------------------------

Outcome unitarity() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dd(-2.0, 2.0), gg(1e-3, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto s = single_photon_solution(dd(rng), gg(rng));
    worst = std::max(worst, std::abs(std::norm(s.t1p) + std::norm(s.r1p) - 1.0));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max ||t|^2 + |r|^2 - 1| = %.2e over 1000 points (tol 1e-12)",
                worst);
  return {worst <= 1e-12, buf};
}

Outcome resonant_reflection() {
  auto s = single_photon_solution(0.0, G);
  const double r = std::norm(s.r1p);
  detail("analytic R(0) = %.17g", r);
  auto c = LatticeConfig::for_packet(EmitterConfig::two_level(G), Sector::OneExcitation, 0.0,
                                     G / 20.0, 20.0 * G);
  auto o = scatter_one_photon(c);
  detail("oracle sigma_k = Gamma/20, n_modes = %d: T = %.3e, R = %.6f", c.n_modes,
         o.transmission_prob, o.reflection_prob);
  char buf[160];
  std::snprintf(buf, sizeof buf, "R(0) = %.17g, oracle T = %.3e (need R == 1, T <= 0.01)", r,
                o.transmission_prob);
  return {r == 1.0 && o.transmission_prob <= 0.01, buf};
}

// Least-squares polynomial fit in a scaled variable; returns coefficients of
// powers of the original variable.
std::vector<double> poly_fit(const std::vector<double>& x, const std::vector<double>& y,
                             int degree) {
  const double s = *std::max_element(x.begin(), x.end());
  Eigen::MatrixXd a(x.size(), degree + 1);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int k = 0; k <= degree; ++k) a(i, k) = std::pow(x[i] / s, k);
    b(i) = y[i];
  }
  Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(degree + 1);
  for (int k = 0; k <= degree; ++k) out[k] = c(k) / std::pow(s, k);
  return out;
}

Outcome rule_set() {
  std::vector<double> icp;
  for (int k = 0; k < 41; ++k) icp.push_back(1e-6 + (1e-4 - 1e-6) * k / 40.0);
  double worst1 = 0.0, worst2 = 0.0, cubic1 = 0.0, cubic2 = 0.0;
  double worst2_at = 0.0;
  for (int j = 0; j < 50; ++j) {
    const double d = -1.0 + 2.0 * j / 49.0;
    std::vector<double> jc;
    for (double i : icp) jc.push_back(reflection_current_coherent(d, G, std::sqrt(2.0 * G * i)));
    // Reference coefficients from the Fock currents with I_1p = 1/L at L = 1.
    const double c1 = reflection_current_fock(1, d, G, 1.0);
    const double c2 = reflection_current_fock(2, d, G, 1.0) - 2.0 * c1;
    auto q = oracle::fit_quadratic(icp, jc);
    const double e1 = std::abs(q.c1 - c1) / std::abs(c1);
    const double e2 = std::abs(q.c2 - c2) / std::abs(c2);
    worst1 = std::max(worst1, e1);
    if (e2 > worst2) worst2 = e2, worst2_at = d;
    auto cub = poly_fit(icp, jc, 3);
    cubic1 = std::max(cubic1, std::abs(cub[1] - c1) / std::abs(c1));
    cubic2 = std::max(cubic2, std::abs(cub[2] - c2) / std::abs(c2));
  }
  detail("quadratic fit: max rel err c1 = %.3e, c2 = %.3e (worst at detuning %.4f)", worst1,
         worst2, worst2_at);
  detail("%s", "the O(I^3) term of Jc biases a quadratic fit of c2 by ~4 Gamma I / D0 ~ 1e-3 near"
         " resonance");
  detail("supplementary cubic fit: max rel err c1 = %.3e, c2 = %.3e", cubic1, cubic2);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "quadratic fit of Jc on 50 detunings: max rel err c1 = %.2e, c2 = %.2e (tol 1e-4)",
                worst1, worst2);
  return {worst1 <= 1e-4 && worst2 <= 1e-4, buf};
}

Outcome bloch_steady() {
  double worst = 0.0;
  for (double dm : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    for (double om : {0.01, 0.05, 0.1, 0.2, 0.4}) {
      BlochParams p{dm * G, G, om};
      IntegrateOptions io;
      io.stride = 1000000;
      auto traj = integrate(p, 50.0 / G, max_bloch_step(p), io);
      auto ss = steady_state(p);
      const auto& f = traj.back();
      worst = std::max({worst, std::abs(f.s1 - ss.s1), std::abs(f.s2 - ss.s2)});
    }
  }
  detail("5x5 grid, t = 50/Gamma: max |S - S_ss| = %.3e", worst);

  BlochParams p{0.05, G, 0.2};
  auto end = [&](double dt) { return integrate(p, 20.0, dt).back(); };
  auto ref = end(0.00625);
  auto err = [&](double dt) {
    auto s = end(dt);
    return std::abs(s.s1 - ref.s1) + std::abs(s.s2 - ref.s2);
  };
  const double ratio = err(0.4) / err(0.2);
  detail("self-convergence: err(dt=0.4) / err(dt=0.2) = %.3f", ratio);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "steady-state error %.2e (tol 1e-6), convergence factor %.2f (need 16 +- 20%%)",
                worst, ratio);
  return {worst <= 1e-6 && std::abs(ratio - 16.0) <= 3.2, buf};
}

Outcome figure_limits() {
  const double L = 1.0 / I_FIG;
  auto above = g1_fock_two_photon(0.0, G, L, LimitSide::Above);
  auto below = g1_fock_two_photon(0.0, G, L, LimitSide::Below);
  const double e_a = std::max(std::abs(above.phases.phi_nonlinear - pi / 2),
                              std::abs(below.phases.phi_nonlinear + pi / 2));
  const double e_b = std::max(std::abs(above.phases.phi_linear + pi / 2),
                              std::abs(below.phases.phi_linear - pi / 2));
  detail("(a) phi2(0+) = %.9f, phi2(0-) = %.9f", above.phases.phi_nonlinear,
         below.phases.phi_nonlinear);
  detail("(b) phi1(0+) = %.9f, phi1(0-) = %.9f", above.phases.phi_linear,
         below.phases.phi_linear);
  auto drive = FieldInput::fock(1, L, 0.0, Channel::Drive);
  double worst = 0.0;
  int bad = 0;
  for (int k = 0; k < 400; ++k) {
    const double d = -1.0 + 2.0 * k / 399.0;
    const double p2 = g1_fock_two_photon(d, G, L).phases.phi_nonlinear;
    const double dp = cross_g1(d, 0.0, G, G, drive).phases.phi_nonlinear;
    worst = std::max(worst, std::abs(dp) / std::abs(p2));
    if (!(std::abs(dp) < std::abs(p2))) ++bad;
  }
  detail("(c) max |dphi_pd| / |phi2| over 400 points = %.6f, violations = %d", worst, bad);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "limit errors %.1e / %.1e (tol 1e-6), |dphi_pd| < |phi2| at 400/400 points: %s",
                e_a, e_b, bad == 0 ? "yes" : "no");
  return {e_a <= 1e-6 && e_b <= 1e-6 && bad == 0, buf};
}

Outcome integral_consistency() {
  const double L = 100.0 / G;
  double worst_j2 = 0.0;
  for (double d : {0.0, G, 3.0 * G}) {
    const double q = reflection_current_2_from_eigenstate(1.0 + d, EmitterConfig::two_level(G), L);
    const double cf = reflection_current_fock(2, d, G, L);
    const double e = std::abs(q - cf) / std::abs(cf);
    detail("J2 at detuning %.2f: quadrature %.12e, closed form %.12e, rel %.2e", d, q, cf, e);
    worst_j2 = std::max(worst_j2, e);
  }

  // Ladder coherence: quadrature over the second photon against the closed
  // form, then the closed form without the finite-L term against the bracket.
  double worst_s21 = 0.0, worst_bracket = 0.0;
  for (double dp : {G, 2.0 * G, -0.3}) {
    LadderTwoPhotonEigenstate st(1.0 + dp, 1.0, EmitterConfig::ladder(G, G), L);
    const double xp = -5.0, x = 7.0;
    auto q = oracle::integrate([&](double y) { return std::conj(st.gRR(xp, y)) * st.gRR(x, y); },
                               -L / 2, L / 2, {0.0, x, -x, xp, -xp}, 2.0);
    const cplx cf = ladder_g1_rr(dp, 0.0, G, G, L, xp, x, true);
    const double e = std::abs(q - cf) / std::abs(cf);
    worst_s21 = std::max(worst_s21, e);

    const cplx dropped = ladder_g1_rr(dp, 0.0, G, G, L, xp, x, false);
    auto an = cross_g1(dp, 0.0, G, G, FieldInput::fock(1, L, 0.0, Channel::Drive));
    const cplx phase = std::exp(I * (1.0 + dp) * (x - xp));
    const cplx bracket = dropped / (an.prefactor * an.linear * phase);
    const double eb = std::abs(bracket - an.bracket) / std::abs(an.bracket);
    worst_bracket = std::max(worst_bracket, eb);
    detail("probe detuning %.2f: quadrature vs closed form rel %.2e; bracket rel %.2e", dp, e, eb);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "J2 rel err %.2e (tol 1e-6); ladder coherence rel err %.2e, bracket %.2e (tol 1e-9)",
                worst_j2, worst_s21, worst_bracket);
  return {worst_j2 <= 1e-6 && worst_s21 <= 1e-9 && worst_bracket <= 1e-9, buf};
}

Outcome oracle_single_photon() {
  const auto em = EmitterConfig::two_level(G);
  bool ok = true;
  double worst_t = 0.0, worst_phi = 0.0;
  for (double m : {0.0, 1.0, 2.0, 4.0, 10.0}) {
    const double d = m * G;
    double t[2], ph[2];
    int nm = 0;
    for (int k = 0; k < 2; ++k) {
      auto c = LatticeConfig::for_packet(em, Sector::OneExcitation, d, G / (10.0 * (k + 1)),
                                         20.0 * G);
      auto o = scatter_one_photon(c);
      t[k] = o.transmission_prob;
      ph[k] = o.transmitted_phase;
      nm = c.n_modes;
    }
    // Linear in sigma_k^2: X(s) = X0 + a s^2 with s halved on the second run.
    const double t0 = (4.0 * t[1] - t[0]) / 3.0;
    const double ph0 = (4.0 * ph[1] - ph[0]) / 3.0;
    auto s = single_photon_solution(d, G);
    const double et = std::abs(t0 - std::norm(s.t1p));
    worst_t = std::max(worst_t, et);
    ok = ok && et <= 0.01;
    if (m == 0.0) {
      detail("detuning 0: |t|^2 %.3e / %.3e -> %.3e (analytic 0); phase undefined, not compared",
             t[0], t[1], t0);
      continue;
    }
    const double ep = std::abs(wrap_phase(ph0 - complex_phase(s.t1p)));
    worst_phi = std::max(worst_phi, ep);
    ok = ok && ep <= 0.01;
    detail("detuning %4.1f Gamma (n_modes up to %d): |t|^2 -> %.5f (analytic %.5f), phase -> %.5f"
           " (analytic %.5f)",
           m, nm, t0, std::norm(s.t1p), ph0, complex_phase(s.t1p));
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "extrapolated |t|^2 max err %.2e, phase max err %.2e (tol 0.01)", worst_t,
                worst_phi);
  return {ok, buf};
}

LatticeConfig two_photon_config(double detuning, double sigma, double band) {
  auto c = LatticeConfig::for_packet(EmitterConfig::two_level(G), Sector::TwoExcitation2LE,
                                     detuning, sigma, band);
  c.dimension_cap = 40000000;
  return c;
}

Outcome oracle_two_photon() {
  const double d = 2.0 * G;
  const double c2 = coherent_expansion_coefficients(d, G).c2;
  double deficit[2], length[2];
  bool ok = true;
  for (int k = 0; k < 2; ++k) {
    const double sigma = G / (10.0 * (k + 1));
    auto c = two_photon_config(d, sigma, 10.0 * G);
    auto m = measure_kerr(c);
    const double pred = c2 * m.integrated_density_sq;
    deficit[k] = m.flux_deficit;
    length[k] = 1.0 / m.integrated_density_sq;
    const double rel = std::abs(m.flux_deficit - pred) / std::abs(pred);
    auto an = g1_fock_two_photon(d, G, 1.0 / c.peak_density());
    detail("sigma_k = Gamma/%d, n_modes = %d, dim = %zu: deficit %.5e, c2 int rho^2 = %.5e,"
           " ratio %.4f, rel err %.3f",
           10 * (k + 1), c.n_modes, sector_dimension(c), m.flux_deficit, pred,
           m.flux_deficit / pred, rel);
    detail("  phi2 oracle %.5f vs analytic %.5f at peak density", m.phi_nonlinear,
           an.phases.phi_nonlinear);
    ok = ok && (m.flux_deficit < 0.0) == (pred < 0.0) && rel <= 0.15;
  }
  const double expo = std::log(deficit[1] / deficit[0]) / std::log(length[1] / length[0]);
  detail("deficit ~ length^%.4f", expo);
  ok = ok && std::abs(expo + 1.0) <= 0.15;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "deficit sign %s, exponent %.3f (need -1 +- 0.15), magnitude ratio %.3f / %.3f"
                " (need within 15%%)",
                deficit[0] < 0.0 && deficit[1] < 0.0 ? "negative as predicted" : "wrong", expo,
                deficit[0] / (c2 / length[0]), deficit[1] / (c2 / length[1]));
  return {ok, buf};
}

struct CrossResult {
  double oracle = 0.0, analytic = 0.0;
};

CrossResult cross_at(double dp, double sigma, double band) {
  auto c = LatticeConfig::for_packet(EmitterConfig::ladder(G, G), Sector::TwoExcitationLadder, dp,
                                     sigma, band);
  c.dimension_cap = 40000000;
  auto k = measure_cross_kerr(c);
  auto an = cross_g1(dp, 0.0, G, G, FieldInput::fock(1, 1.0 / c.peak_density(), 0.0, Channel::Drive));
  detail("ladder at probe detuning %.2f, n_modes = %d, dim = %zu: dphi oracle %.6f, analytic %.6f",
         dp, c.n_modes, sector_dimension(c), k.delta_phi, an.phases.phi_nonlinear);
  return {k.delta_phi, an.phases.phi_nonlinear};
}

Outcome oracle_cross_kerr() {
  const double sigma = G / 10.0, band = 10.0 * G;
  auto main = cross_at(2.0 * G, sigma, band);
  const bool sign_ok = (main.oracle > 0.0) == (main.analytic > 0.0) && main.analytic != 0.0;
  const bool mag_ok = close_rel(main.analytic, main.oracle, 0.15);

  auto kerr = measure_kerr(two_photon_config(2.0 * G, sigma, band));
  const bool smaller = std::abs(main.oracle) < std::abs(kerr.phi_nonlinear);
  detail("matched Kerr run: phi2 oracle %.6f; |dphi| < |phi2|: %s", kerr.phi_nonlinear,
         smaller ? "yes" : "no");

  auto side = cross_at(G, sigma, band);
  detail("supplementary at probe detuning Gamma: ratio oracle/analytic %.4f",
         side.oracle / side.analytic);
  detail("%s", "at probe detuning 2 Gamma the cross bracket is real, so the analytic dphi_pd is 0");

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "dphi_pd at 2 Gamma: oracle %.3e vs analytic %.3e (sign %s, magnitude %s);"
                " |dphi| < |phi2|: %s",
                main.oracle, main.analytic, sign_ok ? "ok" : "undetermined or wrong",
                mag_ok ? "ok" : "outside 15%", smaller ? "yes" : "no");
  return {sign_ok && mag_ok && smaller, buf};
}

Outcome half_factor() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dd(-1.0, 1.0);
  const double L = 1.0 / I_FIG;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double d = dd(rng);
    auto k = g1_fock_two_photon(d, G, L);
    auto c = cross_g1(d, 0.0, G, G, FieldInput::fock(1, L, 0.0, Channel::Drive));
    const cplx pole{-2.0 * G, d};
    const cplx expect = k.bracket_terms[1] * 0.5 * std::norm(pole) / (pole * pole);
    worst = std::max(worst, std::abs(c.bracket_terms[1] - expect) / std::abs(expect));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max rel err over 100 random detunings = %.2e (tol 1e-12)", worst);
  return {worst <= 1e-12, buf};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int which = 0;
  bool all = false;
  auto* opt = app.add_option("--criterion", which, "criterion number")->check(CLI::Range(1, 10));
  app.add_flag("--all", all, "run every criterion")->excludes(opt);
  CLI11_PARSE(app, argc, argv);
  if (!all && which == 0) {
    std::fprintf(stderr, "give --criterion N or --all\n");
    return 2;
  }

  const std::vector<Criterion> list = {
      {1, "unitarity", 1.0, unitarity},
      {2, "resonant reflection", 60.0, resonant_reflection},
      {3, "Fock/coherent rule set", 5.0, rule_set},
      {4, "Bloch steady state", 10.0, bloch_steady},
      {5, "Kerr and cross-Kerr phase limits", 5.0, figure_limits},
      {6, "eigenstate integrals", 30.0, integral_consistency},
      {7, "oracle single-photon spectrum", 600.0, oracle_single_photon},
      {8, "oracle two-photon correlated flux", 1800.0, oracle_two_photon},
      {9, "oracle cross-Kerr", 1800.0, oracle_cross_kerr},
      {10, "half-factor identity", 1.0, half_factor},
  };

  int failed = 0;
  for (const auto& c : list) {
    if (!all && c.id != which) continue;
    std::printf("criterion %d: %s\n", c.id, c.name);
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    std::printf("%s criterion %d: %s [%.1f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id,
                o.summary.c_str(), secs, c.budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
