#include <doctest.h>

#include <random>
#include <sstream>

#include "wqed/analytic_2le.hpp"
#include "wqed/bloch.hpp"

using namespace wqed;

TEST_CASE("right-hand side examples") {
  BlochParams p{0.0, 0.1, 0.0};
  auto d = bloch_rhs({}, p);
  CHECK(std::abs(d.ds1) == 0.0);
  CHECK(d.ds2 == 0.0);
  p.omega_rabi = 0.05;
  d = bloch_rhs({}, p);
  CHECK(std::abs(d.ds1 - cplx{0.0, -0.05}) < 1e-16);
  CHECK(d.ds2 == 0.0);
}

TEST_CASE("steady state is a fixed point") {
  for (double dd : {-0.3, 0.0, 0.1}) {
    for (double om : {0.0, 0.02, 0.3}) {
      BlochParams p{dd, 0.1, om};
      auto s = steady_state(p);
      auto d = bloch_rhs(s, p);
      CHECK(std::abs(d.ds1) + std::abs(d.ds2) < 1e-12);
      CHECK(s.s2 <= 0.5 + 1e-12);
    }
  }
  BlochParams big{0.0, 0.1, 1e6};
  CHECK(steady_state(big).s2 == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("zero drive trajectory stays at the ground state") {
  BlochParams p{0.1, 0.1, 0.0};
  auto traj = integrate(p, 50.0, max_bloch_step(p));
  for (const auto& s : traj) {
    CHECK(std::abs(s.s1) == 0.0);
    CHECK(s.s2 == 0.0);
  }
}

TEST_CASE("long-time limit matches the closed-form steady state") {
  BlochParams p{0.0, 0.1, 0.05};
  auto traj = integrate(p, 500.0, max_bloch_step(p));
  CHECK(traj.back().s2 == doctest::Approx(0.0025 / 0.045).epsilon(1e-6));
  CHECK(std::abs(traj.back().s2 - 0.055556) < 1e-6);
}

TEST_CASE("trajectory stays physical") {
  BlochParams p{0.05, 0.1, 0.3};
  auto traj = integrate(p, 200.0, max_bloch_step(p));
  for (const auto& s : traj) {
    CHECK(s.s2 >= -1e-12);
    CHECK(s.s2 <= 1.0);
    CHECK(std::norm(s.s1) <= s.s2 * (1.0 - s.s2) + 1e-9);
  }
  BlochParams q{0.0, 0.1, 0.05};
  for (const auto& s : integrate(q, 500.0, max_bloch_step(q))) CHECK(s.s2 <= 0.5 + 1e-9);
}

TEST_CASE("steady state does not depend on the initial state") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BlochParams p{0.07, 0.1, 0.12};
  auto ss = steady_state(p);
  for (int i = 0; i < 10; ++i) {
    // Random pure state: |s1|^2 = s2 (1 - s2).
    double s2 = u(rng), ph = 2.0 * pi * u(rng);
    IntegrateOptions o;
    o.initial.s2 = s2;
    o.initial.s1 = std::polar(std::sqrt(s2 * (1.0 - s2)), ph);
    o.stride = 1000000;
    auto traj = integrate(p, 50.0 / 0.1, max_bloch_step(p), o);
    CHECK(std::abs(traj.back().s1 - ss.s1) < 1e-6);
    CHECK(std::abs(traj.back().s2 - ss.s2) < 1e-6);
  }
}

TEST_CASE("fourth-order convergence") {
  BlochParams p{0.05, 0.1, 0.2};
  IntegrateOptions o;
  o.stride = 1000000;
  const double t = 20.0;
  auto at = [&](double dt) { return integrate(p, t, dt, o).back(); };
  auto ref = at(0.00625);
  double e1 = std::abs(at(0.4).s1 - ref.s1);
  double e2 = std::abs(at(0.2).s1 - ref.s1);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("step guard") {
  BlochParams p{0.0, 0.1, 0.05};
  try {
    integrate(p, 10.0, 2.0);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooLarge);
  }
  CHECK_THROWS_AS(integrate(p, -1.0, 0.1), Error);
}

TEST_CASE("coherent observables") {
  for (double dd : {-0.2, 0.0, 0.15}) {
    for (double om : {0.01, 0.05, 0.4}) {
      BlochParams p{dd, 0.1, om};
      auto o = coherent_observables(p);
      CHECK(std::abs(o.jc - reflection_current_coherent(dd, 0.1, om)) < 1e-12);
      // Reflected share is half the total scattering rate 4 Gamma S2.
      CHECK(o.jc == doctest::Approx(0.5 * 4.0 * 0.1 * steady_state(p).s2));
      CHECK(std::abs(o.chi - (o.tilde_tp - 1.0) / (2.0 * I)) < 1e-15);
    }
  }
  BlochParams weak{0.2, 0.1, 1e-7};
  CHECK(std::abs(coherent_observables(weak).tilde_tp - single_photon_solution(0.2, 0.1).t1p) <
        1e-10);
  BlochParams zero{0.2, 0.1, 0.0};
  auto z = coherent_observables(zero);
  CHECK(z.limit == LimitFlag::ZeroDrive);
  CHECK_THROWS_AS(transmission_from_state({}, zero), Error);
}

TEST_CASE("exact coherent phase approaches the weak bracket at O(Omega^4)") {
  const double d = 0.3, g = 0.1;
  auto nonlinear = [&](double om) {
    BlochParams p{d, g, om};
    return coherent_observables(p).phi_total - complex_phase(single_photon_solution(d, g).t1p);
  };
  auto weak = [&](double om) {
    return g1_coherent(d, g, om, CoherentMode::WeakExpansion).phases.phi_nonlinear;
  };
  double om = 0.02;
  double r = std::abs(nonlinear(om) - weak(om)) / std::abs(nonlinear(om / 2) - weak(om / 2));
  CHECK(r == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("trajectory CSV") {
  BlochParams p{0.0, 0.1, 0.05};
  IntegrateOptions o;
  o.stride = 100;
  auto traj = integrate(p, 100.0, 0.5, o);
  std::ostringstream os;
  write_trajectory_csv(os, traj, p);
  std::istringstream is(os.str());
  std::string meta, header;
  std::getline(is, meta);
  std::getline(is, header);
  CHECK(meta[0] == '#');
  CHECK(header == "t,re_s1,im_s1,s2,jc");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == static_cast<int>(traj.size()));
}
