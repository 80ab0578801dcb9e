// wqed: parameter sweeps, Bloch dynamics and the verification suite.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "verify.hpp"
#include "wqed/analytic_2le.hpp"
#include "wqed/bloch.hpp"
#include "wqed/report.hpp"

namespace {

using namespace wqed;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("--config: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int n = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
  };
  while (std::getline(f, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("--config: line " + std::to_string(n) + " is not key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Fills options that were not given on the command line from the config file.
void apply_config(CLI::App* sub, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw UsageError("--config: unknown key '" + key + "' for command " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("--config: " + key + ": " + e.what());
    }
  }
}

std::string default_output(const std::string& command, const std::string& ext) {
  const char* env = std::getenv("WQED_OUT_DIR");
  std::filesystem::path dir = env && *env ? env : ".";
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::localtime(&now));
  return (dir / (command + "_" + stamp + ext)).string();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

struct SpectrumArgs {
  double gamma = 0.1, dmin = -1.0, dmax = 1.0;
  int steps = 201;
  std::string out;
};

struct FigureArgs {
  double gamma_p = 0.1, gamma_d = 0.1, intensity = 0.0125, delta_d = 0.0;
  double dmin = -1.0, dmax = 1.0;
  int steps = 401;
  std::string input = "fock";
  std::string out;
};

struct BlochArgs {
  double gamma = 0.1, detuning = 0.0, rabi = 0.05, t_end = 500.0, dt = 0.0;
  int stride = 10;
  std::string out;
};

struct VerifyArgs {
  std::string level = "fast";
  std::string out;
  std::string fault;
};

int cmd_spectrum(const SpectrumArgs& a) {
  require(a.dmin < a.dmax, "--dmin must be below --dmax");
  auto grid = linear_grid(a.dmin, a.dmax, a.steps);
  SweepTable t;
  t.axis_name = "delta_p";
  t.axis = grid;
  t.metadata = {{"command", "spectrum"}, {"gamma", format_number(a.gamma)}, {"vg", "1"},
                {"omega21", "1"}};
  std::vector<double> tre, tim, rre, rim, tt, rr, phi;
  bool zero = false;
  for (double d : grid) {
    auto s = single_photon_solution(d, a.gamma);
    tre.push_back(s.t1p.real());
    tim.push_back(s.t1p.imag());
    rre.push_back(s.r1p.real());
    rim.push_back(s.r1p.imag());
    tt.push_back(std::norm(s.t1p));
    rr.push_back(std::norm(s.r1p));
    if (d == 0.0) {
      zero = true;
      phi.push_back(-pi / 2);
    } else {
      phi.push_back(complex_phase(s.t1p));
    }
  }
  if (zero) t.metadata.emplace_back("delta_p_zero", "phi1 evaluated as the limit from above");
  t.add_column("re_t", tre);
  t.add_column("im_t", tim);
  t.add_column("re_r", rre);
  t.add_column("im_r", rim);
  t.add_column("abs_t2", tt);
  t.add_column("abs_r2", rr);
  t.add_column("phi1", phi);
  auto out = a.out.empty() ? default_output("spectrum", ".csv") : a.out;
  write_csv(out, t);
  std::cout << "wrote " << grid.size() << " rows to " << out << "\n";
  return kOk;
}

Figure1Params figure_params(const FigureArgs& a) {
  require(a.dmin < a.dmax, "--dmin must be below --dmax");
  require(a.input == "fock" || a.input == "coherent", "--input must be fock or coherent");
  Figure1Params p;
  p.gamma_p = a.gamma_p;
  p.gamma_d = a.gamma_d;
  p.intensity = a.intensity;
  p.delta_d = a.delta_d;
  p.input = a.input == "fock" ? BeamKind::Fock : BeamKind::Coherent;
  return p;
}

int cmd_figure(const std::string& name, const FigureArgs& a) {
  auto p = figure_params(a);
  auto grid = linear_grid(a.dmin, a.dmax, a.steps);
  SweepTable t = name == "kerr"         ? kerr_dataset(p, grid)
                 : name == "cross-kerr" ? cross_kerr_dataset(p, grid)
                                        : figure1_dataset(p, grid);
  t.metadata.insert(t.metadata.begin(), {"command", name});
  auto out = a.out.empty() ? default_output(name, ".csv") : a.out;
  write_csv(out, t);
  std::cout << "wrote " << grid.size() << " rows to " << out << "\n";
  return kOk;
}

int cmd_bloch(const BlochArgs& a) {
  BlochParams p{a.detuning, a.gamma, a.rabi};
  p.validate();
  const double dt = a.dt > 0.0 ? a.dt : max_bloch_step(p);
  require(dt <= max_bloch_step(p) * (1.0 + 1e-12),
          "--dt exceeds 0.1/max(gamma, rabi, |detuning|) = " + format_number(max_bloch_step(p)));
  IntegrateOptions io;
  io.stride = static_cast<std::size_t>(a.stride);
  auto traj = integrate(p, a.t_end, dt, io);
  auto out = a.out.empty() ? default_output("bloch", ".csv") : a.out;
  {
    std::ofstream f(out);
    if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + out);
    write_trajectory_csv(f, traj, p);
  }
  auto ss = steady_state(p);
  const auto& last = traj.back();
  std::cout << "wrote " << traj.size() << " rows to " << out << "\n";
  std::printf("final S2 = %.9f  steady S2 = %.9f\n", last.s2, ss.s2);
  std::printf("residual |S1 - S1ss| = %.3e  |S2 - S2ss| = %.3e\n", std::abs(last.s1 - ss.s1),
              std::abs(last.s2 - ss.s2));
  return kOk;
}

int cmd_verify(const VerifyArgs& a) {
  require(a.level == "fast" || a.level == "full", "--level must be fast or full");
  require(a.fault.empty() || a.fault == "gamma-sign", "--inject-fault accepts only gamma-sign");
  cli::VerifyOptions o;
  o.full = a.level == "full";
  o.fault_gamma_sign = a.fault == "gamma-sign";
  auto rep = cli::run_verification(o);
  auto out = a.out.empty() ? default_output("verify", ".json") : a.out;
  rep.write_json(out);
  for (const auto& e : rep.entries())
    std::printf("%-4s %-28s analytic=%-14s numeric=%-14s %s\n", e.passed ? "PASS" : "FAIL",
                e.id.c_str(), format_number(e.analytic).c_str(),
                format_number(e.numeric).c_str(), e.note.c_str());
  std::printf("%zu passed, %zu failed; report %s\n", rep.passed(), rep.failed(), out.c_str());
  return rep.all_passed() ? kOk : kVerifyFailed;
}

void add_figure_options(CLI::App* s, FigureArgs& a) {
  s->add_option("--gamma-p", a.gamma_p, "probe relaxation rate")->check(CLI::PositiveNumber);
  s->add_option("--gamma-d", a.gamma_d, "drive relaxation rate")->check(CLI::PositiveNumber);
  s->add_option("--intensity", a.intensity, "photons per length (Fock 1/L, coherent Icp)")
      ->check(CLI::PositiveNumber);
  s->add_option("--delta-d", a.delta_d, "drive detuning");
  s->add_option("--dmin", a.dmin, "lowest probe detuning");
  s->add_option("--dmax", a.dmax, "highest probe detuning");
  s->add_option("--steps", a.steps, "grid points")->check(CLI::Range(2, 10000000));
  s->add_option("--input", a.input, "fock or coherent");
  s->add_option("--out", a.out, "output CSV path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waveguide QED scattering toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config;
  app.add_option("--config", config, "flat key=value file; flags override its values");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "single-photon t, r and phase vs detuning");
  spectrum->add_option("--gamma", sa.gamma, "relaxation rate")->check(CLI::PositiveNumber);
  spectrum->add_option("--dmin", sa.dmin, "lowest detuning");
  spectrum->add_option("--dmax", sa.dmax, "highest detuning");
  spectrum->add_option("--steps", sa.steps, "grid points")->check(CLI::Range(2, 10000000));
  spectrum->add_option("--out", sa.out, "output CSV path");

  FigureArgs ka, ca, fa;
  auto* kerr = app.add_subcommand("kerr", "self-Kerr phases phi1, phi2, phi_p");
  add_figure_options(kerr, ka);
  auto* cross = app.add_subcommand("cross-kerr", "cross-Kerr phase delta_phi_pd");
  add_figure_options(cross, ca);
  auto* figure = app.add_subcommand("figure1", "self- and cross-Kerr columns in one table");
  add_figure_options(figure, fa);

  BlochArgs ba;
  auto* bloch = app.add_subcommand("bloch", "integrate the driven-emitter equations");
  bloch->add_option("--gamma", ba.gamma, "relaxation rate")->check(CLI::PositiveNumber);
  bloch->add_option("--detuning", ba.detuning, "drive detuning");
  bloch->add_option("--rabi", ba.rabi, "Rabi frequency")->check(CLI::NonNegativeNumber);
  bloch->add_option("--t-end", ba.t_end, "final time")->check(CLI::PositiveNumber);
  bloch->add_option("--dt", ba.dt, "step (default: largest allowed)")->check(CLI::PositiveNumber);
  bloch->add_option("--stride", ba.stride, "keep every n-th step")->check(CLI::PositiveNumber);
  bloch->add_option("--out", ba.out, "output CSV path");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "analytic identities and oracle cross-checks");
  verify->add_option("--level", va.level, "fast or full");
  verify->add_option("--out", va.out, "output JSON path");
  verify->add_option("--inject-fault", va.fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (!config.empty()) {
      auto kv = read_config(config);
      for (auto* sub : app.get_subcommands()) apply_config(sub, kv);
    }
    if (spectrum->parsed()) return cmd_spectrum(sa);
    if (kerr->parsed()) return cmd_figure("kerr", ka);
    if (cross->parsed()) return cmd_figure("cross-kerr", ca);
    if (figure->parsed()) return cmd_figure("figure1", fa);
    if (bloch->parsed()) return cmd_bloch(ba);
    if (verify->parsed()) return cmd_verify(va);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
