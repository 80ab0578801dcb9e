#include "wqed/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wqed/analytic_2le.hpp"
#include "wqed/analytic_3le.hpp"

namespace wqed {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::IoFailure, "bad number '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorKind::IoFailure, "bad number '" + s + "'");
  return v;
}

// Metadata values are single-line; newlines are escaped so comments stay intact.
std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '\\') o += "\\\\";
    else if (c == '\n') o += "\\n";
    else o += c;
  }
  return o;
}

std::string unescape(const std::string& s) {
  std::string o;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      ++i;
      o += s[i] == 'n' ? '\n' : s[i];
    } else {
      o += s[i];
    }
  }
  return o;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::IoFailure, "write to " + path + " failed");
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void SweepTable::validate() const {
  for (const auto& [name, values] : columns)
    if (values.size() != axis.size())
      throw Error(ErrorKind::InvalidArgument, "column '" + name + "' has the wrong length");
  if (axis.size() < 2) return;
  const bool up = axis[1] > axis[0];
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (up ? !(axis[i] > axis[i - 1]) : !(axis[i] < axis[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "axis is not strictly monotone");
}

void SweepTable::add_column(const std::string& name, std::vector<double> values) {
  if (values.size() != axis.size())
    throw Error(ErrorKind::InvalidArgument, "column '" + name + "' has the wrong length");
  columns.emplace_back(name, std::move(values));
}

const std::vector<double>& SweepTable::column(const std::string& name) const {
  for (const auto& c : columns)
    if (c.first == name) return c.second;
  throw Error(ErrorKind::InvalidArgument, "no column '" + name + "'");
}

std::string SweepTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return {};
}

void write_csv(std::ostream& os, const SweepTable& t) {
  t.validate();
  for (const auto& [k, v] : t.metadata) os << "# " << k << '=' << escape(v) << '\n';
  os << t.axis_name;
  for (const auto& c : t.columns) os << ',' << c.first;
  os << '\n';
  for (std::size_t i = 0; i < t.axis.size(); ++i) {
    os << format_number(t.axis[i]);
    for (const auto& c : t.columns) os << ',' << format_number(c.second[i]);
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::IoFailure, "CSV write failed");
}

void write_csv(const std::string& path, const SweepTable& t) {
  std::ostringstream ss;
  write_csv(ss, t);
  write_text(path, ss.str());
}

SweepTable read_csv(std::istream& is) {
  SweepTable t;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      auto eq = body.find('=');
      if (eq == std::string::npos) t.metadata.emplace_back(body, "");
      else t.metadata.emplace_back(body.substr(0, eq), unescape(body.substr(eq + 1)));
      continue;
    }
    auto cells = split(line, ',');
    if (!header) {
      t.axis_name = cells[0];
      for (std::size_t i = 1; i < cells.size(); ++i) t.columns.emplace_back(cells[i], std::vector<double>{});
      header = true;
      continue;
    }
    if (cells.size() != t.columns.size() + 1) throw Error(ErrorKind::IoFailure, "ragged CSV row");
    t.axis.push_back(parse_number(cells[0]));
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      t.columns[i].second.push_back(parse_number(cells[i + 1]));
  }
  if (!header) throw Error(ErrorKind::IoFailure, "CSV has no header row");
  return t;
}

SweepTable read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + path);
  return read_csv(f);
}

namespace {

// nlohmann emits the shortest representation that round-trips exactly.
ordered_json number_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string to_json(const SweepTable& t) {
  t.validate();
  ordered_json j;
  j["metadata"] = ordered_json::object();
  for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
  j["axis"] = {{"name", t.axis_name}, {"values", number_array(t.axis)}};
  j["columns"] = ordered_json::array();
  for (const auto& [name, values] : t.columns)
    j["columns"].push_back({{"name", name}, {"values", number_array(values)}});
  return j.dump(2) + "\n";
}

void write_json(const std::string& path, const SweepTable& t) { write_text(path, to_json(t)); }

SweepTable table_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    SweepTable t;
    for (auto it = j.at("metadata").begin(); it != j.at("metadata").end(); ++it)
      t.metadata.emplace_back(it.key(), it.value().get<std::string>());
    t.axis_name = j.at("axis").at("name").get<std::string>();
    t.axis = j.at("axis").at("values").get<std::vector<double>>();
    for (const auto& c : j.at("columns"))
      t.columns.emplace_back(c.at("name").get<std::string>(),
                             c.at("values").get<std::vector<double>>());
    t.validate();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoFailure, std::string("bad table JSON: ") + e.what());
  }
}

bool within_tolerance(double analytic, double numeric, double tolerance, bool relative) {
  if (!std::isfinite(analytic) || !std::isfinite(numeric)) return false;
  const double diff = std::abs(analytic - numeric);
  return relative ? diff <= tolerance * std::abs(analytic) : diff <= tolerance;
}

const VerificationEntry& VerificationReport::add(std::string id, std::string anchor,
                                                 double analytic, double numeric,
                                                 double tolerance, bool relative,
                                                 std::string note) {
  VerificationEntry e;
  e.id = std::move(id);
  e.anchor = std::move(anchor);
  e.analytic = analytic;
  e.numeric = numeric;
  e.tolerance = tolerance;
  e.relative = relative;
  e.passed = within_tolerance(analytic, numeric, tolerance, relative);
  e.note = std::move(note);
  entries_.push_back(std::move(e));
  return entries_.back();
}

const VerificationEntry& VerificationReport::add_failure(std::string id, std::string anchor,
                                                         std::string note) {
  VerificationEntry e;
  e.id = std::move(id);
  e.anchor = std::move(anchor);
  e.analytic = std::nan("");
  e.numeric = std::nan("");
  e.note = std::move(note);
  entries_.push_back(std::move(e));
  return entries_.back();
}

std::size_t VerificationReport::passed() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.passed ? 1 : 0;
  return n;
}

std::size_t VerificationReport::failed() const { return entries_.size() - passed(); }

std::string VerificationReport::to_json() const {
  auto num = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  ordered_json j;
  j["metadata"] = ordered_json::object();
  for (const auto& [k, v] : metadata) j["metadata"][k] = v;
  j["entries"] = ordered_json::array();
  for (const auto& e : entries_) {
    ordered_json o;
    o["id"] = e.id;
    o["anchor"] = e.anchor;
    o["analytic"] = num(e.analytic);
    o["numeric"] = num(e.numeric);
    o["tolerance"] = e.tolerance;
    o["tolerance_kind"] = e.relative ? "relative" : "absolute";
    o["status"] = e.passed ? "pass" : "fail";
    if (!e.note.empty()) o["note"] = e.note;
    j["entries"].push_back(o);
  }
  j["summary"] = {{"total", entries_.size()}, {"passed", passed()}, {"failed", failed()}};
  return j.dump(2) + "\n";
}

void VerificationReport::write_json(const std::string& path) const {
  write_text(path, to_json());
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "steps must be >= 2");
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "grid needs lo < hi");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
  // Snap values that should be exactly zero (e.g. a symmetric grid's centre).
  for (double& v : g)
    if (std::abs(v) < 1e-12 * (hi - lo)) v = 0.0;
  return g;
}

namespace {

void figure_metadata(SweepTable& t, const Figure1Params& p, const UnitSystem& u) {
  t.metadata = {{"gamma_p", format_number(p.gamma_p)},
                {"gamma_d", format_number(p.gamma_d)},
                {"intensity", format_number(p.intensity)},
                {"delta_d", format_number(p.delta_d)},
                {"input", p.input == BeamKind::Fock ? "fock" : "coherent"},
                {"vg", format_number(u.vg)},
                {"omega21", format_number(u.omega21)},
                {"units", "hbar=1, frequencies in omega21, phases in rad"}};
}

bool has_zero(const std::vector<double>& grid) {
  for (double d : grid)
    if (d == 0.0) return true;
  return false;
}

CoherenceResult self_coherence(const Figure1Params& p, double d, const UnitSystem& u) {
  const LimitSide side = d == 0.0 ? LimitSide::Above : LimitSide::None;
  if (p.input == BeamKind::Fock) return g1_fock_two_photon(d, p.gamma_p, 1.0 / p.intensity, side, u);
  const double omega = std::sqrt(2.0 * u.vg * p.gamma_p * p.intensity);
  return g1_coherent(d, p.gamma_p, omega, CoherentMode::WeakExpansion, side, u);
}

CoherenceResult cross_coherence(const Figure1Params& p, double d, const UnitSystem& u) {
  const LimitSide side = d == 0.0 ? LimitSide::Above : LimitSide::None;
  FieldInput drive =
      p.input == BeamKind::Fock
          ? FieldInput::fock(1, 1.0 / p.intensity, p.delta_d, Channel::Drive)
          : FieldInput::coherent(std::sqrt(2.0 * u.vg * p.gamma_d * p.intensity), p.delta_d,
                                 Channel::Drive);
  return cross_g1(d, p.delta_d, p.gamma_p, p.gamma_d, drive, side, p.intensity, u);
}

void check_params(const Figure1Params& p) {
  if (!(p.gamma_p > 0.0) || !(p.gamma_d > 0.0))
    throw Error(ErrorKind::InvalidArgument, "relaxation rates must be positive");
  if (!(p.intensity > 0.0)) throw Error(ErrorKind::InvalidArgument, "intensity must be positive");
}

SweepTable base_table(const Figure1Params& p, const std::vector<double>& grid,
                      const UnitSystem& u) {
  check_params(p);
  SweepTable t;
  t.axis_name = "delta_p";
  t.axis = grid;
  figure_metadata(t, p, u);
  if (has_zero(grid)) t.metadata.emplace_back("delta_p_zero", "evaluated as the limit from above");
  t.validate();
  return t;
}

}  // namespace

SweepTable kerr_dataset(const Figure1Params& p, const std::vector<double>& grid,
                        const UnitSystem& u) {
  SweepTable t = base_table(p, grid, u);
  std::vector<double> phi1, phi2, phip;
  for (double d : grid) {
    auto r = self_coherence(p, d, u);
    phi1.push_back(r.phases.phi_linear);
    phi2.push_back(r.phases.phi_nonlinear);
    phip.push_back(r.phases.phi_total);
  }
  t.add_column("phi1", std::move(phi1));
  t.add_column("phi2", std::move(phi2));
  t.add_column("phi_p", std::move(phip));
  return t;
}

SweepTable cross_kerr_dataset(const Figure1Params& p, const std::vector<double>& grid,
                              const UnitSystem& u) {
  SweepTable t = base_table(p, grid, u);
  std::vector<double> dphi;
  for (double d : grid) dphi.push_back(cross_coherence(p, d, u).phases.phi_nonlinear);
  t.add_column("delta_phi_pd", std::move(dphi));
  return t;
}

SweepTable figure1_dataset(const Figure1Params& p, const std::vector<double>& grid,
                           const UnitSystem& u) {
  SweepTable t = kerr_dataset(p, grid, u);
  auto c = cross_kerr_dataset(p, grid, u);
  t.add_column("delta_phi_pd", c.column("delta_phi_pd"));
  return t;
}

}  // namespace wqed
