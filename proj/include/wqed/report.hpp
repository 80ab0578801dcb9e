#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

// printf("%.12g").
std::string format_number(double v);

struct SweepTable {
  std::string axis_name;
  std::vector<double> axis;
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  std::vector<std::pair<std::string, std::string>> metadata;

  // Throws InvalidArgument on ragged columns or a non-monotone axis.
  void validate() const;
  void add_column(const std::string& name, std::vector<double> values);
  const std::vector<double>& column(const std::string& name) const;
  std::string meta(const std::string& key) const;  // "" when absent
};

void write_csv(std::ostream& os, const SweepTable& t);
void write_csv(const std::string& path, const SweepTable& t);
SweepTable read_csv(std::istream& is);
SweepTable read_csv_file(const std::string& path);

std::string to_json(const SweepTable& t);
void write_json(const std::string& path, const SweepTable& t);
SweepTable table_from_json(const std::string& text);

struct VerificationEntry {
  std::string id;
  std::string anchor;  // short description of what is being checked
  double analytic = 0.0;
  double numeric = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool passed = false;
  std::string note;
};

class VerificationReport {
 public:
  // Records the entry and sets its status from the tolerance rule.
  const VerificationEntry& add(std::string id, std::string anchor, double analytic, double numeric,
                               double tolerance, bool relative = false, std::string note = {});
  // Records a check that could not produce a number (e.g. an exception).
  const VerificationEntry& add_failure(std::string id, std::string anchor, std::string note);

  const std::vector<VerificationEntry>& entries() const { return entries_; }
  std::size_t passed() const;
  std::size_t failed() const;
  bool all_passed() const { return failed() == 0; }

  std::vector<std::pair<std::string, std::string>> metadata;

  std::string to_json() const;
  void write_json(const std::string& path) const;

 private:
  std::vector<VerificationEntry> entries_;
};

bool within_tolerance(double analytic, double numeric, double tolerance, bool relative);

// Kerr and cross-Kerr phases vs probe detuning. Grid points at 0 are evaluated as the
// limit from above and noted in the metadata.
enum class BeamKind { Fock, Coherent };

struct Figure1Params {
  double gamma_p = 0.1;
  double gamma_d = 0.1;
  double intensity = 0.0125;  // I_1p = I_1d = I_cp
  double delta_d = 0.0;
  BeamKind input = BeamKind::Fock;
};

SweepTable figure1_dataset(const Figure1Params& p, const std::vector<double>& grid,
                           const UnitSystem& u = {});

// Self-Kerr columns only: phi1, phi2, phi_p.
SweepTable kerr_dataset(const Figure1Params& p, const std::vector<double>& grid,
                        const UnitSystem& u = {});

// Cross-Kerr column only: delta_phi_pd.
SweepTable cross_kerr_dataset(const Figure1Params& p, const std::vector<double>& grid,
                              const UnitSystem& u = {});

std::vector<double> linear_grid(double lo, double hi, int steps);

}  // namespace wqed
