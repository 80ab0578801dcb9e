#pragma once

#include <string>

#include "wqed/report.hpp"

namespace wqed::cli {

struct VerifyOptions {
  bool full = false;
  double gamma = 0.1;
  double intensity = 0.0125;
  // Test-only: evaluate the analytic side with the sign of gamma flipped.
  bool fault_gamma_sign = false;
};

VerificationReport run_verification(const VerifyOptions& opt);

}  // namespace wqed::cli
