#pragma once

#include <string>
#include <vector>

#include "ldoskit/cli/scenario.hpp"

namespace ldoskit::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // achieved figures
};

struct AcceptanceOptions {
  /// Spectra are kept under work_dir/<build id>/ and reused by the same build.
  std::string work_dir = "acceptance-work";
  /// Doubles both grid sizes (1, 2 nm -> 2, 4 nm), samples 27 energies and
  /// scales the magnitude targets by delta^-3; runtime limits are not applied.
  bool reduced = false;
  int threads = 1;
  bool reuse = true;
  std::vector<int> only;  // criterion ids; empty runs 1..8
  LogFn log;
};

/// Library source hash compiled into this build.
const char* build_id();

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o);

/// One line: "PASS [n] title: detail" or "FAIL [n] ...".
std::string format_criterion(const CriterionResult& r);

}  // namespace ldoskit::cli
