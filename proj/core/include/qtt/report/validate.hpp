#pragma once

#include <string>
#include <vector>

#include "qtt/report/config.hpp"
#include "qtt/report/table.hpp"

namespace qtt::report {

/// One cross-check between two independent routes to the same number.
/// A measurement is reported but never fails (e.g. the region-II ratio).
struct Check {
  std::string name;
  double measured = 0.0;  ///< discrepancy, or the measured quantity for a measurement
  double tolerance = 0.0; ///< zero for measurements
  bool passed = true;
  bool measurement_only = false;
  std::string detail;
};

std::vector<Check> run_validation(const ExperimentConfig& config);

/// name, measured, tolerance, verdict ("pass", "FAIL" or "measured"), detail.
FigureTable validation_table(const std::vector<Check>& checks);

} // namespace qtt::report
