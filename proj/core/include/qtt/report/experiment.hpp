#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qtt::report {

struct ExperimentalPoint {
  double intensity_W_cm2;
  double time_as;
  double error_as;
  std::string instrument;
};

/// Measured ionisation times, sorted by intensity with no repeated intensity.
struct ExperimentalDataset {
  std::vector<ExperimentalPoint> points;
};

/// CSV with the header line `intensity_Wcm2,time_as,error_as,instrument`.
/// Blank lines and lines starting with '#' are skipped. Rows come back sorted;
/// MalformedDataFile (with the offending line number) on any bad row or on a
/// repeated intensity.
ExperimentalDataset parse_dataset(std::string_view text);
ExperimentalDataset read_dataset(std::istream& in);
ExperimentalDataset load_dataset(const std::filesystem::path& path);

} // namespace qtt::report
