#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtt/report/config.hpp"
#include "qtt/report/experiment.hpp"
#include "qtt/report/table.hpp"
#include "qtt/wkb.hpp"

namespace qtt::report {

/// Geometry and travel time for one (atom, intensity) job. On failure the
/// numbers are NaN and status holds "<ErrorCode>: <message>".
struct AtomPoint {
  atom::Atom atom;
  double intensity_W_cm2;
  double E0 = 0.0;
  double Ip = 0.0;
  std::optional<wkb::BarrierGeometry> geometry;
  double exit_eta = 0.0;
  double qtt_as = 0.0;
  std::string status = "ok";

  bool ok() const noexcept { return status == "ok"; }
};

/// Travel time from eta_I to config.exit_eta (eta_R when unset).
AtomPoint compute_point(const ExperimentConfig& config, atom::Atom atom, double intensity_W_cm2);

/// Turning points, chi and travel time for every configured atom at
/// 1.08e14 and 6.12e14 W/cm^2 plus any other configured intensity.
FigureTable run_tables(const ExperimentConfig& config);

/// Travel time against intensity in long format, one row per (atom, intensity).
FigureTable run_time_vs_intensity(const ExperimentConfig& config);

struct TrajectoryRun {
  std::vector<FigureTable> trajectories; ///< one per (atom, intensity)
  FigureTable summary;                   ///< boundary jump and slopes per trajectory
};

/// Cumulative time from eta_I through eta_R into the continuum for every
/// configured atom at 1.08e14 and 6.12e14 W/cm^2.
TrajectoryRun run_trajectories(const ExperimentConfig& config);

/// Region I, II and III times and the dwell time over the rect grid.
FigureTable run_rect(const ExperimentConfig& config);

struct Overlay {
  FigureTable table;
  std::vector<std::string> warnings;
};

/// Model travel time for config.overlay_atom next to measured values; no fitting.
Overlay overlay_experiment(const ExperimentConfig& config, const ExperimentalDataset& data);

/// The tables a mode produces, in the order they are written.
struct RunResult {
  std::vector<FigureTable> tables;
  std::vector<std::string> warnings;
};

RunResult run(const ExperimentConfig& config);

/// Writes each table to <output_dir>/<name>.csv and returns the paths.
std::vector<std::filesystem::path> write_tables(const std::vector<FigureTable>& tables,
                                                const std::filesystem::path& output_dir);

} // namespace qtt::report
