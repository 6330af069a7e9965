#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtt/atomic_model.hpp"

namespace qtt::report {

enum class Mode { rect, atom, tables, validate };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

struct RectGrid {
  std::vector<double> energies{1.0};
  std::vector<double> heights{1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, 3.25,
                              3.5, 3.75, 4.0, 4.25, 4.5, 4.75, 5.0};
  std::vector<double> widths{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  double x_left = 2.0;
  double x_tilde_left = 1.0;
  double region3_distance = 1.0; ///< x_tilde_right - x_right
};

struct Tolerances {
  double rect_rel = 1e-10;
  double wkb_rel = 1e-8;
  double root = 1e-10;
};

struct ExperimentConfig {
  Mode mode = Mode::tables;
  std::vector<atom::Atom> atoms{atom::Atom::He, atom::Atom::Ar, atom::Atom::Kr};
  std::vector<double> intensities_W_cm2{1.08e14, 1.7e14, 6.12e14};
  atom::LaserSpec laser{};
  atom::FieldConvention field_convention = atom::FieldConvention::divide;
  atom::SeparationIp separation_ip = atom::SeparationIp::stark_shifted;
  RectGrid rect{};
  std::filesystem::path output_dir = "qtt-out";
  Tolerances tolerances{};
  /// Point where the electron is taken to leave the barrier region; eta_R when unset.
  std::optional<double> exit_eta;
  bool trajectories = false;
  int trajectory_samples = 121;
  /// Trajectories run out to trajectory_extent * eta_R.
  double trajectory_extent = 2.0;
  std::optional<std::filesystem::path> experiment_data;
  atom::Atom overlay_atom = atom::Atom::He;
};

/// Parses a JSON document; every key is optional. Unknown keys and type
/// mismatches throw InvalidConfig.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Throws InvalidConfig for empty grids or values outside their domain and
/// returns warnings for settings that are legal but outside the model's regime.
std::vector<std::string> validate_config(const ExperimentConfig& config);

/// Stable serialisation of every field, used for the provenance hash.
std::string canonical_json(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

} // namespace qtt::report
