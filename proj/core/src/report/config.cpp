#include "qtt/report/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qtt/error.hpp"
#include "qtt/report/table.hpp"

namespace qtt::report {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) invalid("unknown key '" + key + "' in " + std::string(where));
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    invalid(std::string("key '") + key + "' has the wrong type");
  }
}

std::string_view to_string(atom::FieldConvention c) {
  return c == atom::FieldConvention::divide ? "divide" : "multiply";
}

std::string_view to_string(atom::SeparationIp s) {
  return s == atom::SeparationIp::stark_shifted ? "stark_shifted" : "field_free";
}

atom::Atom atom_from(const std::string& name) {
  const auto a = atom::parse_atom(name);
  if (!a) invalid("unsupported atom '" + name + "' (expected He, Ar or Kr)");
  return *a;
}

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) invalid(std::string(what) + " contains a non-finite value");
  }
}

} // namespace

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
  case Mode::rect: return "rect";
  case Mode::atom: return "atom";
  case Mode::tables: return "tables";
  case Mode::validate: return "validate";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  for (Mode m : {Mode::rect, Mode::atom, Mode::tables, Mode::validate}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) invalid("config must be a JSON object");
  reject_unknown(doc, "config",
                 {"mode", "atoms", "intensities_Wcm2", "laser", "field_convention",
                  "separation_ip", "rect", "output_dir", "tolerances", "exit_eta",
                  "trajectories", "trajectory_samples", "trajectory_extent", "experiment_data",
                  "overlay_atom"});

  ExperimentConfig cfg;
  if (doc.contains("mode")) {
    std::string m;
    read(doc, "mode", m);
    const auto mode = parse_mode(m);
    if (!mode) invalid("unknown mode '" + m + "'");
    cfg.mode = *mode;
  }
  if (doc.contains("atoms")) {
    std::vector<std::string> names;
    read(doc, "atoms", names);
    cfg.atoms.clear();
    for (const auto& n : names) cfg.atoms.push_back(atom_from(n));
  }
  read(doc, "intensities_Wcm2", cfg.intensities_W_cm2);

  if (doc.contains("laser")) {
    const json& l = doc.at("laser");
    if (!l.is_object()) invalid("'laser' must be an object");
    reject_unknown(l, "laser", {"ellipticity", "omega", "tau_fs"});
    read(l, "ellipticity", cfg.laser.ellipticity);
    read(l, "omega", cfg.laser.omega);
    read(l, "tau_fs", cfg.laser.tau_fs);
  }
  if (doc.contains("field_convention")) {
    std::string c;
    read(doc, "field_convention", c);
    if (c == "divide") cfg.field_convention = atom::FieldConvention::divide;
    else if (c == "multiply") cfg.field_convention = atom::FieldConvention::multiply;
    else invalid("field_convention must be 'divide' or 'multiply'");
  }
  if (doc.contains("separation_ip")) {
    std::string s;
    read(doc, "separation_ip", s);
    if (s == "stark_shifted") cfg.separation_ip = atom::SeparationIp::stark_shifted;
    else if (s == "field_free") cfg.separation_ip = atom::SeparationIp::field_free;
    else invalid("separation_ip must be 'stark_shifted' or 'field_free'");
  }
  if (doc.contains("rect")) {
    const json& r = doc.at("rect");
    if (!r.is_object()) invalid("'rect' must be an object");
    reject_unknown(r, "rect",
                   {"energies", "heights", "widths", "x_left", "x_tilde_left", "region3_distance"});
    read(r, "energies", cfg.rect.energies);
    read(r, "heights", cfg.rect.heights);
    read(r, "widths", cfg.rect.widths);
    read(r, "x_left", cfg.rect.x_left);
    read(r, "x_tilde_left", cfg.rect.x_tilde_left);
    read(r, "region3_distance", cfg.rect.region3_distance);
  }
  if (doc.contains("output_dir")) {
    std::string dir;
    read(doc, "output_dir", dir);
    cfg.output_dir = dir;
  }
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) invalid("'tolerances' must be an object");
    reject_unknown(t, "tolerances", {"rect_rel", "wkb_rel", "root"});
    read(t, "rect_rel", cfg.tolerances.rect_rel);
    read(t, "wkb_rel", cfg.tolerances.wkb_rel);
    read(t, "root", cfg.tolerances.root);
  }
  if (doc.contains("exit_eta") && !doc.at("exit_eta").is_null()) {
    double e = 0.0;
    read(doc, "exit_eta", e);
    cfg.exit_eta = e;
  }
  read(doc, "trajectories", cfg.trajectories);
  read(doc, "trajectory_samples", cfg.trajectory_samples);
  read(doc, "trajectory_extent", cfg.trajectory_extent);
  if (doc.contains("experiment_data") && !doc.at("experiment_data").is_null()) {
    std::string p;
    read(doc, "experiment_data", p);
    cfg.experiment_data = p;
  }
  if (doc.contains("overlay_atom")) {
    std::string a;
    read(doc, "overlay_atom", a);
    cfg.overlay_atom = atom_from(a);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> warnings;
  if (cfg.atoms.empty()) invalid("atom list is empty");
  if (cfg.intensities_W_cm2.empty()) invalid("intensity grid is empty");
  require_finite(cfg.intensities_W_cm2, "intensity grid");
  for (double I : cfg.intensities_W_cm2) {
    if (!(I > 0.0)) invalid("intensities must be positive");
    if (I < 1e13 || I > 1e15) {
      std::ostringstream msg;
      msg << "intensity " << I << " W/cm2 lies outside [1e13, 1e15], where the model is tested";
      warnings.push_back(msg.str());
    }
  }
  if (std::set<atom::Atom>(cfg.atoms.begin(), cfg.atoms.end()).size() != cfg.atoms.size()) {
    warnings.emplace_back("atom list contains duplicates");
  }
  if (!(cfg.laser.ellipticity >= 0.0 && cfg.laser.ellipticity <= 1.0)) {
    invalid("ellipticity must lie in [0, 1]");
  }
  if (!(cfg.laser.omega > 0.0) || !(cfg.laser.tau_fs > 0.0)) {
    invalid("omega and tau_fs must be positive");
  }

  const RectGrid& r = cfg.rect;
  if (r.energies.empty() || r.heights.empty() || r.widths.empty()) {
    invalid("rectangular-barrier grids must be non-empty");
  }
  require_finite(r.energies, "rect.energies");
  require_finite(r.heights, "rect.heights");
  require_finite(r.widths, "rect.widths");
  for (double E : r.energies) {
    if (!(E > 0.0)) invalid("rect.energies must be positive");
  }
  for (double w : r.widths) {
    if (!(w > 0.0)) invalid("rect.widths must be positive");
  }
  if (!(r.x_tilde_left < r.x_left)) invalid("rect.x_tilde_left must lie left of rect.x_left");
  if (!(r.region3_distance >= 0.0)) invalid("rect.region3_distance must be non-negative");

  const Tolerances& t = cfg.tolerances;
  for (double v : {t.rect_rel, t.wkb_rel, t.root}) {
    if (!(v > 0.0 && v < 1e-2)) invalid("tolerances must lie in (0, 1e-2)");
  }
  if (cfg.exit_eta && !(*cfg.exit_eta > 0.0 && std::isfinite(*cfg.exit_eta))) {
    invalid("exit_eta must be positive and finite");
  }
  if (cfg.trajectory_samples < 8) invalid("trajectory_samples must be at least 8");
  if (!(cfg.trajectory_extent > 1.0)) invalid("trajectory_extent must exceed 1");
  return warnings;
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json doc;
  doc["mode"] = std::string(to_string(cfg.mode));
  json atoms = json::array();
  for (auto a : cfg.atoms) atoms.push_back(std::string(atom::to_string(a)));
  doc["atoms"] = std::move(atoms);
  json intensities = json::array();
  for (double I : cfg.intensities_W_cm2) intensities.push_back(format_number(I));
  doc["intensities_Wcm2"] = std::move(intensities);
  doc["laser"] = {{"ellipticity", format_number(cfg.laser.ellipticity)},
                  {"omega", format_number(cfg.laser.omega)},
                  {"tau_fs", format_number(cfg.laser.tau_fs)}};
  doc["field_convention"] = std::string(to_string(cfg.field_convention));
  doc["separation_ip"] = std::string(to_string(cfg.separation_ip));
  const auto numbers = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(format_number(x));
    return a;
  };
  doc["rect"] = {{"energies", numbers(cfg.rect.energies)},
                 {"heights", numbers(cfg.rect.heights)},
                 {"widths", numbers(cfg.rect.widths)},
                 {"x_left", format_number(cfg.rect.x_left)},
                 {"x_tilde_left", format_number(cfg.rect.x_tilde_left)},
                 {"region3_distance", format_number(cfg.rect.region3_distance)}};
  doc["tolerances"] = {{"rect_rel", format_number(cfg.tolerances.rect_rel)},
                       {"wkb_rel", format_number(cfg.tolerances.wkb_rel)},
                       {"root", format_number(cfg.tolerances.root)}};
  doc["exit_eta"] = cfg.exit_eta ? json(format_number(*cfg.exit_eta)) : json(nullptr);
  doc["trajectories"] = cfg.trajectories;
  doc["trajectory_samples"] = cfg.trajectory_samples;
  doc["trajectory_extent"] = format_number(cfg.trajectory_extent);
  doc["experiment_data"] =
      cfg.experiment_data ? json(cfg.experiment_data->generic_string()) : json(nullptr);
  doc["overlay_atom"] = std::string(atom::to_string(cfg.overlay_atom));
  // output_dir is not hashed.
  return doc.dump();
}

std::string config_hash(const ExperimentConfig& cfg) { return hex64(fnv1a(canonical_json(cfg))); }

} // namespace qtt::report
