#include "qtt/report/runs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <thread>

#include "qtt/error.hpp"
#include "qtt/rect_barrier.hpp"
#include "qtt/report/reference.hpp"
#include "qtt/report/validate.hpp"
#include "qtt/units.hpp"

namespace qtt::report {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLowIntensity = 1.08e14;
constexpr double kHighIntensity = 6.12e14;

std::string status_of(const Error& e) {
  std::string s(to_string(e.code()));
  s += ": ";
  s += e.detail();
  return s;
}

std::string intensity_tag(double I) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", I);
  std::string s(buf);
  if (const auto p = s.find("e+"); p != std::string::npos) s.erase(p + 1, 1);
  return s;
}

// Jobs are claimed from a shared counter by a bounded set of workers; results
// land in their own slot, so the output order is the job order.
template <class Fn>
auto run_parallel(std::size_t count, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) slots[i].emplace(fn(i));
  };
  const std::size_t n_workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> workers;
  for (std::size_t w = 0; w < n_workers; ++w) {
    workers.push_back(std::async(std::launch::async, worker));
  }
  for (auto& w : workers) w.get();
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct Job {
  atom::Atom atom;
  double intensity;
};

std::vector<Job> grid(const std::vector<atom::Atom>& atoms, const std::vector<double>& intensities,
                      bool intensity_major) {
  std::vector<Job> jobs;
  if (intensity_major) {
    for (double I : intensities)
      for (auto a : atoms) jobs.push_back({a, I});
  } else {
    for (auto a : atoms)
      for (double I : intensities) jobs.push_back({a, I});
  }
  return jobs;
}

atom::EffectiveModel model_for(const ExperimentConfig& cfg, atom::Atom a, double I) {
  atom::LaserSpec laser = cfg.laser;
  laser.intensity_W_cm2 = I;
  return atom::make_model(a, laser, cfg.field_convention, cfg.separation_ip);
}

wkb::BarrierOptions barrier_options(const ExperimentConfig& cfg) {
  wkb::BarrierOptions o;
  o.root_tol = cfg.tolerances.root;
  o.rel_tol = cfg.tolerances.wkb_rel;
  return o;
}

wkb::TunnelingOptions tunneling_options(const ExperimentConfig& cfg) {
  wkb::TunnelingOptions o;
  o.rel_tol = cfg.tolerances.wkb_rel;
  return o;
}

FigureTable stamped(FigureTable t, const std::string& hash) {
  t.set_config_hash(hash);
  return t;
}

double phase_time_reference(atom::Atom a, double I) {
  if (a != atom::Atom::Kr) return kNaN;
  for (const auto& r : reference::kKrTimes) {
    if (r.intensity_W_cm2 == I) return r.phase_time_as;
  }
  return kNaN;
}

} // namespace

AtomPoint compute_point(const ExperimentConfig& cfg, atom::Atom a, double I) {
  AtomPoint p{a, I, 0.0, 0.0, std::nullopt};
  p.E0 = p.Ip = p.exit_eta = p.qtt_as = kNaN;
  try {
    const auto model = model_for(cfg, a, I);
    p.E0 = model.E0();
    p.Ip = model.Ip();
    p.geometry = wkb::locate_barrier(model, barrier_options(cfg));
    p.exit_eta = cfg.exit_eta.value_or(p.geometry->eta_R);
    const double t = cfg.exit_eta
                         ? wkb::qtt_to_exit(model, *p.geometry, p.exit_eta, tunneling_options(cfg))
                         : wkb::qtt_tunneling(model, *p.geometry, tunneling_options(cfg));
    p.qtt_as = atomic_time_to_as(t);
  } catch (const Error& e) {
    p.status = status_of(e);
  }
  return p;
}

FigureTable run_tables(const ExperimentConfig& cfg) {
  std::vector<double> intensities{kLowIntensity, kHighIntensity};
  for (double I : cfg.intensities_W_cm2) {
    if (std::find(intensities.begin(), intensities.end(), I) == intensities.end()) {
      intensities.push_back(I);
    }
  }
  const auto jobs = grid(cfg.atoms, intensities, true);
  const auto points =
      run_parallel(jobs.size(), [&](std::size_t i) { return compute_point(cfg, jobs[i].atom, jobs[i].intensity); });

  FigureTable t("turning_points",
                {Column::label("atom"), Column::number("intensity_Wcm2", Unit::W_per_cm2),
                 Column::number("E0", Unit::atomic_field), Column::number("Ip", Unit::atomic_energy),
                 Column::number("eta_L", Unit::atomic_length),
                 Column::number("eta_I", Unit::atomic_length),
                 Column::number("eta_R", Unit::atomic_length),
                 Column::number("chi", Unit::dimensionless),
                 Column::number("exit_eta", Unit::atomic_length),
                 Column::number("qtt_as", Unit::attosecond), Column::label("status")},
                "turning points eta_L, eta_R and barrier maximum eta_I, with chi and "
                "the travel time from eta_I to the exit");
  for (const auto& p : points) {
    const auto& g = p.geometry;
    t.add_row({std::string(atom::to_string(p.atom)), p.intensity_W_cm2, p.E0, p.Ip,
               g ? g->eta_L : kNaN, g ? g->eta_I : kNaN, g ? g->eta_R : kNaN, g ? g->chi : kNaN,
               p.exit_eta, p.qtt_as, p.status});
  }
  return stamped(std::move(t), config_hash(cfg));
}

FigureTable run_time_vs_intensity(const ExperimentConfig& cfg) {
  const auto jobs = grid(cfg.atoms, cfg.intensities_W_cm2, false);
  const auto points =
      run_parallel(jobs.size(), [&](std::size_t i) { return compute_point(cfg, jobs[i].atom, jobs[i].intensity); });

  FigureTable t("qtt_vs_intensity",
                {Column::label("atom"), Column::number("intensity_Wcm2", Unit::W_per_cm2),
                 Column::number("E0", Unit::atomic_field),
                 Column::number("exit_eta", Unit::atomic_length),
                 Column::number("qtt_as", Unit::attosecond),
                 Column::number("phase_time_ref_as", Unit::attosecond), Column::label("status")},
                "travel time against laser intensity; phase_time_ref_as carries "
                "literature phase-time values for Kr as external constants");
  for (const auto& p : points) {
    t.add_row({std::string(atom::to_string(p.atom)), p.intensity_W_cm2, p.E0, p.exit_eta, p.qtt_as,
               phase_time_reference(p.atom, p.intensity_W_cm2), p.status});
  }
  return stamped(std::move(t), config_hash(cfg));
}

TrajectoryRun run_trajectories(const ExperimentConfig& cfg) {
  const auto jobs = grid(cfg.atoms, {kLowIntensity, kHighIntensity}, false);
  struct Result {
    Job job;
    std::optional<wkb::BarrierGeometry> geom;
    std::optional<wkb::QttTrajectory> traj;
    std::string status = "ok";
  };
  const auto results = run_parallel(jobs.size(), [&](std::size_t i) {
    Result r{jobs[i], std::nullopt, std::nullopt};
    try {
      const auto model = model_for(cfg, r.job.atom, r.job.intensity);
      r.geom = wkb::locate_barrier(model, barrier_options(cfg));
      r.traj = wkb::qtt_trajectory(model, *r.geom, cfg.trajectory_extent * r.geom->eta_R,
                                   cfg.trajectory_samples, tunneling_options(cfg));
    } catch (const Error& e) {
      r.status = status_of(e);
    }
    return r;
  });

  const std::string hash = config_hash(cfg);
  FigureTable summary(
      "trajectory_summary",
      {Column::label("atom"), Column::number("intensity_Wcm2", Unit::W_per_cm2),
       Column::number("eta_R", Unit::atomic_length), Column::number("left_limit_as", Unit::attosecond),
       Column::number("right_limit_as", Unit::attosecond),
       Column::number("jump_as", Unit::attosecond), Column::number("tolerance_as", Unit::attosecond),
       Column::number("slope_ratio", Unit::dimensionless),
       Column::number("monotone", Unit::dimensionless), Column::label("status")},
      "continuity of the cumulative time at eta_R and the slopes on either side");
  TrajectoryRun out{{}, summary};

  for (const auto& r : results) {
    const std::string atom_name(atom::to_string(r.job.atom));
    if (!r.traj) {
      out.summary.add_row({atom_name, r.job.intensity, r.geom ? r.geom->eta_R : kNaN, kNaN, kNaN,
                           kNaN, kNaN, kNaN, kNaN, r.status});
      continue;
    }
    const auto& tr = *r.traj;
    FigureTable t("trajectory_" + atom_name + "_" + intensity_tag(r.job.intensity),
                  {Column::number("eta", Unit::atomic_length),
                   Column::number("time_as", Unit::attosecond), Column::label("region"),
                   Column::label("marker")},
                  "cumulative travel time through the barrier (II) and the "
                  "continuum (III) for " +
                      atom_name + " at " + intensity_tag(r.job.intensity) + " W/cm2");
    bool monotone = true;
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
      const auto& s = tr.samples[i];
      if (i > 0 && !(s.time >= tr.samples[i - 1].time)) monotone = false;
      t.add_row({s.eta, atomic_time_to_as(s.time), std::string(i <= tr.boundary_index ? "II" : "III"),
                 std::string(i == tr.boundary_index ? "eta_R" : "")});
    }
    out.trajectories.push_back(stamped(std::move(t), hash));
    out.summary.add_row({atom_name, r.job.intensity, r.geom->eta_R, atomic_time_to_as(tr.left_limit),
                         atomic_time_to_as(tr.right_limit), atomic_time_to_as(tr.boundary_jump()),
                         atomic_time_to_as(tr.tolerance), tr.slope_right / tr.slope_left,
                         monotone ? 1.0 : 0.0, r.status});
  }
  out.summary.set_config_hash(hash);
  return out;
}

FigureTable run_rect(const ExperimentConfig& cfg) {
  const RectGrid& g = cfg.rect;
  struct Point {
    double E, V0, w;
  };
  std::vector<Point> points;
  for (double E : g.energies)
    for (double V0 : g.heights)
      for (double w : g.widths) points.push_back({E, V0, w});

  using Row = std::vector<Cell>;
  const double rel = cfg.tolerances.rect_rel;
  const auto rows = run_parallel(points.size(), [&](std::size_t i) -> Row {
    const Point& p = points[i];
    const rect::BarrierSpec spec{p.E, p.V0, g.x_left, g.x_left + p.w};
    Row row{p.E, p.V0, p.w};
    try {
      const auto sol = rect::solve(spec);
      std::string status = "ok";
      double closed_I = kNaN;
      try {
        closed_I = rect::qtt_region_I(spec, sol, g.x_tilde_left, rect::TimeMethod::closed_form, rel).time;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BranchDivergence) throw;
        status = "BranchDivergence: region I closed form replaced by quadrature";
      }
      const double quad_I =
          rect::qtt_region_I(spec, sol, g.x_tilde_left, rect::TimeMethod::quadrature, rel).time;
      const auto II = rect::qtt_region_II_breakdown(spec, sol, rel);
      const double III = rect::qtt_region_III(spec, spec.x_right + g.region3_distance).time;
      const double dwell = rect::dwell_time(spec, sol);
      const double best_I = std::isnan(closed_I) ? quad_I : closed_I;
      row.insert(row.end(),
                 {sol.R, sol.T, atomic_time_to_as(best_I), atomic_time_to_as(closed_I),
                  atomic_time_to_as(quad_I), atomic_time_to_as(II.closed_total()),
                  atomic_time_to_as(II.quadrature_total()), II.exponential_ratio(),
                  atomic_time_to_as(III), atomic_time_to_as(dwell), status});
    } catch (const Error& e) {
      for (int k = 0; k < 10; ++k) row.emplace_back(kNaN);
      row.emplace_back(status_of(e));
    }
    return row;
  });

  FigureTable t("rect_barrier",
                {Column::number("E", Unit::atomic_energy), Column::number("V0", Unit::atomic_energy),
                 Column::number("width", Unit::atomic_length), Column::number("R", Unit::dimensionless),
                 Column::number("T", Unit::dimensionless), Column::number("qtt_I_as", Unit::attosecond),
                 Column::number("qtt_I_closed_as", Unit::attosecond),
                 Column::number("qtt_I_quadrature_as", Unit::attosecond),
                 Column::number("qtt_II_closed_as", Unit::attosecond),
                 Column::number("qtt_II_quadrature_as", Unit::attosecond),
                 Column::number("qtt_II_exp_ratio", Unit::dimensionless),
                 Column::number("qtt_III_as", Unit::attosecond),
                 Column::number("dwell_as", Unit::attosecond), Column::label("status")},
                "Figs. 2-3: travel times in front of (I), inside (II) and behind (III) a "
                "rectangular barrier over barrier height and width, with the dwell time");
  for (const auto& r : rows) t.add_row(r);
  return stamped(std::move(t), config_hash(cfg));
}

Overlay overlay_experiment(const ExperimentConfig& cfg, const ExperimentalDataset& data) {
  Overlay out{FigureTable("overlay_" + std::string(atom::to_string(cfg.overlay_atom)),
                          {Column::number("intensity_Wcm2", Unit::W_per_cm2),
                           Column::number("qtt_model_as", Unit::attosecond),
                           Column::number("t_exp_as", Unit::attosecond),
                           Column::number("sigma_exp_as", Unit::attosecond),
                           Column::number("residual_as", Unit::attosecond),
                           Column::label("instrument"), Column::label("status")},
                          "model travel time next to measured ionisation times; "
                          "residual = t_exp - qtt_model, no fitting"),
              {}};

  std::vector<double> intensities;
  if (data.points.empty()) {
    out.warnings.emplace_back("experimental dataset is empty; writing the model curve only");
    intensities = cfg.intensities_W_cm2;
    std::sort(intensities.begin(), intensities.end());
  } else {
    for (const auto& p : data.points) intensities.push_back(p.intensity_W_cm2);
  }
  const auto model = run_parallel(intensities.size(), [&](std::size_t i) {
    return compute_point(cfg, cfg.overlay_atom, intensities[i]);
  });

  for (std::size_t i = 0; i < intensities.size(); ++i) {
    const auto& m = model[i];
    if (data.points.empty()) {
      out.table.add_row({m.intensity_W_cm2, m.qtt_as, kNaN, kNaN, kNaN, std::string(), m.status});
    } else {
      const auto& p = data.points[i];
      out.table.add_row({p.intensity_W_cm2, m.qtt_as, p.time_as, p.error_as, p.time_as - m.qtt_as,
                         p.instrument, m.status});
    }
  }
  out.table.set_config_hash(config_hash(cfg));
  return out;
}

RunResult run(const ExperimentConfig& cfg) {
  RunResult result;
  result.warnings = validate_config(cfg);
  switch (cfg.mode) {
  case Mode::tables:
    result.tables.push_back(run_tables(cfg));
    break;
  case Mode::atom: {
    result.tables.push_back(run_time_vs_intensity(cfg));
    if (cfg.trajectories) {
      auto tr = run_trajectories(cfg);
      for (auto& t : tr.trajectories) result.tables.push_back(std::move(t));
      result.tables.push_back(std::move(tr.summary));
    }
    if (cfg.experiment_data) {
      auto ov = overlay_experiment(cfg, load_dataset(*cfg.experiment_data));
      result.tables.push_back(std::move(ov.table));
      for (auto& w : ov.warnings) result.warnings.push_back(std::move(w));
    }
    break;
  }
  case Mode::rect:
    result.tables.push_back(run_rect(cfg));
    break;
  case Mode::validate: {
    auto t = validation_table(run_validation(cfg));
    t.set_config_hash(config_hash(cfg));
    result.tables.push_back(std::move(t));
    break;
  }
  }
  return result;
}

std::vector<std::filesystem::path> write_tables(const std::vector<FigureTable>& tables,
                                                const std::filesystem::path& output_dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& t : tables) {
    paths.push_back(output_dir / (t.name() + ".csv"));
    write_csv_file(t, paths.back());
  }
  return paths;
}

} // namespace qtt::report
