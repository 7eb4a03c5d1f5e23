#include "scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "diagnostics.hpp"
#include "vtk.hpp"

namespace amp {

namespace {

namespace fs = std::filesystem;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path.string());
  return out;
}

fs::path prepare_output_dir(const ScenarioConfig& cfg) {
  const fs::path dir(cfg.output.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw std::ios_base::failure("cannot create output directory '" +
                                 dir.string() + "'");
  return dir;
}

void log_line(std::ostream* log, const std::string& msg) {
  if (log) *log << msg << "\n";
}

struct Problem {
  Mesh mesh;
  AssembledOperators ops;
  BoundaryData g;
  FieldState initial;
};

Problem build_problem(const ScenarioConfig& cfg) {
  Problem p;
  p.mesh = build_nested_rect_mesh(cfg.mesh);
  p.ops = assemble_operators(p.mesh, cfg.params);
  p.g = make_boundary(cfg.boundary);
  p.initial = project_initial_data(p.mesh, p.ops, make_initial_u(cfg.initial),
                                   make_initial_phi(cfg.initial));
  return p;
}

}  // namespace

RunSummary run_scenario(const ScenarioConfig& cfg, std::ostream* log) {
  RunSummary summary;
  Stopwatch watch;
  fs::path dir;
  try {
    dir = prepare_output_dir(cfg);
  } catch (const std::exception& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
    return summary;
  }

  Problem problem;
  try {
    problem = build_problem(cfg);
  } catch (const std::exception& e) {
    summary.status = RunStatus::kConfigError;
    summary.error = e.what();
    return summary;
  }

  try {
    auto csv = open_output(dir / "diagnostics.csv");
    write_csv_header(csv);
    DiagnosticsMonitor monitor(cfg.params, problem.ops, problem.initial);
    write_csv_row(csv, monitor.record(), 0.0, 0.0);

    const auto snapshot = [&](long step, const FieldState& state) {
      auto out = open_output(dir / ("snap_" + std::to_string(step) + ".vtk"));
      write_snapshot_vtk(out, problem.mesh, state);
    };
    snapshot(0, problem.initial);

    long step_count = 0;
    FieldState final_state;
    std::string failure;
    try {
      final_state = run(problem.initial, cfg.stepper, cfg.params, problem.ops,
                        problem.mesh, problem.g, [&](const FieldState& s) {
                          ++step_count;
                          monitor.on_step(s);
                          write_csv_row(csv, monitor.record(),
                                        monitor.energy_residual(),
                                        monitor.chain_residual());
                          if (step_count % cfg.output.snapshot_stride == 0)
                            snapshot(step_count, s);
                        });
    } catch (const std::exception& e) {
      failure = e.what();
    }

    summary.steps = step_count;
    summary.final_t = monitor.record().t;
    summary.final_frozen_fraction = monitor.record().frozen_fraction;
    summary.wall_seconds = watch.seconds();
    if (!failure.empty()) {
      summary.status = RunStatus::kSolverFailure;
      summary.error = failure;
    }

    auto sum = open_output(dir / "summary.txt");
    sum << "status: "
        << (summary.status == RunStatus::kOk ? "ok" : "solver_failure") << "\n";
    sum << "steps: " << summary.steps << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", summary.final_t);
    sum << "final_t: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", summary.final_frozen_fraction);
    sum << "final_frozen_fraction: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.3f", summary.wall_seconds);
    sum << "wall_clock_seconds: " << buf << "\n";
    if (!failure.empty()) sum << "error: " << failure << "\n";

    log_line(log, "run finished: " + std::to_string(summary.steps) +
                      " steps, frozen fraction " +
                      std::to_string(summary.final_frozen_fraction));
  } catch (const std::ios_base::failure& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
  } catch (const std::exception& e) {
    summary.status = RunStatus::kSolverFailure;
    summary.error = e.what();
  }
  return summary;
}

RunSummary mesh_check(const ScenarioConfig& cfg, std::ostream* log) {
  RunSummary summary;
  fs::path dir;
  try {
    dir = prepare_output_dir(cfg);
  } catch (const std::exception& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
    return summary;
  }

  Mesh mesh;
  try {
    mesh = build_nested_rect_mesh(cfg.mesh);
  } catch (const std::exception& e) {
    summary.status = RunStatus::kConfigError;
    summary.error = e.what();
    return summary;
  }
  const auto violations = validate_mesh(mesh);

  try {
    auto vtk = open_output(dir / "mesh.vtk");
    write_mesh_vtk(vtk, mesh);
    auto report = open_output(dir / "mesh_check.txt");
    report << "nodes: " << mesh.n_nodes_u() << "\n";
    report << "omega_nodes: " << mesh.n_nodes_omega() << "\n";
    report << "triangles: " << mesh.n_triangles() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", mesh.region_area(Region::kMedium));
    report << "medium_area: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", mesh.region_area(Region::kWall));
    report << "wall_area: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", mesh.max_edge_length());
    report << "max_edge_length: " << buf << "\n";
    report << "violations: " << violations.size() << "\n";
    for (const auto& v : violations) report << "  " << v << "\n";
  } catch (const std::exception& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
    return summary;
  }

  if (!violations.empty()) {
    summary.status = RunStatus::kConfigError;
    summary.error = std::to_string(violations.size()) + " mesh violations";
  }
  log_line(log, "mesh check: " + std::to_string(violations.size()) +
                    " violations");
  return summary;
}

RunSummary perturbation_study_cmd(const ScenarioConfig& cfg,
                                  std::ostream* log) {
  RunSummary summary;
  Stopwatch watch;
  fs::path dir;
  try {
    dir = prepare_output_dir(cfg);
  } catch (const std::exception& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
    return summary;
  }

  try {
    const Problem problem = build_problem(cfg);
    const StudyProblem study{problem.mesh, problem.ops,    cfg.params,
                             cfg.stepper,  problem.g,      problem.initial};
    PerturbationSpec spec;
    spec.eps_u0 = cfg.study.eps_u0;
    spec.eps_phi0 = cfg.study.eps_phi0;
    spec.eps_g = cfg.study.eps_g;
    spec.ladder = cfg.study.ladder;
    const ScalingReport report = perturbation_study(study, spec, cfg.threads);

    auto csv = open_output(dir / "scaling_report.csv");
    write_scaling_csv(csv, report);
    auto txt = open_output(dir / "scaling_report.txt");
    write_scaling_text(txt, report);
    if (log) write_scaling_text(*log, report);
  } catch (const std::ios_base::failure& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
  } catch (const std::exception& e) {
    summary.status = RunStatus::kSolverFailure;
    summary.error = e.what();
  }
  summary.wall_seconds = watch.seconds();
  return summary;
}

RunSummary convergence_study_cmd(const ScenarioConfig& cfg,
                                 std::ostream* log) {
  RunSummary summary;
  Stopwatch watch;
  fs::path dir;
  try {
    dir = prepare_output_dir(cfg);
  } catch (const std::exception& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
    return summary;
  }

  try {
    const Problem problem = build_problem(cfg);
    const int levels = cfg.study.convergence_levels;
    const double dt0 = cfg.stepper.dt;
    const double dt_min = dt0 / std::ldexp(1.0, levels - 1);
    const double substeps_per_unit = cfg.study.oracle_factor / dt_min;

    const Trajectory reference =
        reference_integrate(problem.initial, substeps_per_unit, cfg.params,
                            problem.ops, problem.mesh, problem.g, dt0);

    const auto run_level = [&](int level) {
      StepperConfig sc = cfg.stepper;
      sc.dt = dt0 / std::ldexp(1.0, level);
      Trajectory traj;
      traj.push_back(problem.initial);
      run(problem.initial, sc, cfg.params, problem.ops, problem.mesh,
          problem.g, [&](const FieldState& s) { traj.push_back(s); });
      return compare_trajectories(traj, reference, problem.ops).total();
    };

    std::vector<double> errors(levels);
    if (cfg.threads > 1) {
      std::vector<std::future<double>> futures(levels);
      for (int start = 0; start < levels; start += cfg.threads) {
        const int stop = std::min(levels, start + cfg.threads);
        for (int l = start; l < stop; ++l)
          futures[l] = std::async(std::launch::async, run_level, l);
        for (int l = start; l < stop; ++l) errors[l] = futures[l].get();
      }
    } else {
      for (int l = 0; l < levels; ++l) errors[l] = run_level(l);
    }

    auto csv = open_output(dir / "convergence.csv");
    csv << "dt,error,ratio,observed_order\n";
    auto txt = open_output(dir / "convergence.txt");
    char buf[256];
    for (int l = 0; l < levels; ++l) {
      const double dt = dt0 / std::ldexp(1.0, l);
      const double ratio = l > 0 ? errors[l - 1] / errors[l] : 0.0;
      const double order = l > 0 ? std::log2(ratio) : 0.0;
      if (l > 0)
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", dt,
                      errors[l], ratio, order);
      else
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,,\n", dt, errors[l]);
      csv << buf;
      std::snprintf(buf, sizeof(buf),
                    "dt %-12.5g error %-12.5g ratio %-8.3f order %-8.3f\n", dt,
                    errors[l], l > 0 ? errors[l - 1] / errors[l] : 0.0,
                    l > 0 ? std::log2(errors[l - 1] / errors[l]) : 0.0);
      txt << buf;
      if (log) *log << buf;
    }
  } catch (const std::ios_base::failure& e) {
    summary.status = RunStatus::kIoError;
    summary.error = e.what();
  } catch (const std::exception& e) {
    summary.status = RunStatus::kSolverFailure;
    summary.error = e.what();
  }
  summary.wall_seconds = watch.seconds();
  return summary;
}

}  // namespace amp
