#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "scenario.hpp"
#include "vtk.hpp"

using namespace amp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ScenarioConfig small_config(const std::string& outdir) {
  const std::string text = R"(
mesh.outer_width = 0.7
mesh.outer_height = 0.7
mesh.wall_thickness = 0.1
mesh.target_h = 0.1
params.k_omega = 1
params.k_wall = 1
params.latent_l = 0.5
params.tau = 0.02
params.xi = 0.08
params.lambda_bc = 4
params.t_end = 0.02
stepper.dt = 0.002
initial.preset = equilibrium
boundary.preset = constant
boundary.g0 = -1.5
)";
  ParseResult r = parse_config(text + "output.dir = " + outdir + "\n");
  REQUIRE(r.ok());
  return *r.config;
}

int count_snapshots(const fs::path& dir) {
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("snap_", 0) == 0 && e.path().extension() == ".vtk") ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("run_scenario writes the documented outputs") {
  const fs::path dir = fs::temp_directory_path() / "amp_run_outputs";
  fs::remove_all(dir);
  ScenarioConfig cfg = small_config(dir.string());
  cfg.output.snapshot_stride = 3;

  const RunSummary summary = run_scenario(cfg);
  REQUIRE(summary.status == RunStatus::kOk);
  CHECK(summary.steps == 10);
  CHECK(summary.final_t == cfg.params.t_end);

  CHECK(fs::exists(dir / "diagnostics.csv"));
  CHECK(fs::exists(dir / "summary.txt"));
  // floor(steps / stride) + 1 snapshots, initial always written.
  CHECK(count_snapshots(dir) == 10 / 3 + 1);
  CHECK(fs::exists(dir / "snap_0.vtk"));
  CHECK(fs::exists(dir / "snap_9.vtk"));

  const std::string csv = slurp(dir / "diagnostics.csv");
  CHECK(csv.rfind("t,free_energy,l2_u,h1_phi,", 0) == 0);
  // Header plus one row per step plus the initial row.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);

  const std::string sum = slurp(dir / "summary.txt");
  CHECK(sum.find("status: ok") != std::string::npos);
  CHECK(sum.find("steps: 10") != std::string::npos);
}

TEST_CASE("reruns are byte-identical and equilibrium snapshots repeat") {
  const fs::path dir_a = fs::temp_directory_path() / "amp_rerun_a";
  const fs::path dir_b = fs::temp_directory_path() / "amp_rerun_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  ScenarioConfig cfg = small_config(dir_a.string());
  cfg.boundary.g0 = 0.0;  // equilibrium: liquid at rest, no cooling
  REQUIRE(run_scenario(cfg).status == RunStatus::kOk);
  cfg.output.dir = dir_b.string();
  REQUIRE(run_scenario(cfg).status == RunStatus::kOk);

  CHECK(slurp(dir_a / "diagnostics.csv") == slurp(dir_b / "diagnostics.csv"));
  // Fixed-point run: every snapshot equals the initial one.
  const std::string first = slurp(dir_a / "snap_0.vtk");
  for (int k = 1; k <= 10; ++k)
    CHECK(slurp(dir_a / ("snap_" + std::to_string(k) + ".vtk")) == first);
}

TEST_CASE("phi sentinel appears exactly on pure wall nodes") {
  const fs::path dir = fs::temp_directory_path() / "amp_sentinel";
  fs::remove_all(dir);
  ScenarioConfig cfg = small_config(dir.string());
  cfg.params.t_end = cfg.stepper.dt;  // single step is enough
  REQUIRE(run_scenario(cfg).status == RunStatus::kOk);

  const Mesh mesh = build_nested_rect_mesh(cfg.mesh);
  std::istringstream in(slurp(dir / "snap_0.vtk"));
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("SCALARS phi", 0) == 0) break;
  std::getline(in, line);  // LOOKUP_TABLE
  for (int n = 0; n < mesh.n_nodes_u(); ++n) {
    REQUIRE(std::getline(in, line));
    const double v = std::stod(line);
    if (mesh.omega_of_u[n] < 0)
      CHECK(v == kPhiWallSentinel);
    else
      CHECK(v != kPhiWallSentinel);
  }
}

TEST_CASE("unwritable output directory reports an io error") {
  const fs::path file = fs::temp_directory_path() / "amp_blocker";
  std::ofstream(file) << "x";
  ScenarioConfig cfg = small_config((file / "sub").string());
  const RunSummary summary = run_scenario(cfg);
  CHECK(summary.status == RunStatus::kIoError);
  CHECK(!summary.error.empty());
}

TEST_CASE("mesh_check writes its report and the mesh dump") {
  const fs::path dir = fs::temp_directory_path() / "amp_meshcheck";
  fs::remove_all(dir);
  const ScenarioConfig cfg = small_config(dir.string());
  const RunSummary summary = mesh_check(cfg);
  CHECK(summary.status == RunStatus::kOk);
  CHECK(fs::exists(dir / "mesh.vtk"));
  const std::string report = slurp(dir / "mesh_check.txt");
  CHECK(report.find("violations: 0") != std::string::npos);
  const std::string vtk = slurp(dir / "mesh.vtk");
  CHECK(vtk.rfind("# vtk DataFile Version 3.0", 0) == 0);
  CHECK(vtk.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
  CHECK(vtk.find("SCALARS region int 1") != std::string::npos);
}

TEST_CASE("study drivers produce their reports") {
  const fs::path dir = fs::temp_directory_path() / "amp_studies";
  fs::remove_all(dir);
  ScenarioConfig cfg = small_config(dir.string());
  cfg.study.ladder = {1e-1, 1e-2};
  cfg.study.convergence_levels = 2;
  cfg.study.oracle_factor = 20.0;

  CHECK(perturbation_study_cmd(cfg).status == RunStatus::kOk);
  CHECK(fs::exists(dir / "scaling_report.csv"));
  CHECK(fs::exists(dir / "scaling_report.txt"));
  const std::string csv = slurp(dir / "scaling_report.csv");
  CHECK(csv.rfind("channel,scale,", 0) == 0);

  CHECK(convergence_study_cmd(cfg).status == RunStatus::kOk);
  CHECK(fs::exists(dir / "convergence.csv"));
  const std::string conv = slurp(dir / "convergence.txt");
  CHECK(conv.find("dt") != std::string::npos);
}

TEST_CASE("convergence study on the uniform-field reduction shows order one") {
  // Zero wall and lambda = 0 collapse the PDE to the two-variable ODE,
  // so the measured error against the reference integrator is purely
  // temporal and the observed order sits at one.
  const fs::path dir = fs::temp_directory_path() / "amp_uniform_conv";
  fs::remove_all(dir);
  const std::string text = R"(
mesh.outer_width = 0.5
mesh.outer_height = 0.5
mesh.wall_thickness = 0
mesh.target_h = 0.125
params.k_omega = 1
params.k_wall = 1
params.latent_l = 0.8
params.tau = 0.05
params.xi = 0.1
params.lambda_bc = 0
params.t_end = 0.1
stepper.dt = 0.004
stepper.linsolve_tol = 1e-12
initial.u0 = 0
initial.phi0 = 0.5
boundary.preset = constant
boundary.g0 = 0
study.convergence_levels = 3
study.oracle_factor = 50
)";
  ParseResult r = parse_config(text + "output.dir = " + dir.string() + "\n");
  REQUIRE(r.ok());
  REQUIRE(convergence_study_cmd(*r.config).status == RunStatus::kOk);

  std::ifstream csv(dir / "convergence.csv");
  REQUIRE(csv);
  std::string line;
  std::getline(csv, line);  // header
  std::vector<double> orders;
  while (std::getline(csv, line)) {
    const auto last_comma = line.rfind(',');
    const std::string order = line.substr(last_comma + 1);
    if (!order.empty()) orders.push_back(std::stod(order));
  }
  REQUIRE(orders.size() == 2);
  for (double order : orders) {
    CHECK(order >= 0.75);
    CHECK(order <= 1.25);
  }
}
