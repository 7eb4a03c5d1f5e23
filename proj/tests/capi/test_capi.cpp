// Exercises the shared-library surface only: no internal headers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ampoule.h"

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"(
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
params.t_end = 0.004
stepper.dt = 0.002
initial.preset = equilibrium
boundary.preset = constant
boundary.g0 = -1.5
)";

std::string config_with_dir(const fs::path& dir) {
  return std::string(kConfig) + "output.dir = " + dir.string() + "\n";
}

}  // namespace

TEST_CASE("version and error strings are always present") {
  CHECK(amp_version() != nullptr);
  CHECK(amp_last_error() != nullptr);
}

TEST_CASE("config parse, override, serialize") {
  amp_config* cfg = nullptr;
  REQUIRE(amp_config_parse_text(kConfig, &cfg) == AMP_OK);
  REQUIRE(cfg != nullptr);

  CHECK(amp_config_set(cfg, "threads", "2") == AMP_OK);
  CHECK(amp_config_set(cfg, "params.tau", "banana") == AMP_ERR_CONFIG);
  CHECK(std::strlen(amp_last_error()) > 0);

  size_t needed = 0;
  REQUIRE(amp_config_to_text(cfg, nullptr, 0, &needed) == AMP_OK);
  REQUIRE(needed > 1);
  std::vector<char> buf(needed);
  REQUIRE(amp_config_to_text(cfg, buf.data(), buf.size(), &needed) == AMP_OK);
  const std::string text(buf.data());
  CHECK(text.find("threads = 2") != std::string::npos);
  CHECK(text.find("params.tau = 0.02") != std::string::npos);

  // The failed override must not have been applied.
  amp_config* again = nullptr;
  REQUIRE(amp_config_parse_text(text.c_str(), &again) == AMP_OK);
  amp_config_free(again);
  amp_config_free(cfg);
}

TEST_CASE("bad config text reports every problem") {
  amp_config* cfg = nullptr;
  const amp_status st = amp_config_parse_text(
      "mesh.outer_width = -1\nnonsense.key = 2\n", &cfg);
  CHECK(st == AMP_ERR_CONFIG);
  CHECK(cfg == nullptr);
  const std::string msg = amp_last_error();
  CHECK(msg.find("nonsense.key") != std::string::npos);
  CHECK(msg.find("missing required key") != std::string::npos);
}

TEST_CASE("null arguments are rejected, not crashed on") {
  CHECK(amp_config_parse_text(nullptr, nullptr) == AMP_ERR_INVALID);
  CHECK(amp_mesh_build(nullptr, nullptr) == AMP_ERR_INVALID);
  CHECK(amp_run_scenario(nullptr) == AMP_ERR_INVALID);
  amp_config_free(nullptr);
  amp_mesh_free(nullptr);
}

TEST_CASE("mesh build, counts, validation, vtk dump") {
  amp_config* cfg = nullptr;
  REQUIRE(amp_config_parse_text(kConfig, &cfg) == AMP_OK);
  amp_mesh* mesh = nullptr;
  REQUIRE(amp_mesh_build(cfg, &mesh) == AMP_OK);

  int64_t nu = 0, no = 0, nt = 0;
  REQUIRE(amp_mesh_counts(mesh, &nu, &no, &nt) == AMP_OK);
  CHECK(nu > no);
  CHECK(no > 0);
  CHECK(nt > 0);

  int64_t violations = -1;
  size_t needed = 0;
  REQUIRE(amp_mesh_validate(mesh, &violations, nullptr, 0, &needed) == AMP_OK);
  CHECK(violations == 0);

  const fs::path vtk = fs::temp_directory_path() / "amp_capi_mesh.vtk";
  fs::remove(vtk);
  REQUIRE(amp_mesh_write_vtk(mesh, vtk.string().c_str()) == AMP_OK);
  CHECK(fs::exists(vtk));

  amp_mesh_free(mesh);
  amp_config_free(cfg);
}

TEST_CASE("scenario and mesh-check drivers run through the C surface") {
  const fs::path dir = fs::temp_directory_path() / "amp_capi_run";
  fs::remove_all(dir);
  amp_config* cfg = nullptr;
  REQUIRE(amp_config_parse_text(config_with_dir(dir).c_str(), &cfg) == AMP_OK);

  CHECK(amp_run_scenario(cfg) == AMP_OK);
  CHECK(fs::exists(dir / "diagnostics.csv"));
  CHECK(fs::exists(dir / "summary.txt"));
  CHECK(amp_mesh_check(cfg) == AMP_OK);
  CHECK(fs::exists(dir / "mesh_check.txt"));

  // Unwritable output directory surfaces as an I/O failure.
  const fs::path blocker = fs::temp_directory_path() / "amp_capi_blocker";
  std::ofstream(blocker) << "x";
  REQUIRE(amp_config_set(cfg, "output.dir",
                         (blocker / "sub").string().c_str()) == AMP_OK);
  CHECK(amp_run_scenario(cfg) == AMP_ERR_IO);
  amp_config_free(cfg);
}
