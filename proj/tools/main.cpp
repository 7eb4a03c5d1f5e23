// Command-line front end for the ampoule solver library.  Talks to the
// shared library exclusively through the public C API.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "ampoule.h"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string output_dir;
  int threads = 0;  // 0: leave the config value alone
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("config", opts.config_path, "scenario configuration file")
      ->required();
  cmd->add_option("--output-dir", opts.output_dir,
                  "override the configured output directory");
  cmd->add_option("--threads", opts.threads,
                  "override the configured thread count");
  cmd->add_flag("--quiet", opts.quiet, "suppress progress output");
}

int exit_code(amp_status status) {
  switch (status) {
    case AMP_OK:
      return 0;
    case AMP_ERR_CONFIG:
      return 1;
    case AMP_ERR_SOLVER:
      return 2;
    case AMP_ERR_IO:
      return 3;
    default:
      return 1;
  }
}

int fail(amp_status status) {
  std::fprintf(stderr, "error: %s\n", amp_last_error());
  return exit_code(status);
}

int run_command(const CommonOpts& opts,
                amp_status (*driver)(const amp_config*), const char* name) {
  amp_config* cfg = nullptr;
  amp_status st = amp_config_parse_file(opts.config_path.c_str(), &cfg);
  if (st != AMP_OK) return fail(st);

  if (!opts.output_dir.empty()) {
    st = amp_config_set(cfg, "output.dir", opts.output_dir.c_str());
    if (st != AMP_OK) {
      amp_config_free(cfg);
      return fail(st);
    }
  }
  if (opts.threads > 0) {
    st = amp_config_set(cfg, "threads", std::to_string(opts.threads).c_str());
    if (st != AMP_OK) {
      amp_config_free(cfg);
      return fail(st);
    }
  }

  if (!opts.quiet) std::printf("%s: %s\n", name, opts.config_path.c_str());
  st = driver(cfg);
  amp_config_free(cfg);
  if (st != AMP_OK) return fail(st);
  if (!opts.quiet) std::printf("%s: done\n", name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ampoule — two-domain phase-field freezing solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(amp_version()));

  CommonOpts run_opts, mesh_opts, perturb_opts, conv_opts;
  CLI::App* cmd_run =
      app.add_subcommand("run", "run a scenario and write diagnostics");
  add_common(cmd_run, run_opts);
  CLI::App* cmd_mesh =
      app.add_subcommand("mesh-check", "build and validate the mesh");
  add_common(cmd_mesh, mesh_opts);
  CLI::App* cmd_perturb = app.add_subcommand(
      "perturbation-study", "continuous-dependence scaling ladder");
  add_common(cmd_perturb, perturb_opts);
  CLI::App* cmd_conv = app.add_subcommand(
      "convergence-study", "temporal order against the reference integrator");
  add_common(cmd_conv, conv_opts);

  CLI11_PARSE(app, argc, argv);

  if (cmd_run->parsed())
    return run_command(run_opts, &amp_run_scenario, "run");
  if (cmd_mesh->parsed())
    return run_command(mesh_opts, &amp_mesh_check, "mesh-check");
  if (cmd_perturb->parsed())
    return run_command(perturb_opts, &amp_perturbation_study,
                       "perturbation-study");
  if (cmd_conv->parsed())
    return run_command(conv_opts, &amp_convergence_study, "convergence-study");
  return 1;
}
