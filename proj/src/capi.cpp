#include "ampoule.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "scenario.hpp"
#include "vtk.hpp"

struct amp_config {
  amp::ScenarioConfig cfg;
};

struct amp_mesh {
  amp::Mesh mesh;
};

namespace {

thread_local std::string g_last_error = "";

amp_status set_error(amp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

std::string join_errors(const std::vector<amp::ConfigError>& errors) {
  std::ostringstream os;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) os << "\n";
    if (errors[i].line > 0) os << "line " << errors[i].line << ": ";
    os << errors[i].message;
  }
  return os.str();
}

amp_status copy_out(const std::string& text, char* buf, size_t cap,
                    size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return AMP_OK;
}

amp_status from_summary(const amp::RunSummary& summary) {
  switch (summary.status) {
    case amp::RunStatus::kOk:
      return AMP_OK;
    case amp::RunStatus::kConfigError:
      return set_error(AMP_ERR_CONFIG, summary.error);
    case amp::RunStatus::kSolverFailure:
      return set_error(AMP_ERR_SOLVER, summary.error);
    case amp::RunStatus::kIoError:
      return set_error(AMP_ERR_IO, summary.error);
  }
  return set_error(AMP_ERR_INVALID, "unknown run status");
}

template <typename Fn>
amp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::ios_base::failure& e) {
    return set_error(AMP_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(AMP_ERR_SOLVER, e.what());
  }
}

}  // namespace

extern "C" {

const char* amp_version(void) { return "1.0.0"; }

const char* amp_last_error(void) { return g_last_error.c_str(); }

amp_status amp_config_parse_text(const char* text, amp_config** out) {
  if (!text || !out)
    return set_error(AMP_ERR_INVALID, "null argument to amp_config_parse_text");
  *out = nullptr;
  return guarded([&] {
    amp::ParseResult result = amp::parse_config(text);
    if (!result.ok())
      return set_error(AMP_ERR_CONFIG, join_errors(result.errors));
    *out = new amp_config{std::move(*result.config)};
    return AMP_OK;
  });
}

amp_status amp_config_parse_file(const char* path, amp_config** out) {
  if (!path || !out)
    return set_error(AMP_ERR_INVALID, "null argument to amp_config_parse_file");
  *out = nullptr;
  std::ifstream in(path);
  if (!in)
    return set_error(AMP_ERR_IO, std::string("cannot read '") + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return amp_config_parse_text(text.str().c_str(), out);
}

void amp_config_free(amp_config* cfg) { delete cfg; }

amp_status amp_config_set(amp_config* cfg, const char* key,
                          const char* value) {
  if (!cfg || !key || !value)
    return set_error(AMP_ERR_INVALID, "null argument to amp_config_set");
  return guarded([&] {
    // Serialize, patch the one key, reparse: edits go through the same
    // validation as a fresh file.
    std::string text = amp::serialize_config(cfg->cfg);
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    const std::string prefix = std::string(key) + " = ";
    bool replaced = false;
    while (std::getline(in, line)) {
      if (line.rfind(prefix, 0) == 0) {
        out << prefix << value << "\n";
        replaced = true;
      } else {
        out << line << "\n";
      }
    }
    if (!replaced) out << prefix << value << "\n";
    amp::ParseResult result = amp::parse_config(out.str());
    if (!result.ok())
      return set_error(AMP_ERR_CONFIG, join_errors(result.errors));
    cfg->cfg = std::move(*result.config);
    return AMP_OK;
  });
}

amp_status amp_config_to_text(const amp_config* cfg, char* buf, size_t cap,
                              size_t* needed) {
  if (!cfg)
    return set_error(AMP_ERR_INVALID, "null config in amp_config_to_text");
  return copy_out(amp::serialize_config(cfg->cfg), buf, cap, needed);
}

amp_status amp_mesh_build(const amp_config* cfg, amp_mesh** out) {
  if (!cfg || !out)
    return set_error(AMP_ERR_INVALID, "null argument to amp_mesh_build");
  *out = nullptr;
  return guarded([&] {
    try {
      *out = new amp_mesh{amp::build_nested_rect_mesh(cfg->cfg.mesh)};
    } catch (const std::invalid_argument& e) {
      return set_error(AMP_ERR_CONFIG, e.what());
    }
    return AMP_OK;
  });
}

void amp_mesh_free(amp_mesh* mesh) { delete mesh; }

amp_status amp_mesh_counts(const amp_mesh* mesh, int64_t* nodes_u,
                           int64_t* nodes_omega, int64_t* triangles) {
  if (!mesh)
    return set_error(AMP_ERR_INVALID, "null mesh in amp_mesh_counts");
  if (nodes_u) *nodes_u = mesh->mesh.n_nodes_u();
  if (nodes_omega) *nodes_omega = mesh->mesh.n_nodes_omega();
  if (triangles) *triangles = mesh->mesh.n_triangles();
  return AMP_OK;
}

amp_status amp_mesh_validate(const amp_mesh* mesh, int64_t* violations,
                             char* buf, size_t cap, size_t* needed) {
  if (!mesh)
    return set_error(AMP_ERR_INVALID, "null mesh in amp_mesh_validate");
  return guarded([&] {
    const auto found = amp::validate_mesh(mesh->mesh);
    if (violations) *violations = static_cast<int64_t>(found.size());
    std::ostringstream os;
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (i) os << "\n";
      os << found[i];
    }
    return copy_out(os.str(), buf, cap, needed);
  });
}

amp_status amp_mesh_write_vtk(const amp_mesh* mesh, const char* path) {
  if (!mesh || !path)
    return set_error(AMP_ERR_INVALID, "null argument to amp_mesh_write_vtk");
  std::ofstream out(path);
  if (!out)
    return set_error(AMP_ERR_IO, std::string("cannot open '") + path + "'");
  amp::write_mesh_vtk(out, mesh->mesh);
  return out ? AMP_OK
             : set_error(AMP_ERR_IO, std::string("write failed for '") + path + "'");
}

amp_status amp_run_scenario(const amp_config* cfg) {
  if (!cfg) return set_error(AMP_ERR_INVALID, "null config in amp_run_scenario");
  return guarded([&] { return from_summary(amp::run_scenario(cfg->cfg)); });
}

amp_status amp_mesh_check(const amp_config* cfg) {
  if (!cfg) return set_error(AMP_ERR_INVALID, "null config in amp_mesh_check");
  return guarded([&] { return from_summary(amp::mesh_check(cfg->cfg)); });
}

amp_status amp_perturbation_study(const amp_config* cfg) {
  if (!cfg)
    return set_error(AMP_ERR_INVALID, "null config in amp_perturbation_study");
  return guarded(
      [&] { return from_summary(amp::perturbation_study_cmd(cfg->cfg)); });
}

amp_status amp_convergence_study(const amp_config* cfg) {
  if (!cfg)
    return set_error(AMP_ERR_INVALID, "null config in amp_convergence_study");
  return guarded(
      [&] { return from_summary(amp::convergence_study_cmd(cfg->cfg)); });
}

}  // extern "C"
