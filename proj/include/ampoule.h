/* ampoule — two-domain phase-field freezing solver, C API.
 *
 * The solver core is C++; this header is the stable surface exposed by
 * the shared library.  Objects are opaque handles created and destroyed
 * here; every call returns an amp_status, and a thread-local message for
 * the most recent failure is available through amp_last_error().
 */
#ifndef AMPOULE_H
#define AMPOULE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amp_status {
  AMP_OK = 0,
  AMP_ERR_CONFIG = 1,  /* bad configuration or invalid geometry/parameters */
  AMP_ERR_SOLVER = 2,  /* a run failed mid-flight; partial outputs remain */
  AMP_ERR_IO = 3,      /* file or directory could not be written */
  AMP_ERR_INVALID = 4  /* null handle or argument misuse */
} amp_status;

typedef struct amp_config amp_config;
typedef struct amp_mesh amp_mesh;

const char* amp_version(void);

/* Message for the most recent failure on the calling thread; never NULL.
 * Valid until the next failing call on the same thread. */
const char* amp_last_error(void);

/* ---- configuration -------------------------------------------------- */

/* Parses the flat `key = value` scenario format.  On AMP_ERR_CONFIG the
 * message contains every problem found, one per line. */
amp_status amp_config_parse_text(const char* text, amp_config** out);
amp_status amp_config_parse_file(const char* path, amp_config** out);
void amp_config_free(amp_config* cfg);

/* Overrides a single key, re-validating the whole configuration. */
amp_status amp_config_set(amp_config* cfg, const char* key, const char* value);

/* Canonical serialization.  Writes up to cap bytes (NUL-terminated) and
 * stores the full length in *needed; call with buf == NULL to size. */
amp_status amp_config_to_text(const amp_config* cfg, char* buf, size_t cap,
                              size_t* needed);

/* ---- mesh ------------------------------------------------------------ */

amp_status amp_mesh_build(const amp_config* cfg, amp_mesh** out);
void amp_mesh_free(amp_mesh* mesh);

amp_status amp_mesh_counts(const amp_mesh* mesh, int64_t* nodes_u,
                           int64_t* nodes_omega, int64_t* triangles);

/* Structural validation.  *violations receives the violation count; the
 * messages (one per line) are written into buf as for amp_config_to_text.
 * Returns AMP_OK even when violations exist. */
amp_status amp_mesh_validate(const amp_mesh* mesh, int64_t* violations,
                             char* buf, size_t cap, size_t* needed);

amp_status amp_mesh_write_vtk(const amp_mesh* mesh, const char* path);

/* ---- drivers ---------------------------------------------------------- */

/* Runs the configured scenario, writing diagnostics.csv, snap_<k>.vtk,
 * and summary.txt into the configured output directory. */
amp_status amp_run_scenario(const amp_config* cfg);

/* Builds the mesh and writes mesh.vtk / mesh_check.txt; AMP_ERR_CONFIG
 * when the mesh has violations. */
amp_status amp_mesh_check(const amp_config* cfg);

/* Continuous-dependence ladder study; writes scaling_report.{csv,txt}. */
amp_status amp_perturbation_study(const amp_config* cfg);

/* Temporal-order study against the reference integrator; writes
 * convergence.{csv,txt}. */
amp_status amp_convergence_study(const amp_config* cfg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AMPOULE_H */
