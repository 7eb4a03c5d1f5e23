#include "vtk.hpp"

#include <cstdio>
#include <ostream>

namespace amp {

namespace {

void write_grid(std::ostream& os, const Mesh& mesh, const char* title) {
  char buf[128];
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.n_nodes_u() << " double\n";
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g 0\n", p[0], p[1]);
    os << buf;
  }
  const int nt = mesh.n_triangles();
  os << "CELLS " << nt << " " << 4 * nt << "\n";
  for (const auto& tr : mesh.triangles)
    os << "3 " << tr[0] << " " << tr[1] << " " << tr[2] << "\n";
  os << "CELL_TYPES " << nt << "\n";
  for (int t = 0; t < nt; ++t) os << "5\n";  // VTK_TRIANGLE
}

void write_region_cell_data(std::ostream& os, const Mesh& mesh) {
  os << "CELL_DATA " << mesh.n_triangles() << "\n";
  os << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (const auto r : mesh.tri_region)
    os << (r == Region::kMedium ? 0 : 1) << "\n";
}

}  // namespace

void write_mesh_vtk(std::ostream& os, const Mesh& mesh) {
  write_grid(os, mesh, "nested rectangle mesh");
  write_region_cell_data(os, mesh);
}

void write_snapshot_vtk(std::ostream& os, const Mesh& mesh,
                        const FieldState& state) {
  char buf[64];
  write_grid(os, mesh, "temperature and phase snapshot");
  os << "POINT_DATA " << mesh.n_nodes_u() << "\n";
  os << "SCALARS u double 1\nLOOKUP_TABLE default\n";
  for (int n = 0; n < mesh.n_nodes_u(); ++n) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", state.u[n]);
    os << buf;
  }
  os << "SCALARS phi double 1\nLOOKUP_TABLE default\n";
  for (int n = 0; n < mesh.n_nodes_u(); ++n) {
    const int o = mesh.omega_of_u[n];
    const double v = o < 0 ? kPhiWallSentinel : state.phi[o];
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    os << buf;
  }
  write_region_cell_data(os, mesh);
}

}  // namespace amp
