#pragma once

#include <iosfwd>

#include "assembly.hpp"

namespace amp {

/// Value written for phi on pure-wall nodes, where the phase field is not
/// defined.
inline constexpr double kPhiWallSentinel = -999.0;

/// Legacy-VTK ASCII (version 3.0) unstructured grid: mesh connectivity
/// plus region tags as cell data.
void write_mesh_vtk(std::ostream& os, const Mesh& mesh);

/// Same grid with point data: u on all nodes, phi on Omega nodes (wall
/// nodes carry the sentinel), and the region tag as cell data.
void write_snapshot_vtk(std::ostream& os, const Mesh& mesh,
                        const FieldState& state);

}  // namespace amp
