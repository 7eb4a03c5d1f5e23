#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace amp {

/// Nested-rectangle container geometry: an outer rectangle U holds an
/// inner rectangle Omega (the medium); the frame between them is the
/// wall region D.  All lengths in cm.
struct MeshSpec {
  double outer_width = 0.0;
  double outer_height = 0.0;
  double wall_thickness = 0.0;   // may be zero: U and Omega coincide
  double target_h = 0.0;         // requested max element edge

  // Returns human-readable violations; empty when the dimensions are usable.
  std::vector<std::string> validate() const;
};

enum class Region : std::uint8_t { kMedium = 0, kWall = 1 };
enum class EdgeTag : std::uint8_t { kOuter = 0, kInterface = 1 };

struct BoundaryEdge {
  int a = -1;
  int b = -1;
  EdgeTag tag = EdgeTag::kOuter;
};

/// Conforming triangulation of the nested rectangles.  The interface
/// between medium and wall is resolved exactly by mesh edges, and
/// interface nodes are shared: a single node carries the temperature
/// for both regions, so continuity across the interface holds by
/// construction.
struct Mesh {
  std::vector<std::array<double, 2>> nodes;       // U-node coordinates
  std::vector<std::array<int, 3>> triangles;      // CCW node triples
  std::vector<Region> tri_region;
  std::vector<BoundaryEdge> boundary_edges;       // outer + interface
  std::vector<int> omega_of_u;                    // -1 if not an Omega node
  std::vector<int> u_of_omega;                    // inverse map

  int n_nodes_u() const { return static_cast<int>(nodes.size()); }
  int n_nodes_omega() const { return static_cast<int>(u_of_omega.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }

  double tri_area(int t) const;           // signed area of triangle t
  double max_edge_length() const;
  double region_area(Region r) const;     // summed element areas
};

/// Builds the structured triangulation.  Grid lines are chosen so the
/// interface rectangle lies exactly on mesh lines; each grid cell is
/// split into two triangles.  Throws std::invalid_argument on a
/// degenerate spec.
Mesh build_nested_rect_mesh(const MeshSpec& spec);

/// Checks every structural invariant of Mesh and reports violations,
/// one message per offending entity.  Empty result means well-formed.
std::vector<std::string> validate_mesh(const Mesh& mesh);

}  // namespace amp
