#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace amp {

namespace {

// Partition [0, | a | b | length] into grid coordinates: every breakpoint is
// hit exactly, and each gap is subdivided so no 1-D step exceeds h.
std::vector<double> build_axis(double length, double wall, double h) {
  std::vector<double> breaks = {0.0, wall, length - wall, length};
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> coords;
  coords.push_back(breaks.front());
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s];
    const double b = breaks[s + 1];
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-12)));
    for (int i = 1; i < n; ++i) coords.push_back(a + (b - a) * i / n);
    coords.push_back(b);
  }
  return coords;
}

std::string tri_name(int t) { return "triangle " + std::to_string(t); }

}  // namespace

std::vector<std::string> MeshSpec::validate() const {
  std::vector<std::string> v;
  if (!(outer_width > 0.0)) v.push_back("outer_width must be positive");
  if (!(outer_height > 0.0)) v.push_back("outer_height must be positive");
  if (wall_thickness < 0.0) v.push_back("wall_thickness must be nonnegative");
  if (!(target_h > 0.0)) v.push_back("target_h must be positive");
  if (!(outer_width > 2.0 * wall_thickness))
    v.push_back("outer_width must exceed twice the wall thickness");
  if (!(outer_height > 2.0 * wall_thickness))
    v.push_back("outer_height must exceed twice the wall thickness");
  return v;
}

double Mesh::tri_area(int t) const {
  const auto& tr = triangles[t];
  const auto& p0 = nodes[tr[0]];
  const auto& p1 = nodes[tr[1]];
  const auto& p2 = nodes[tr[2]];
  return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

double Mesh::max_edge_length() const {
  double m = 0.0;
  for (const auto& tr : triangles) {
    for (int e = 0; e < 3; ++e) {
      const auto& a = nodes[tr[e]];
      const auto& b = nodes[tr[(e + 1) % 3]];
      m = std::max(m, std::hypot(b[0] - a[0], b[1] - a[1]));
    }
  }
  return m;
}

double Mesh::region_area(Region r) const {
  double a = 0.0;
  for (int t = 0; t < n_triangles(); ++t)
    if (tri_region[t] == r) a += tri_area(t);
  return a;
}

Mesh build_nested_rect_mesh(const MeshSpec& spec) {
  const auto bad = spec.validate();
  if (!bad.empty()) {
    std::ostringstream os;
    os << "invalid mesh spec:";
    for (const auto& m : bad) os << " " << m << ";";
    throw std::invalid_argument(os.str());
  }

  const std::vector<double> xs =
      build_axis(spec.outer_width, spec.wall_thickness, spec.target_h);
  const std::vector<double> ys =
      build_axis(spec.outer_height, spec.wall_thickness, spec.target_h);
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());

  Mesh mesh;
  mesh.nodes.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) mesh.nodes.push_back({xs[i], ys[j]});

  const auto vid = [nx](int i, int j) { return j * nx + i; };

  const double x_lo = spec.wall_thickness;
  const double x_hi = spec.outer_width - spec.wall_thickness;
  const double y_lo = spec.wall_thickness;
  const double y_hi = spec.outer_height - spec.wall_thickness;
  const auto in_omega = [&](double cx, double cy) {
    return cx > x_lo && cx < x_hi && cy > y_lo && cy < y_hi;
  };

  mesh.triangles.reserve(2u * (nx - 1) * (ny - 1));
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
      const double cx = 0.5 * (xs[i] + xs[i + 1]);
      const double cy = 0.5 * (ys[j] + ys[j + 1]);
      const Region r = in_omega(cx, cy) ? Region::kMedium : Region::kWall;
      mesh.tri_region.push_back(r);
      mesh.tri_region.push_back(r);
    }
  }

  // Outer boundary edges along the four sides of U.
  for (int i = 0; i + 1 < nx; ++i) {
    mesh.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), EdgeTag::kOuter});
    mesh.boundary_edges.push_back(
        {vid(i, ny - 1), vid(i + 1, ny - 1), EdgeTag::kOuter});
  }
  for (int j = 0; j + 1 < ny; ++j) {
    mesh.boundary_edges.push_back({vid(0, j), vid(0, j + 1), EdgeTag::kOuter});
    mesh.boundary_edges.push_back(
        {vid(nx - 1, j), vid(nx - 1, j + 1), EdgeTag::kOuter});
  }

  // Interface edges along the boundary of Omega.  With zero wall thickness
  // the interface coincides with the outer boundary and carries no tag of
  // its own.
  if (spec.wall_thickness > 0.0) {
    const auto on_axis = [](const std::vector<double>& c, double v) {
      return static_cast<int>(std::lower_bound(c.begin(), c.end(), v) -
                              c.begin());
    };
    const int i_lo = on_axis(xs, x_lo), i_hi = on_axis(xs, x_hi);
    const int j_lo = on_axis(ys, y_lo), j_hi = on_axis(ys, y_hi);
    for (int i = i_lo; i < i_hi; ++i) {
      mesh.boundary_edges.push_back(
          {vid(i, j_lo), vid(i + 1, j_lo), EdgeTag::kInterface});
      mesh.boundary_edges.push_back(
          {vid(i, j_hi), vid(i + 1, j_hi), EdgeTag::kInterface});
    }
    for (int j = j_lo; j < j_hi; ++j) {
      mesh.boundary_edges.push_back(
          {vid(i_lo, j), vid(i_lo, j + 1), EdgeTag::kInterface});
      mesh.boundary_edges.push_back(
          {vid(i_hi, j), vid(i_hi, j + 1), EdgeTag::kInterface});
    }
  }

  // Omega node set: every node touched by a medium triangle, numbered in
  // U-node order so the map is deterministic.
  mesh.omega_of_u.assign(mesh.nodes.size(), -1);
  std::vector<char> touched(mesh.nodes.size(), 0);
  for (int t = 0; t < mesh.n_triangles(); ++t)
    if (mesh.tri_region[t] == Region::kMedium)
      for (int v : mesh.triangles[t]) touched[v] = 1;
  for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
    if (touched[n]) {
      mesh.omega_of_u[n] = static_cast<int>(mesh.u_of_omega.size());
      mesh.u_of_omega.push_back(static_cast<int>(n));
    }
  }
  return mesh;
}

std::vector<std::string> validate_mesh(const Mesh& mesh) {
  std::vector<std::string> out;
  const int nt = mesh.n_triangles();
  const int nn = mesh.n_nodes_u();

  if (static_cast<int>(mesh.tri_region.size()) != nt)
    out.push_back("tri_region size does not match triangle count");

  for (int t = 0; t < nt; ++t) {
    for (int v : mesh.triangles[t])
      if (v < 0 || v >= nn) {
        out.push_back(tri_name(t) + ": node index out of range");
        break;
      }
  }
  if (!out.empty()) return out;  // index errors make the rest meaningless

  for (int t = 0; t < nt; ++t)
    if (!(mesh.tri_area(t) > 0.0))
      out.push_back(tri_name(t) + ": non-positive signed area");

  // Edge -> incident triangles.
  std::map<std::pair<int, int>, std::vector<int>> edges;
  for (int t = 0; t < nt; ++t) {
    for (int e = 0; e < 3; ++e) {
      int a = mesh.triangles[t][e];
      int b = mesh.triangles[t][(e + 1) % 3];
      if (a > b) std::swap(a, b);
      edges[{a, b}].push_back(t);
    }
  }
  for (const auto& [key, tris] : edges) {
    if (tris.size() > 2)
      out.push_back("edge (" + std::to_string(key.first) + "," +
                    std::to_string(key.second) +
                    "): shared by more than two triangles");
  }

  // Hanging nodes: a node lying strictly inside another triangle's edge.
  // On a conforming mesh every node used by a triangle coincides with a
  // vertex of each triangle whose closure contains it; detecting the
  // structured-grid failure mode (a T-junction) is enough here: an edge
  // whose midpoint is another mesh node.
  std::set<std::pair<double, double>> node_set;
  for (const auto& p : mesh.nodes) node_set.insert({p[0], p[1]});
  for (const auto& [key, tris] : edges) {
    const auto& a = mesh.nodes[key.first];
    const auto& b = mesh.nodes[key.second];
    const std::pair<double, double> mid{0.5 * (a[0] + b[0]),
                                        0.5 * (a[1] + b[1])};
    if (node_set.count(mid))
      out.push_back("edge (" + std::to_string(key.first) + "," +
                    std::to_string(key.second) + "): hanging node at midpoint");
  }

  for (const auto& be : mesh.boundary_edges) {
    if (be.a < 0 || be.a >= nn || be.b < 0 || be.b >= nn) {
      out.push_back("boundary edge: node index out of range");
      continue;
    }
    int a = be.a, b = be.b;
    if (a > b) std::swap(a, b);
    const auto it = edges.find({a, b});
    if (it == edges.end()) {
      out.push_back("boundary edge (" + std::to_string(a) + "," +
                    std::to_string(b) + "): not an edge of any triangle");
      continue;
    }
    const auto& tris = it->second;
    if (be.tag == EdgeTag::kOuter) {
      if (tris.size() != 1)
        out.push_back("outer edge (" + std::to_string(a) + "," +
                      std::to_string(b) + "): bounds " +
                      std::to_string(tris.size()) + " triangles, expected 1");
    } else {
      bool ok = tris.size() == 2 &&
                mesh.tri_region[tris[0]] != mesh.tri_region[tris[1]];
      if (!ok)
        out.push_back("interface edge (" + std::to_string(a) + "," +
                      std::to_string(b) +
                      "): must separate exactly one medium and one wall "
                      "triangle");
    }
  }

  // Interior edges not tagged as boundary must be shared by exactly two
  // triangles.
  std::set<std::pair<int, int>> tagged;
  for (const auto& be : mesh.boundary_edges) {
    int a = be.a, b = be.b;
    if (a > b) std::swap(a, b);
    tagged.insert({a, b});
  }
  for (const auto& [key, tris] : edges) {
    if (tris.size() == 1 && !tagged.count(key))
      out.push_back("edge (" + std::to_string(key.first) + "," +
                    std::to_string(key.second) +
                    "): mesh boundary edge missing an OUTER tag");
  }

  // omega_of_u must be a bijection between medium-touched nodes and
  // 0..n_omega-1, with u_of_omega its inverse.
  if (static_cast<int>(mesh.omega_of_u.size()) != nn) {
    out.push_back("omega_of_u size does not match node count");
  } else {
    std::vector<char> touched(nn, 0);
    for (int t = 0; t < nt; ++t)
      if (mesh.tri_region[t] == Region::kMedium)
        for (int v : mesh.triangles[t]) touched[v] = 1;
    std::vector<char> seen(mesh.u_of_omega.size(), 0);
    for (int n = 0; n < nn; ++n) {
      const int o = mesh.omega_of_u[n];
      if (touched[n]) {
        if (o < 0 || o >= static_cast<int>(mesh.u_of_omega.size()) ||
            mesh.u_of_omega[o] != n)
          out.push_back("node " + std::to_string(n) +
                        ": omega index map is not a bijection");
        else if (seen[o])
          out.push_back("omega index " + std::to_string(o) +
                        ": mapped by two U nodes");
        else
          seen[o] = 1;
      } else if (o != -1) {
        out.push_back("node " + std::to_string(n) +
                      ": tagged as Omega node but touches no medium triangle");
      }
    }
  }

  return out;
}

}  // namespace amp
