#include "assembly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "solver.hpp"

namespace amp {

std::vector<std::string> ModelParams::validate() const {
  std::vector<std::string> v;
  if (!(k_omega > 0.0)) v.push_back("k_omega must be positive");
  if (!(k_wall > 0.0)) v.push_back("k_wall must be positive");
  if (latent_l < 0.0) v.push_back("latent_l must be nonnegative");
  if (!(tau > 0.0)) v.push_back("tau must be positive");
  if (!(xi > 0.0)) v.push_back("xi must be positive");
  if (lambda_bc < 0.0) v.push_back("lambda_bc must be nonnegative");
  if (!(t_end > 0.0)) v.push_back("t_end must be positive");
  return v;
}

void ModelParams::require_valid() const {
  const auto v = validate();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid model parameters:";
  for (const auto& m : v) os << " " << m << ";";
  throw std::invalid_argument(os.str());
}

namespace {

using Triplet = Eigen::Triplet<double>;

// P1 gradients are constant per triangle: grad(lambda_i) = (b_i, c_i)/(2A).
struct P1Element {
  double area;
  double b[3], c[3];

  explicit P1Element(const Mesh& mesh, int t) {
    const auto& tr = mesh.triangles[t];
    const auto& p0 = mesh.nodes[tr[0]];
    const auto& p1 = mesh.nodes[tr[1]];
    const auto& p2 = mesh.nodes[tr[2]];
    b[0] = p1[1] - p2[1];
    b[1] = p2[1] - p0[1];
    b[2] = p0[1] - p1[1];
    c[0] = p2[0] - p1[0];
    c[1] = p0[0] - p2[0];
    c[2] = p1[0] - p0[0];
    area = 0.5 * (c[2] * b[1] - c[1] * b[2]);
  }

  double mass(int i, int j) const { return area / 12.0 * (i == j ? 2.0 : 1.0); }
  double stiff(int i, int j) const {
    return (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
  }
};

SpMat from_triplets(int rows, int cols, const std::vector<Triplet>& ts) {
  SpMat m(rows, cols);
  m.setFromTriplets(ts.begin(), ts.end());
  m.makeCompressed();
  return m;
}

}  // namespace

AssembledOperators assemble_operators(const Mesh& mesh,
                                      const ModelParams& params) {
  params.require_valid();
  const auto mesh_bad = validate_mesh(mesh);
  if (!mesh_bad.empty())
    throw std::invalid_argument("assemble_operators: invalid mesh: " +
                                mesh_bad.front());

  AssembledOperators ops;
  ops.n_u = mesh.n_nodes_u();
  ops.n_o = mesh.n_nodes_omega();

  std::vector<Triplet> t_mass_u, t_stiff_u, t_stiff_u1, t_mass_o, t_stiff_o,
      t_couple;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const P1Element el(mesh, t);
    const auto& tr = mesh.triangles[t];
    const bool medium = mesh.tri_region[t] == Region::kMedium;
    const double k = medium ? params.k_omega : params.k_wall;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double m = el.mass(i, j);
        const double s = el.stiff(i, j);
        t_mass_u.emplace_back(tr[i], tr[j], m);
        t_stiff_u.emplace_back(tr[i], tr[j], k * s);
        t_stiff_u1.emplace_back(tr[i], tr[j], s);
        if (medium) {
          const int oi = mesh.omega_of_u[tr[i]];
          const int oj = mesh.omega_of_u[tr[j]];
          t_mass_o.emplace_back(oi, oj, m);
          t_stiff_o.emplace_back(oi, oj, s);
          t_couple.emplace_back(oi, tr[j], m);
        }
      }
    }
  }
  ops.mass_u = from_triplets(ops.n_u, ops.n_u, t_mass_u);
  ops.stiff_u = from_triplets(ops.n_u, ops.n_u, t_stiff_u);
  ops.stiff_u_unit = from_triplets(ops.n_u, ops.n_u, t_stiff_u1);
  ops.mass_o = from_triplets(ops.n_o, ops.n_o, t_mass_o);
  ops.stiff_o = from_triplets(ops.n_o, ops.n_o, t_stiff_o);
  ops.couple_m = from_triplets(ops.n_o, ops.n_u, t_couple);

  std::vector<Triplet> t_bmass;
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag != EdgeTag::kOuter) continue;
    const auto& a = mesh.nodes[be.a];
    const auto& b = mesh.nodes[be.b];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    t_bmass.emplace_back(be.a, be.a, len / 3.0);
    t_bmass.emplace_back(be.b, be.b, len / 3.0);
    t_bmass.emplace_back(be.a, be.b, len / 6.0);
    t_bmass.emplace_back(be.b, be.a, len / 6.0);
  }
  ops.bmass_u = from_triplets(ops.n_u, ops.n_u, t_bmass);

  ops.lumped_mass_o = ops.mass_o * Vec::Ones(ops.n_o);
  return ops;
}

Vec assemble_boundary_load(const Mesh& mesh, const ModelParams& params,
                           const BoundaryData& g, double t) {
  Vec load = Vec::Zero(mesh.n_nodes_u());
  // Gauss points on [0,1] for 2-point quadrature.
  const double s0 = 0.5 - 0.5 / std::sqrt(3.0);
  const double s1 = 0.5 + 0.5 / std::sqrt(3.0);
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag != EdgeTag::kOuter) continue;
    const auto& a = mesh.nodes[be.a];
    const auto& b = mesh.nodes[be.b];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    for (double s : {s0, s1}) {
      const double x = a[0] + s * (b[0] - a[0]);
      const double y = a[1] + s * (b[1] - a[1]);
      const double gv = g.g(x, y, t);
      if (!std::isfinite(gv)) {
        std::ostringstream os;
        os << "boundary data evaluation failed at (" << x << ", " << y
           << "), t = " << t;
        throw std::runtime_error(os.str());
      }
      const double w = params.lambda_bc * 0.5 * len * gv;
      load[be.a] += w * (1.0 - s);
      load[be.b] += w * s;
    }
  }
  return load;
}

FieldState project_initial_data(
    const Mesh& mesh, const AssembledOperators& ops,
    const std::function<double(double, double)>& u0,
    const std::function<double(double, double)>& phi0) {
  Vec u_nodal(ops.n_u);
  for (int n = 0; n < ops.n_u; ++n)
    u_nodal[n] = u0(mesh.nodes[n][0], mesh.nodes[n][1]);
  Vec phi_nodal(ops.n_o);
  for (int o = 0; o < ops.n_o; ++o) {
    const int n = mesh.u_of_omega[o];
    phi_nodal[o] = phi0(mesh.nodes[n][0], mesh.nodes[n][1]);
  }
  if (!u_nodal.allFinite() || !phi_nodal.allFinite())
    throw std::runtime_error(
        "project_initial_data: initial data evaluated non-finite");

  FieldState state;
  state.t = 0.0;
  const SpMat h1_o = ops.mass_o + ops.stiff_o;
  state.u = solve_spd(ops.mass_u, Vec(ops.mass_u * u_nodal), 1e-11, 10000,
                      &u_nodal);
  state.phi = solve_spd(h1_o, Vec(h1_o * phi_nodal), 1e-11, 10000, &phi_nodal);
  state.phi_dot = Vec::Zero(ops.n_o);
  return state;
}

void dump_coordinate_text(std::ostream& os, const SpMat& m) {
  char buf[96];
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SpMat::InnerIterator it(m, row); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n",
                    static_cast<long>(it.row()), static_cast<long>(it.col()),
                    it.value());
      os << buf;
    }
  }
}

}  // namespace amp
