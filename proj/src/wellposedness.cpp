#include "wellposedness.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace amp {

std::vector<std::string> PerturbationSpec::validate() const {
  std::vector<std::string> v;
  if (eps_u0 < 0.0 || eps_phi0 < 0.0 || eps_g < 0.0)
    v.push_back("perturbation amplitudes must be nonnegative");
  if (ladder.empty()) v.push_back("ladder must not be empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0)) {
      v.push_back("ladder entries must be positive");
      break;
    }
    if (i > 0 && !(ladder[i] < ladder[i - 1])) {
      v.push_back("ladder must be strictly decreasing");
      break;
    }
  }
  return v;
}

void PerturbationSpec::require_valid() const {
  const auto v = validate();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid perturbation spec:";
  for (const auto& m : v) os << " " << m << ";";
  throw std::invalid_argument(os.str());
}

namespace {

double bump(double x, double y, double cx, double cy, double r) {
  const double d = std::hypot(x - cx, y - cy);
  if (d >= r) return 0.0;
  const double c = std::cos(std::numbers::pi * d / (2.0 * r));
  return c * c;
}

// Interior bump on U, L2(U)-normalized (discretely, via the mass matrix).
Vec u0_profile(const StudyProblem& p) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& n : p.mesh.nodes) {
    xmin = std::min(xmin, n[0]);
    xmax = std::max(xmax, n[0]);
    ymin = std::min(ymin, n[1]);
    ymax = std::max(ymax, n[1]);
  }
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double r = 0.4 * std::min(xmax - xmin, ymax - ymin);
  Vec v(p.ops.n_u);
  for (int n = 0; n < p.ops.n_u; ++n)
    v[n] = bump(p.mesh.nodes[n][0], p.mesh.nodes[n][1], cx, cy, r);
  const double norm = std::sqrt(v.dot(p.ops.mass_u * v));
  if (!(norm > 0.0))
    throw std::runtime_error("u0 perturbation profile vanishes on this mesh");
  return v / norm;
}

// Interior bump on Omega, H1(Omega)-normalized.
Vec phi0_profile(const StudyProblem& p) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (int o = 0; o < p.ops.n_o; ++o) {
    const auto& n = p.mesh.nodes[p.mesh.u_of_omega[o]];
    xmin = std::min(xmin, n[0]);
    xmax = std::max(xmax, n[0]);
    ymin = std::min(ymin, n[1]);
    ymax = std::max(ymax, n[1]);
  }
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double r = 0.4 * std::min(xmax - xmin, ymax - ymin);
  Vec v(p.ops.n_o);
  for (int o = 0; o < p.ops.n_o; ++o) {
    const auto& n = p.mesh.nodes[p.mesh.u_of_omega[o]];
    v[o] = bump(n[0], n[1], cx, cy, r);
  }
  const double norm =
      std::sqrt(v.dot(p.ops.mass_o * v) + v.dot(p.ops.stiff_o * v));
  if (!(norm > 0.0))
    throw std::runtime_error("phi0 perturbation profile vanishes on this mesh");
  return v / norm;
}

// Boundary bump anchored at the bottom-edge midpoint, constant in time,
// normalized in L2 of the boundary cylinder ∂U x (0, T).
struct GProfile {
  double cx, cy, r, scale;
  double operator()(double x, double y, double /*t*/) const {
    return scale * bump(x, y, cx, cy, r);
  }
};

GProfile g_profile(const StudyProblem& p) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300;
  for (const auto& n : p.mesh.nodes) {
    xmin = std::min(xmin, n[0]);
    xmax = std::max(xmax, n[0]);
    ymin = std::min(ymin, n[1]);
  }
  GProfile q{0.5 * (xmin + xmax), ymin, 0.45 * (xmax - xmin), 1.0};
  Vec v(p.ops.n_u);
  for (int n = 0; n < p.ops.n_u; ++n)
    v[n] = q(p.mesh.nodes[n][0], p.mesh.nodes[n][1], 0.0);
  const double norm =
      std::sqrt(p.params.t_end * v.dot(p.ops.bmass_u * v));
  if (!(norm > 0.0))
    throw std::runtime_error("g perturbation profile vanishes on this mesh");
  q.scale = 1.0 / norm;
  return q;
}

// Runs a perturbed problem and streams difference norms against the
// stored base trajectory.
ScalingRung run_rung(const StudyProblem& p, const Trajectory& base,
                     double scale, const Vec* du0, const Vec* dphi0,
                     const GProfile* dg, double g_amp) {
  FieldState init = p.initial;
  if (du0) init.u += scale * (*du0);
  if (dphi0) init.phi += scale * (*dphi0);

  BoundaryData g = p.g;
  if (dg) {
    const GProfile prof = *dg;
    const auto base_g = p.g.g;
    const double amp = scale * g_amp;
    g.g = [base_g, prof, amp](double x, double y, double t) {
      return base_g(x, y, t) + amp * prof(x, y, t);
    };
  }

  ScalingRung rung;
  rung.scale = scale;
  double grad_sq = 0.0, phidot_sq = 0.0;
  std::size_t index = 0;
  double prev_t = init.t;
  const auto account = [&](const FieldState& state) {
    if (index >= base.size())
      throw std::runtime_error("perturbation run outran the base trajectory");
    const FieldState& ref = base[index];
    const Vec du = state.u - ref.u;
    const Vec dp = state.phi - ref.phi;
    rung.sup_u_l2 = std::max(
        rung.sup_u_l2, std::sqrt(std::max(0.0, du.dot(p.ops.mass_u * du))));
    rung.sup_phi_h1 = std::max(
        rung.sup_phi_h1,
        std::sqrt(std::max(0.0, dp.dot(p.ops.mass_o * dp) +
                                    dp.dot(p.ops.stiff_o * dp))));
    const double dt = state.t - prev_t;
    if (dt > 0.0) {
      const Vec dpd = state.phi_dot - ref.phi_dot;
      grad_sq += dt * du.dot(p.ops.stiff_u_unit * du);
      phidot_sq += dt * dpd.dot(p.ops.mass_o * dpd);
    }
    prev_t = state.t;
    ++index;
  };

  account(init);
  run(init, p.cfg, p.params, p.ops, p.mesh, g, account);
  rung.grad_u_l2t = std::sqrt(grad_sq);
  rung.phidot_l2t = std::sqrt(phidot_sq);
  return rung;
}

// Least-squares slope of log(norm) against log(scale); zero norms make
// the fit undefined.
bool fit_slope(const std::vector<ScalingRung>& rungs,
               double ScalingRung::*field, double& slope) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rungs.size());
  for (const auto& r : rungs) {
    const double v = r.*field;
    if (!(v > 0.0)) return false;
    const double x = std::log10(r.scale), y = std::log10(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return false;
  slope = (n * sxy - sx * sy) / denom;
  return true;
}

}  // namespace

ScalingReport perturbation_study(const StudyProblem& base,
                                 const PerturbationSpec& spec, int threads) {
  spec.require_valid();
  base.cfg.require_valid();
  base.params.require_valid();

  Trajectory base_traj;
  base_traj.push_back(base.initial);
  run(base.initial, base.cfg, base.params, base.ops, base.mesh, base.g,
      [&](const FieldState& s) { base_traj.push_back(s); });

  const Vec pu = u0_profile(base);
  const Vec pp = phi0_profile(base);
  const GProfile pg = g_profile(base);

  struct ChannelDef {
    const char* name;
    double eps;
    const Vec* du0;
    const Vec* dphi0;
    const GProfile* dg;
  };
  const ChannelDef defs[3] = {
      {"u0", spec.eps_u0, &pu, nullptr, nullptr},
      {"phi0", spec.eps_phi0, nullptr, &pp, nullptr},
      {"g", spec.eps_g, nullptr, nullptr, &pg},
  };

  ScalingReport report;
  for (const auto& def : defs) {
    ChannelScaling ch;
    ch.channel = def.name;
    ch.eps = def.eps;
    ch.rungs.resize(spec.ladder.size());

    if (threads > 1) {
      // Waves of at most `threads` concurrent rungs.
      std::vector<std::future<ScalingRung>> futures(spec.ladder.size());
      const std::size_t wave = static_cast<std::size_t>(threads);
      for (std::size_t start = 0; start < spec.ladder.size(); start += wave) {
        const std::size_t stop = std::min(spec.ladder.size(), start + wave);
        for (std::size_t i = start; i < stop; ++i) {
          futures[i] = std::async(std::launch::async, [&, i] {
            const Vec du0_scaled = def.du0 ? Vec(def.eps * (*def.du0)) : Vec();
            const Vec dphi0_scaled =
                def.dphi0 ? Vec(def.eps * (*def.dphi0)) : Vec();
            return run_rung(base, base_traj, spec.ladder[i],
                            def.du0 ? &du0_scaled : nullptr,
                            def.dphi0 ? &dphi0_scaled : nullptr, def.dg,
                            def.eps);
          });
        }
        for (std::size_t i = start; i < stop; ++i) ch.rungs[i] = futures[i].get();
      }
    } else {
      for (std::size_t i = 0; i < spec.ladder.size(); ++i) {
        const Vec du0_scaled = def.du0 ? Vec(def.eps * (*def.du0)) : Vec();
        const Vec dphi0_scaled =
            def.dphi0 ? Vec(def.eps * (*def.dphi0)) : Vec();
        ch.rungs[i] = run_rung(base, base_traj, spec.ladder[i],
                               def.du0 ? &du0_scaled : nullptr,
                               def.dphi0 ? &dphi0_scaled : nullptr, def.dg,
                               def.eps);
      }
    }

    ch.slopes_defined = fit_slope(ch.rungs, &ScalingRung::sup_u_l2,
                                  ch.slope_sup_u) &&
                        fit_slope(ch.rungs, &ScalingRung::sup_phi_h1,
                                  ch.slope_sup_phi) &&
                        fit_slope(ch.rungs, &ScalingRung::grad_u_l2t,
                                  ch.slope_grad_u) &&
                        fit_slope(ch.rungs, &ScalingRung::phidot_l2t,
                                  ch.slope_phidot);
    report.channels.push_back(std::move(ch));
  }
  return report;
}

double uniqueness_probe(const StudyProblem& base, int n_reps) {
  if (n_reps < 1) throw std::invalid_argument("uniqueness_probe: n_reps >= 1");
  Trajectory first;
  double max_diff = 0.0;
  for (int rep = 0; rep < n_reps; ++rep) {
    std::size_t index = 0;
    const auto account = [&](const FieldState& s) {
      if (rep == 0) {
        first.push_back(s);
      } else {
        const FieldState& ref = first[index];
        max_diff = std::max(
            max_diff, (s.u - ref.u).cwiseAbs().maxCoeff());
        max_diff = std::max(
            max_diff, (s.phi - ref.phi).cwiseAbs().maxCoeff());
      }
      ++index;
    };
    account(base.initial);
    run(base.initial, base.cfg, base.params, base.ops, base.mesh, base.g,
        account);
  }
  return max_diff;
}

void write_scaling_csv(std::ostream& os, const ScalingReport& report) {
  os << "channel,scale,sup_u_l2,sup_phi_h1,grad_u_l2t,phidot_l2t\n";
  char buf[256];
  for (const auto& ch : report.channels) {
    for (const auto& r : ch.rungs) {
      std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    ch.channel.c_str(), r.scale, r.sup_u_l2, r.sup_phi_h1,
                    r.grad_u_l2t, r.phidot_l2t);
      os << buf;
    }
  }
}

void write_scaling_text(std::ostream& os, const ScalingReport& report) {
  char buf[256];
  for (const auto& ch : report.channels) {
    os << "channel " << ch.channel << " (amplitude " << ch.eps << ")\n";
    for (const auto& r : ch.rungs) {
      std::snprintf(buf, sizeof(buf),
                    "  scale %-10.3g sup|u| %-12.5g sup|phi|_H1 %-12.5g "
                    "|grad u|_L2t %-12.5g |phi_t|_L2t %-12.5g\n",
                    r.scale, r.sup_u_l2, r.sup_phi_h1, r.grad_u_l2t,
                    r.phidot_l2t);
      os << buf;
    }
    if (ch.slopes_defined) {
      std::snprintf(buf, sizeof(buf),
                    "  fitted slopes: sup|u| %.4f  sup|phi|_H1 %.4f  "
                    "|grad u| %.4f  |phi_t| %.4f\n",
                    ch.slope_sup_u, ch.slope_sup_phi, ch.slope_grad_u,
                    ch.slope_phidot);
      os << buf;
    } else {
      os << "  slopes undefined (differences vanish)\n";
    }
  }
}

}  // namespace amp
