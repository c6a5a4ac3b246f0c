#include "purefield/action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "purefield/errors.hpp"
#include "purefield/finite_part.hpp"

namespace purefield {
namespace {

void check_region(double xi2, double tau1, double tau2, const ActionOptions& opts) {
  if (!(xi2 > 1e3 * opts.retarded.degenerate_eps))
    throw DomainError("tube radius xi2 must exceed 1e3 x the degenerate-point epsilon");
  if (!(tau2 > tau1)) throw InvalidInterval("proper-time interval requires tau1 < tau2");
}

double line_integral(const std::function<double(double)>& f, double a, double b, const ActionOptions& opts,
                     double* error) {
  const QuadResult r = integrate_adaptive(f, a, b, opts.line);
  if (error) *error += r.error;
  return r.value;
}

// A_e transported along the retarded-time map: its value at Z(tau_r(X)).
SurfaceMap frozen_potential(const ExternalField& ext, const Worldline& wl) {
  return [ext, wl](const SurfacePoint& p) { return ext.potential(wl.position(p.tau)); };
}

double a_dot_u(const ExternalField& ext, const Worldline& wl, double tau) {
  return minkowski(ext.components(wl.z(tau)), wl.u(tau));
}

}  // namespace

MassTerm mass_term(const Worldline& wl, double e, double xi2, double tau1, double tau2, const ActionOptions& opts,
                   double xi1) {
  check_region(xi2, tau1, tau2, opts);
  if (xi1 <= 0.0) xi1 = opts.xi1_fraction * xi2;
  MassTerm out;
  out.analytic = -e * e * (tau2 - tau1) / (2.0 * xi2);
  if (e == 0.0) return out;
  const SingularityField sf(e, wl, opts.retarded);
  const SurfaceMap a = lw_potential_on_surface(sf);
  const SurfaceMap b = lw_field_on_surface(sf);
  const SurfaceIntegral tube = surface_integral(make_tube(wl, xi2, tau1, tau2, kTubeOutward), a, b, opts.surface);
  const SurfaceIntegral c1 = surface_integral(make_cone(wl, tau1, xi1, xi2, kConePast), a, b, opts.surface);
  const SurfaceIntegral c2 = surface_integral(make_cone(wl, tau2, xi1, xi2, kConeFuture), a, b, opts.surface);
  out.tube = kSelfPrefactor * tube.value;
  out.cone_start = kSelfPrefactor * c1.value;
  out.cone_end = kSelfPrefactor * c2.value;
  out.numeric = out.tube + (out.cone_start + out.cone_end);
  out.error = kSelfPrefactor * (tube.error + c1.error + c2.error);
  return out;
}

ConeSelfTerms cone_self_cancellation(const Worldline& wl, double e, double xi1, double xi2, double tau1, double tau2,
                                     const ActionOptions& opts) {
  if (!(xi1 > 0.0) || xi2 < xi1) throw InvalidInterval("cone self-terms require 0 < xi1 <= xi2");
  check_region(xi2, tau1, tau2, opts);
  ConeSelfTerms out;
  out.reference = e * e * std::log(xi2 / xi1);
  if (e == 0.0 || xi1 == xi2) return out;
  const SingularityField sf(e, wl, opts.retarded);
  const SurfaceMap a = lw_potential_on_surface(sf);
  const SurfaceMap b = lw_field_on_surface(sf);
  const SurfaceIntegral c1 = surface_integral(make_cone(wl, tau1, xi1, xi2, kConeFuture), a, b, opts.surface);
  const SurfaceIntegral c2 = surface_integral(make_cone(wl, tau2, xi1, xi2, kConeFuture), a, b, opts.surface);
  out.cone1 = kSelfPrefactor * c1.value;
  out.cone2 = kSelfPrefactor * c2.value;
  out.difference = out.cone2 - out.cone1;
  out.error = kSelfPrefactor * (c1.error + c2.error);
  return out;
}

InteractionTube interaction_tube(const Worldline& wl, double e, const ExternalField& ext, double xi2, double tau1,
                                 double tau2, const ActionOptions& opts) {
  check_region(xi2, tau1, tau2, opts);
  InteractionTube out;
  if (e == 0.0) return out;
  double err = 0.0;
  out.analytic_no_accel = -e * line_integral([&](double t) { return a_dot_u(ext, wl, t); }, tau1, tau2, opts, &err);
  out.analytic = -e * line_integral(
                          [&](double t) {
                            const WorldlineState s = wl.state(t);
                            const Real4 ae = ext.components(s.z);
                            return minkowski(ae, s.u) + xi2 * minkowski(ae, s.a);
                          },
                          tau1, tau2, opts, &err);
  const SingularityField sf(e, wl, opts.retarded);
  const SurfaceIntegral tube = surface_integral(make_tube(wl, xi2, tau1, tau2, kTubeOutward), frozen_potential(ext, wl),
                                                lw_field_on_surface(sf), opts.surface);
  out.numeric = kCrossPrefactor * tube.value;
  out.error = kCrossPrefactor * tube.error + std::abs(e) * err;
  return out;
}

InteractionCones interaction_cones(const Worldline& wl, double e, const ExternalField& ext, double xi1, double xi2,
                                   double tau1, double tau2, const ActionOptions& opts) {
  if (xi1 < 0.0 || xi2 < xi1) throw InvalidInterval("interaction cones require 0 <= xi1 <= xi2");
  check_region(xi2, tau1, tau2, opts);
  InteractionCones out;
  if (e == 0.0 || xi1 == xi2) return out;
  out.analytic = e * (xi2 - xi1) * (a_dot_u(ext, wl, tau2) - a_dot_u(ext, wl, tau1));
  const SingularityField sf(e, wl, opts.retarded);
  const SurfaceMap a = frozen_potential(ext, wl);
  const SurfaceMap b = lw_field_on_surface(sf);
  const SurfaceIntegral c1 = surface_integral(make_cone(wl, tau1, xi1, xi2, kConePast), a, b, opts.surface);
  const SurfaceIntegral c2 = surface_integral(make_cone(wl, tau2, xi1, xi2, kConeFuture), a, b, opts.surface);
  out.numeric = kCrossPrefactor * (c1.value + c2.value);
  out.error = kCrossPrefactor * (c1.error + c2.error);
  return out;
}

SlowVariation slow_variation_ratios(const ExternalField& ext, const Worldline& wl, double xi2, double tau1,
                                    double tau2, const ActionOptions& opts) {
  check_region(xi2, tau1, tau2, opts);
  const SphereRule sphere(opts.ratio_theta, opts.ratio_phi);
  Real4 max_a{};
  std::array<Real4, 4> max_grad{};  // [n][c]
  auto sample = [&](const Real4& x) {
    const Real4 a = ext.components(x);
    const auto g = ext.gradient(x);
    for (int c = 0; c < 4; ++c) {
      max_a[c] = std::max(max_a[c], std::abs(a[c]));
      for (int n = 0; n < 4; ++n) max_grad[n][c] = std::max(max_grad[n][c], std::abs(g[n][c]));
    }
  };
  const int nt = std::max(2, opts.ratio_tau_samples);
  for (int i = 0; i < nt; ++i) {
    const double tau = tau1 + (tau2 - tau1) * i / (nt - 1);
    sample(wl.z(tau));
    for (double xi : {0.5 * xi2, xi2})
      for (const auto& node : sphere.nodes())
        sample(components(tube_point(wl, tau, direction(node.cos_theta, node.phi), xi)));
  }
  SlowVariation out;
  for (int c = 0; c < 4; ++c) {
    if (max_a[c] < opts.component_floor) {
      out.excluded.push_back(c);
      continue;
    }
    for (int n = 0; n < 4; ++n) out.ratios[n] = std::max(out.ratios[n], xi2 * max_grad[n][c] / max_a[c]);
  }
  out.max_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
  return out;
}

InteractionTotal interaction_total(const Worldline& wl, double e, const ExternalField& ext, double xi2, double tau1,
                                   double tau2, const ActionOptions& opts) {
  check_region(xi2, tau1, tau2, opts);
  InteractionTotal out;
  out.condition = slow_variation_ratios(ext, wl, xi2, tau1, tau2, opts);
  if (opts.enforce_slow_variation && !out.condition.satisfied(opts.slow_threshold))
    throw ConditionViolated("slow-variation ratio " + std::to_string(out.condition.max_ratio) +
                            " exceeds threshold " + std::to_string(opts.slow_threshold));
  if (e == 0.0) return out;

  const InteractionTube tube = interaction_tube(wl, e, ext, xi2, tau1, tau2, opts);
  const InteractionCones cones = interaction_cones(wl, e, ext, 0.0, xi2, tau1, tau2, opts);
  out.tube = tube.numeric;
  out.cones = cones.numeric;
  out.numeric = tube.numeric + cones.numeric;

  double err = 0.0;
  out.analytic_usual = tube.analytic_no_accel;
  out.analytic_closed = -e * line_integral(
                               [&](double t) {
                                 const WorldlineState s = wl.state(t);
                                 const Real4 ae = ext.components(s.z);
                                 const Real4 dae = components(ext.proper_time_derivative(wl, t));
                                 return minkowski(ae, s.u) - xi2 * minkowski(dae, s.u);
                               },
                               tau1, tau2, opts, &err);
  out.error = tube.error + cones.error + std::abs(e) * err;

  const SingularityField sf(e, wl, opts.retarded);
  const SurfaceMap a = on_surface(ext.potential_map());
  const SurfaceMap b = lw_field_on_surface(sf);
  const SurfaceIntegral pt = surface_integral(make_tube(wl, xi2, tau1, tau2, kTubeOutward), a, b, opts.surface);
  const SurfaceIntegral p1 = surface_integral(make_cone(wl, tau1, 0.0, xi2, kConePast), a, b, opts.surface);
  const SurfaceIntegral p2 = surface_integral(make_cone(wl, tau2, 0.0, xi2, kConeFuture), a, b, opts.surface);
  out.pointwise = kCrossPrefactor * (pt.value + p1.value + p2.value);
  out.pointwise_error = kCrossPrefactor * (pt.error + p1.error + p2.error);
  return out;
}

MassAssignment assign_mass(double e, double xi2, double c) {
  if (!(xi2 > 0.0)) throw DomainError("xi2 must be positive");
  MassAssignment m;
  m.rest_energy = e * e / (2.0 * xi2);
  m.mass = m.rest_energy / (c * c);
  m.r_e = e * e / m.rest_energy;
  m.xi2_over_re = xi2 / m.r_e;
  return m;
}

MassAssignment electron_assignment() {
  const double e2 = kElectronCharge * kElectronCharge;
  const double xi2 = e2 / (2.0 * kElectronMass * kSpeedOfLight * kSpeedOfLight);
  return assign_mass(kElectronCharge, xi2, kSpeedOfLight);
}

namespace {

double box_sum(const ExternalField& ext, const Box4& box, int order) {
  const auto& gl = gauss_legendre(order);
  const Real4 lo{box.t0, box.lo[0], box.lo[1], box.lo[2]};
  const Real4 hi{box.t1, box.hi[0], box.hi[1], box.hi[2]};
  Real4 mid{}, half{};
  double jac = 1.0;
  for (int k = 0; k < 4; ++k) {
    mid[k] = 0.5 * (lo[k] + hi[k]);
    half[k] = 0.5 * (hi[k] - lo[k]);
    jac *= half[k];
  }
  const std::size_t n = gl.nodes.size();
  std::vector<double> terms;
  terms.reserve(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const Real4 x{mid[0] + half[0] * gl.nodes[i], mid[1] + half[1] * gl.nodes[j],
                        mid[2] + half[2] * gl.nodes[k], mid[3] + half[3] * gl.nodes[l]};
          const Biquaternion b = ext.field(four_vector(x));
          terms.push_back(gl.weights[i] * gl.weights[j] * gl.weights[k] * gl.weights[l] * scal(conj(b) * b).real());
        }
  return kSelfPrefactor * jac * pairwise_sum(terms);
}

}  // namespace

Estimate external_field_term(const ExternalField& ext, const Box4& box, int order) {
  if (!(box.t1 > box.t0) || !(box.hi[0] > box.lo[0]) || !(box.hi[1] > box.lo[1]) || !(box.hi[2] > box.lo[2]))
    throw InvalidInterval("external field region must have positive extent");
  const double fine = box_sum(ext, box, order);
  const double coarse = box_sum(ext, box, std::max(2, order - 2));
  return {fine, std::abs(fine - coarse)};
}

ActionReport assemble_report(const Scenario& s, const ActionOptions& opts) {
  ActionReport r;
  const Worldline& wl = s.worldline;
  r.mass = mass_term(wl, s.e, s.xi2, s.tau1, s.tau2, opts, s.xi1);
  r.cone_self = cone_self_cancellation(wl, s.e, s.xi1, s.xi2, s.tau1, s.tau2, opts);
  r.tube = interaction_tube(wl, s.e, s.external, s.xi2, s.tau1, s.tau2, opts);
  r.cones = interaction_cones(wl, s.e, s.external, s.xi1, s.xi2, s.tau1, s.tau2, opts);
  r.total = interaction_total(wl, s.e, s.external, s.xi2, s.tau1, s.tau2, opts);
  r.assigned = assign_mass(s.e, s.xi2);
  if (s.external_region) r.external_field = external_field_term(s.external, *s.external_region, opts.box_order);

  if (wl.family() == WorldlineFamily::kRest && s.e != 0.0) {
    const SingularityField sf(s.e, wl, opts.retarded);
    r.energy_inside = hadamard_finite_part(self_energy_integrand(sf, s.xi2)).value;
    r.energy_outside = volume_self_energy(sf, s.xi2, std::numeric_limits<double>::infinity()).value;
  }

  const double dtau = s.tau2 - s.tau1;
  r.surface_action = r.mass.numeric + r.total.numeric;
  r.usual_action = -r.assigned.rest_energy * dtau + r.total.analytic_usual;
  r.action_relative_difference =
      r.usual_action != 0.0 ? std::abs(r.surface_action - r.usual_action) / std::abs(r.usual_action) : 0.0;
  return r;
}

}  // namespace purefield
