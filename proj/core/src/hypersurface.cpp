#include "purefield/hypersurface.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "purefield/errors.hpp"

namespace purefield {
namespace {

Real4 scaled(const Real4& v, double s) { return {v[0] * s, v[1] * s, v[2] * s, v[3] * s}; }
Real4 added(const Real4& a, const Real4& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
double norm4e(const Real4& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]); }

// Point and tangents of X = Z(tau) + R (1, n), R = xi / (u_t - n . u), in the
// parameters (tau, xi, cos theta, phi).
struct RetardedChart {
  Real4 x;
  Real4 t_tau, t_xi, t_c, t_phi;
  RetardedFrame frame;
};

RetardedChart chart(const Worldline& wl, double tau, double xi, double c, double phi) {
  const WorldlineState s = wl.state(tau);
  const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
  const Vec3 n{st * std::cos(phi), st * std::sin(phi), c};
  const Vec3 dn_c = st > 0.0 ? Vec3{-c * std::cos(phi) / st, -c * std::sin(phi) / st, 1.0} : Vec3{0, 0, 0};
  const Vec3 dn_phi{-st * std::sin(phi), st * std::cos(phi), 0.0};
  const Vec3 uv{s.u[1], s.u[2], s.u[3]};
  const Vec3 av{s.a[1], s.a[2], s.a[3]};
  const double d = s.u[0] - dot3(n, uv);
  const double r = xi / d;
  const double dr_tau = -xi * (s.a[0] - dot3(n, av)) / (d * d);
  const double dr_c = xi * dot3(dn_c, uv) / (d * d);
  const double dr_phi = xi * dot3(dn_phi, uv) / (d * d);
  const Real4 ray{1.0, n[0], n[1], n[2]};

  RetardedChart out;
  out.x = added(s.z, scaled(ray, r));
  out.t_tau = added(s.u, scaled(ray, dr_tau));
  out.t_xi = scaled(ray, 1.0 / d);
  out.t_c = added(scaled(ray, dr_c), Real4{0.0, r * dn_c[0], r * dn_c[1], r * dn_c[2]});
  out.t_phi = added(scaled(ray, dr_phi), Real4{0.0, r * dn_phi[0], r * dn_phi[1], r * dn_phi[2]});
  out.frame = {tau, xi, n, r};
  return out;
}

const Worldline& require_worldline(const SurfacePatch& p) {
  if (!p.worldline) throw DomainError("tube and cone patches need a worldline");
  return *p.worldline;
}

// Real coefficient of d_mu in the quaternion element: N = -i n_t + n_vec.
Biquaternion basis_element(int mu) {
  if (mu == 0) return Biquaternion(-kI);
  CVec3 v{};
  v[mu - 1] = 1.0;
  return Biquaternion::vector(v);
}

}  // namespace

SurfacePatch make_tube(const Worldline& wl, double xi2, double tau1, double tau2, int orientation) {
  if (!(xi2 > 0.0)) throw DomainError("tube radius must be positive");
  SurfacePatch p;
  p.kind = PatchKind::kTube;
  p.worldline = wl;
  p.xi = xi2;
  p.tau_lo = tau1;
  p.tau_hi = tau2;
  p.orientation = orientation;
  return p;
}

SurfacePatch make_cone(const Worldline& wl, double tau_end, double xi1, double xi2, int orientation) {
  if (xi1 < 0.0 || xi2 < xi1) throw DomainError("cone requires 0 <= xi1 <= xi2");
  SurfacePatch p;
  p.kind = PatchKind::kCone;
  p.worldline = wl;
  p.tau_end = tau_end;
  p.xi_lo = xi1;
  p.xi_hi = xi2;
  p.orientation = orientation;
  return p;
}

SurfacePatch make_flat_slab(double t0, const Vec3& lo, const Vec3& hi, int orientation) {
  SurfacePatch p;
  p.kind = PatchKind::kFlatSlab;
  p.t0 = t0;
  p.box_lo = lo;
  p.box_hi = hi;
  p.orientation = orientation;
  return p;
}

Real4 dual_covector(const std::array<Real4, 3>& t) {
  Real4 n{};
  for (int mu = 0; mu < 4; ++mu) {
    int rows[3];
    for (int r = 0, k = 0; r < 4; ++r)
      if (r != mu) rows[k++] = r;
    auto m = [&](int i, int j) { return t[j][rows[i]]; };
    const double minor = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    n[mu] = (mu % 2 == 0 ? 1.0 : -1.0) * minor;
  }
  return n;
}

double det4(const std::array<Real4, 4>& cols) {
  const Real4 n = dual_covector({cols[1], cols[2], cols[3]});
  return cols[0][0] * n[0] + cols[0][1] * n[1] + cols[0][2] * n[2] + cols[0][3] * n[3];
}

SurfaceElement element_at(const SurfacePatch& patch, const std::array<double, 3>& u) {
  SurfaceElement out;
  switch (patch.kind) {
    case PatchKind::kTube: {
      const RetardedChart ch = chart(require_worldline(patch), u[0], patch.xi, u[1], u[2]);
      out.point = {four_vector(ch.x), u[0], ch.frame};
      out.tangents = {ch.t_tau, ch.t_c, ch.t_phi};
      break;
    }
    case PatchKind::kCone: {
      const RetardedChart ch = chart(require_worldline(patch), patch.tau_end, u[0], u[1], u[2]);
      out.point = {four_vector(ch.x), patch.tau_end, ch.frame};
      out.tangents = {ch.t_xi, ch.t_c, ch.t_phi};
      break;
    }
    case PatchKind::kFlatSlab:
      out.point = {four_vector(patch.t0, {u[0], u[1], u[2]}), 0.0, std::nullopt};
      out.tangents = {Real4{0, 1, 0, 0}, Real4{0, 0, 1, 0}, Real4{0, 0, 0, 1}};
      break;
  }
  const Real4 n = dual_covector(out.tangents);
  out.jacobian = norm4e(n);
  const double scale = norm4e(out.tangents[0]) * norm4e(out.tangents[1]) * norm4e(out.tangents[2]);
  if (!(out.jacobian > 1e-13 * scale) || scale == 0.0) {
    std::ostringstream msg;
    msg << "degenerate tangents at (" << u[0] << ", " << u[1] << ", " << u[2] << ")";
    throw DegenerateTangents(msg.str());
  }
  const double sgn = patch.orientation;
  out.element = Biquaternion(Complex(0.0, -sgn * n[0]), {sgn * n[1], sgn * n[2], sgn * n[3]});
  return out;
}

SurfacePoint point_at(const SurfacePatch& patch, const std::array<double, 3>& u) {
  switch (patch.kind) {
    case PatchKind::kTube: {
      const Worldline& wl = require_worldline(patch);
      const Vec3 n = direction(u[1], u[2]);
      const Biquaternion x = tube_point(wl, u[0], n, patch.xi);
      return {x, u[0], RetardedFrame{u[0], patch.xi, n, light_distance(wl.u(u[0]), n, patch.xi)}};
    }
    case PatchKind::kCone: {
      const Worldline& wl = require_worldline(patch);
      const Vec3 n = direction(u[1], u[2]);
      const Biquaternion x = cone_point(wl, patch.tau_end, n, u[0]);
      return {x, patch.tau_end, RetardedFrame{patch.tau_end, u[0], n, light_distance(wl.u(patch.tau_end), n, u[0])}};
    }
    case PatchKind::kFlatSlab:
      return {four_vector(patch.t0, {u[0], u[1], u[2]}), 0.0, std::nullopt};
  }
  return {};
}

SurfaceMap on_surface(SpacetimeMap f) {
  return [f = std::move(f)](const SurfacePoint& p) { return f(p.x); };
}

SurfaceMap lw_potential_on_surface(const SingularityField& field) {
  return [field](const SurfacePoint& p) { return p.frame ? field.potential(p.x, *p.frame) : field.potential(p.x); };
}

SurfaceMap lw_field_on_surface(const SingularityField& field) {
  return [field](const SurfacePoint& p) { return p.frame ? field.field(p.x, *p.frame) : field.field(p.x); };
}

namespace {

double integrand(const SurfacePatch& patch, const SurfaceMap& a, const SurfaceMap& b, const std::array<double, 3>& u) {
  const SurfaceElement el = element_at(patch, u);
  return scal(conj(a(el.point)) * el.element * b(el.point)).real();
}

QuadResult integrate_patch(const SurfacePatch& patch, const SurfaceMap& a, const SurfaceMap& b,
                           const SurfaceQuadrature& q, int n_theta, int n_phi) {
  const SphereRule sphere(n_theta, n_phi);
  auto sphere_sum = [&](double s) {
    std::vector<double> terms;
    terms.reserve(sphere.nodes().size());
    for (const auto& node : sphere.nodes())
      terms.push_back(node.weight * integrand(patch, a, b, {s, node.cos_theta, node.phi}));
    return pairwise_sum(terms);
  };
  switch (patch.kind) {
    case PatchKind::kTube:
      return integrate_adaptive(sphere_sum, patch.tau_lo, patch.tau_hi, q.outer);
    case PatchKind::kCone:
      if (patch.xi_lo == patch.xi_hi) return {};
      if (patch.xi_lo > 0.0) {
        // xi = exp(s) resolves the 1/xi behaviour of the self-term.
        auto g = [&](double s) {
          const double xi = std::exp(s);
          return xi * sphere_sum(xi);
        };
        return integrate_adaptive(g, std::log(patch.xi_lo), std::log(patch.xi_hi), q.outer);
      }
      return integrate_adaptive(sphere_sum, patch.xi_lo, patch.xi_hi, q.outer);
    case PatchKind::kFlatSlab: {
      const auto& gl = gauss_legendre(q.slab_order);
      const Vec3& lo = patch.box_lo;
      const Vec3& hi = patch.box_hi;
      std::vector<double> terms;
      double vol = 1.0;
      for (int k = 0; k < 3; ++k) vol *= 0.5 * (hi[k] - lo[k]);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        for (std::size_t j = 0; j < gl.nodes.size(); ++j)
          for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const std::array<double, 3> u{0.5 * (lo[0] + hi[0]) + 0.5 * (hi[0] - lo[0]) * gl.nodes[i],
                                          0.5 * (lo[1] + hi[1]) + 0.5 * (hi[1] - lo[1]) * gl.nodes[j],
                                          0.5 * (lo[2] + hi[2]) + 0.5 * (hi[2] - lo[2]) * gl.nodes[k]};
            terms.push_back(gl.weights[i] * gl.weights[j] * gl.weights[k] * integrand(patch, a, b, u));
          }
      return {vol * pairwise_sum(terms), 0.0, terms.size(), 1};
    }
  }
  return {};
}

}  // namespace

SurfaceIntegral surface_integral(const SurfacePatch& patch, const SurfaceMap& a, const SurfaceMap& b,
                                 const SurfaceQuadrature& q) {
  const QuadResult fine = integrate_patch(patch, a, b, q, q.n_theta, q.n_phi);
  if (patch.kind == PatchKind::kFlatSlab) {
    SurfaceQuadrature coarse = q;
    coarse.slab_order = std::max(2, q.slab_order - 2);
    const QuadResult c = integrate_patch(patch, a, b, coarse, 2, 4);
    return {fine.value, std::abs(fine.value - c.value)};
  }
  const int ct = std::max(2, static_cast<int>(std::lround(q.n_theta * q.coarse_fraction)));
  const int cp = std::max(4, static_cast<int>(std::lround(q.n_phi * q.coarse_fraction)));
  const QuadResult coarse = integrate_patch(patch, a, b, q, ct, cp);
  return {fine.value, fine.error + std::abs(fine.value - coarse.value)};
}

// ---------------------------------------------------------------------------

GaussCheck gauss_check(const SpacetimeMap& a, const SpacetimeMap& b, const GaussRegion& region,
                       const GaussOptions& opts) {
  GaussCheck out;
  const SurfaceMap sa = on_surface(a);
  const SurfaceMap sb = on_surface(b);
  const auto& wl = region.worldline;
  out.tube = surface_integral(make_tube(wl, region.xi2, region.tau1, region.tau2, region.orientation[0]), sa, sb,
                              opts.surface).value;
  out.cone_start =
      surface_integral(make_cone(wl, region.tau1, 0.0, region.xi2, region.orientation[1]), sa, sb, opts.surface).value;
  out.cone_end =
      surface_integral(make_cone(wl, region.tau2, 0.0, region.xi2, region.orientation[2]), sa, sb, opts.surface).value;
  out.surface = out.tube + out.cone_start + out.cone_end;

  // Divergence of F^mu = Re scal(conj(a) e_mu b) by fourth-order differences.
  auto flux = [&](const Biquaternion& x, int mu) { return scal(conj(a(x)) * basis_element(mu) * b(x)).real(); };
  const double h = opts.fd_step;
  auto divergence = [&](const Biquaternion& x) {
    double d = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      d += (flux(shifted(x, mu, -2 * h), mu) - flux(shifted(x, mu, 2 * h), mu) +
            8.0 * (flux(shifted(x, mu, h), mu) - flux(shifted(x, mu, -h), mu))) /
           (12.0 * h);
    }
    return d;
  };

  const auto& gt = gauss_legendre(opts.volume_tau);
  const auto& gx = gauss_legendre(opts.volume_xi);
  const SphereRule sphere(opts.volume_theta, opts.volume_phi);
  const double ct = 0.5 * (region.tau1 + region.tau2), ht = 0.5 * (region.tau2 - region.tau1);
  const double hx = 0.5 * region.xi2;
  std::vector<double> terms;
  terms.reserve(gt.nodes.size() * gx.nodes.size() * sphere.nodes().size());
  for (std::size_t i = 0; i < gt.nodes.size(); ++i) {
    const double tau = ct + ht * gt.nodes[i];
    for (std::size_t j = 0; j < gx.nodes.size(); ++j) {
      const double xi = hx + hx * gx.nodes[j];
      for (const auto& node : sphere.nodes()) {
        const RetardedChart ch = chart(wl, tau, xi, node.cos_theta, node.phi);
        const double jac = std::abs(det4({ch.t_tau, ch.t_xi, ch.t_c, ch.t_phi}));
        terms.push_back(gt.weights[i] * gx.weights[j] * node.weight * jac * divergence(four_vector(ch.x)));
      }
    }
  }
  out.volume = ht * hx * pairwise_sum(terms);
  out.residual = std::abs(out.surface - out.volume);
  const double scale =
      std::max(std::abs(out.volume), std::abs(out.tube) + std::abs(out.cone_start) + std::abs(out.cone_end));
  out.relative = scale > 0.0 ? out.residual / scale : 0.0;
  return out;
}

}  // namespace purefield
