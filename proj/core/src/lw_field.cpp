#include "purefield/lw_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "purefield/errors.hpp"

namespace purefield {
namespace {

// Six-vector of the bivector p^mu q^nu - p^nu q^mu (E_i = F^{i0}, H_i = -eps_ijk F^{jk}/2).
Biquaternion wedge(const Real4& p, const Real4& q, double scale) {
  const Vec3 pv{p[1], p[2], p[3]};
  const Vec3 qv{q[1], q[2], q[3]};
  const Vec3 pxq = cross3(pv, qv);
  Vec3 e, h;
  for (int i = 0; i < 3; ++i) {
    e[i] = scale * (pv[i] * q[0] - p[0] * qv[i]);
    h[i] = -scale * pxq[i];
  }
  return six_vector(e, h);
}

}  // namespace

Biquaternion SingularityField::potential(const Biquaternion& x) const {
  return potential(x, retarded_solve(worldline_, x, opts_));
}

Biquaternion SingularityField::potential(const Biquaternion&, const RetardedFrame& frame) const {
  return worldline_.velocity(frame.tau_r) * (charge_ / frame.xi);
}

SingularityField::Parts SingularityField::parts(const Biquaternion& x, const RetardedFrame& frame) const {
  const WorldlineState s = worldline_.state(frame.tau_r);
  const Real4 xr = components(x);
  Real4 k;
  for (int m = 0; m < 4; ++m) k[m] = (xr[m] - s.z[m]) / frame.xi;
  const double ak = minkowski(s.a, k);
  Real4 w;
  for (int m = 0; m < 4; ++m) w[m] = s.a[m] - ak * s.u[m];
  return {wedge(k, s.u, charge_ / (frame.xi * frame.xi)), wedge(k, w, charge_ / frame.xi)};
}

Biquaternion SingularityField::field(const Biquaternion& x) const {
  return field(x, retarded_solve(worldline_, x, opts_));
}

Biquaternion SingularityField::field(const Biquaternion& x, const RetardedFrame& frame) const {
  const Parts p = parts(x, frame);
  return p.velocity + p.radiation;
}

SingularityField::Parts SingularityField::field_parts(const Biquaternion& x) const {
  return parts(x, retarded_solve(worldline_, x, opts_));
}

SpacetimeMap SingularityField::potential_map() const {
  return [self = *this](const Biquaternion& x) { return self.potential(x); };
}

SpacetimeMap SingularityField::field_map() const {
  return [self = *this](const Biquaternion& x) { return self.field(x); };
}

// ---------------------------------------------------------------------------

std::string to_string(ExternalFamily f) {
  switch (f) {
    case ExternalFamily::kConstant: return "constant";
    case ExternalFamily::kPolynomialSlow: return "polynomial-slow";
    case ExternalFamily::kPlaneWave: return "plane-wave";
    case ExternalFamily::kDistantCharge: return "distant-charge";
  }
  return "unknown";
}

ExternalField ExternalField::constant(const Real4& a0) { return {ExternalFamily::kConstant, Constant{a0}}; }

ExternalField ExternalField::polynomial_slow(const Real4& a0, double eps, const Real4& k) {
  return {ExternalFamily::kPolynomialSlow, PolySlow{a0, eps, k}};
}

ExternalField ExternalField::plane_wave(double amplitude, double wavelength, const Vec3& propagation,
                                        const Vec3& polarization, double phase) {
  if (!(wavelength > 0.0)) throw DomainError("plane wave requires wavelength > 0");
  const double kn = norm3(propagation);
  if (!(kn > 0.0)) throw DomainError("plane wave requires a nonzero propagation direction");
  const Vec3 khat{propagation[0] / kn, propagation[1] / kn, propagation[2] / kn};
  // Transverse part of the polarization.
  const double along = dot3(polarization, khat);
  Vec3 pol{polarization[0] - along * khat[0], polarization[1] - along * khat[1],
           polarization[2] - along * khat[2]};
  const double pn = norm3(pol);
  if (!(pn > 1e-12)) throw DomainError("plane wave polarization must not be parallel to propagation");
  for (auto& c : pol) c /= pn;
  return {ExternalFamily::kPlaneWave,
          PlaneWave{amplitude, 2.0 * std::numbers::pi / wavelength, khat, pol, phase}};
}

ExternalField ExternalField::distant_charge(double q, const Vec3& position) {
  return {ExternalFamily::kDistantCharge, Charge{q, position}};
}

Real4 ExternalField::components(const Real4& x) const {
  struct Visitor {
    const Real4& x;
    Real4 operator()(const Constant& p) const { return p.a0; }
    Real4 operator()(const PolySlow& p) const {
      const double s = 1.0 + p.eps * minkowski(p.k, x);
      return {p.a0[0] * s, p.a0[1] * s, p.a0[2] * s, p.a0[3] * s};
    }
    Real4 operator()(const PlaneWave& p) const {
      const double psi = p.omega * (x[0] - (p.khat[0] * x[1] + p.khat[1] * x[2] + p.khat[2] * x[3])) + p.phase;
      const double c = p.amplitude * std::cos(psi);
      return {0.0, p.pol[0] * c, p.pol[1] * c, p.pol[2] * c};
    }
    Real4 operator()(const Charge& p) const {
      const Vec3 d{x[1] - p.pos[0], x[2] - p.pos[1], x[3] - p.pos[2]};
      return {p.q / norm3(d), 0.0, 0.0, 0.0};
    }
  };
  return std::visit(Visitor{x}, params_);
}

std::array<Real4, 4> ExternalField::gradient(const Real4& x) const {
  struct Visitor {
    const Real4& x;
    std::array<Real4, 4> operator()(const Constant&) const { return {}; }
    std::array<Real4, 4> operator()(const PolySlow& p) const {
      // d_mu of (k_t t - k . x) is (k_t, -kx, -ky, -kz).
      const Real4 ds{p.k[0], -p.k[1], -p.k[2], -p.k[3]};
      std::array<Real4, 4> g{};
      for (int m = 0; m < 4; ++m)
        for (int c = 0; c < 4; ++c) g[m][c] = p.a0[c] * p.eps * ds[m];
      return g;
    }
    std::array<Real4, 4> operator()(const PlaneWave& p) const {
      const double psi = p.omega * (x[0] - (p.khat[0] * x[1] + p.khat[1] * x[2] + p.khat[2] * x[3])) + p.phase;
      const double s = -p.amplitude * p.omega * std::sin(psi);  // d/dpsi of amplitude cos(psi), times omega
      const Real4 dpsi{1.0, -p.khat[0], -p.khat[1], -p.khat[2]};
      std::array<Real4, 4> g{};
      for (int m = 0; m < 4; ++m)
        for (int c = 1; c < 4; ++c) g[m][c] = s * dpsi[m] * p.pol[c - 1];
      return g;
    }
    std::array<Real4, 4> operator()(const Charge& p) const {
      const Vec3 d{x[1] - p.pos[0], x[2] - p.pos[1], x[3] - p.pos[2]};
      const double r = norm3(d);
      const double r3 = r * r * r;
      std::array<Real4, 4> g{};
      for (int i = 0; i < 3; ++i) g[i + 1][0] = -p.q * d[i] / r3;
      return g;
    }
  };
  return std::visit(Visitor{x}, params_);
}

Biquaternion ExternalField::potential(const Biquaternion& x) const {
  return four_vector(components(purefield::components(x)));
}

Biquaternion ExternalField::field(const Biquaternion& x) const {
  const auto g = gradient(purefield::components(x));
  // E = -grad phi - dA/dt, H = curl A.
  const Vec3 e{-g[1][0] - g[0][1], -g[2][0] - g[0][2], -g[3][0] - g[0][3]};
  const Vec3 h{g[2][3] - g[3][2], g[3][1] - g[1][3], g[1][2] - g[2][1]};
  return six_vector(e, h);
}

Biquaternion ExternalField::proper_time_derivative(const Worldline& wl, double tau) const {
  const WorldlineState s = wl.state(tau);
  const auto g = gradient(s.z);
  Real4 d{};
  for (int m = 0; m < 4; ++m)
    for (int c = 0; c < 4; ++c) d[c] += s.u[m] * g[m][c];
  return four_vector(d);
}

SpacetimeMap ExternalField::potential_map() const {
  return [self = *this](const Biquaternion& x) { return self.potential(x); };
}

SpacetimeMap ExternalField::field_map() const {
  return [self = *this](const Biquaternion& x) { return self.field(x); };
}

// ---------------------------------------------------------------------------

Biquaternion shifted(const Biquaternion& x, int mu, double h) {
  if (mu == 0) return x + Biquaternion(h);
  CVec3 v{};
  v[mu - 1] = -kI * h;
  return x + Biquaternion::vector(v);
}

namespace {

Biquaternion derivative4(const SpacetimeMap& f, const Biquaternion& x, int mu, double h) {
  return (f(shifted(x, mu, -2 * h)) - f(shifted(x, mu, 2 * h)) + 8.0 * (f(shifted(x, mu, h)) - f(shifted(x, mu, -h)))) /
         (12.0 * h);
}

Biquaternion derivative2(const SpacetimeMap& f, const Biquaternion& x, int mu, double h) {
  return (f(shifted(x, mu, h)) - f(shifted(x, mu, -h))) / (2.0 * h);
}

// Quaternion coefficient of d_mu in grad (sign = +1) or conj(grad) (sign = -1).
Biquaternion grad_unit(int mu, double sign) {
  if (mu == 0) return Biquaternion(-kI);
  CVec3 v{};
  v[mu - 1] = sign;
  return Biquaternion::vector(v);
}

}  // namespace

Biquaternion conj_gradient_vect(const SpacetimeMap& a, const Biquaternion& x, double h) {
  Biquaternion sum;
  for (int mu = 0; mu < 4; ++mu) sum += grad_unit(mu, -1.0) * derivative4(a, x, mu, h);
  return Biquaternion::vector(sum.vec());
}

Complex lorenz_residual(const SpacetimeMap& a, const Biquaternion& x, double h) {
  Biquaternion sum;
  for (int mu = 0; mu < 4; ++mu) sum += grad_unit(mu, -1.0) * derivative4(a, x, mu, h);
  return sum.scalar();
}

Biquaternion grad_field(const SpacetimeMap& b, const Biquaternion& x, double h) {
  Biquaternion sum;
  for (int mu = 0; mu < 4; ++mu) sum += grad_unit(mu, +1.0) * derivative2(b, x, mu, h);
  return sum;
}

double check_regularity(const SpacetimeMap& b, std::span<const Biquaternion> samples, double h) {
  double worst = 0.0;
  for (const auto& x : samples) worst = std::max(worst, norm(grad_field(b, x, h)));
  return worst;
}

}  // namespace purefield
