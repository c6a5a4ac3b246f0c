#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <purefield/errors.hpp>
#include <purefield/hypersurface.hpp>
#include <purefield/lw_field.hpp>

using namespace purefield;

namespace {

// E = -grad phi - dA/dt, H = curl A from central differences of the real
// potential components.
Biquaternion fd_field(const std::function<Real4(const Real4&)>& a, const Real4& x, double h) {
  std::array<Real4, 4> d{};
  for (int m = 0; m < 4; ++m) {
    Real4 p = x, q = x;
    p[m] += h;
    q[m] -= h;
    const Real4 ap = a(p), aq = a(q);
    for (int c = 0; c < 4; ++c) d[m][c] = (ap[c] - aq[c]) / (2 * h);
  }
  return six_vector({-d[1][0] - d[0][1], -d[2][0] - d[0][2], -d[3][0] - d[0][3]},
                    {d[2][3] - d[3][2], d[3][1] - d[1][3], d[1][2] - d[2][1]});
}

std::vector<Worldline> families() {
  return {Worldline::rest(), Worldline::uniform({0.6, 0.0, 0.0}), Worldline::hyperbolic(0.1),
          Worldline::hyperbolic(0.5, {0, 0, 1}), Worldline::circular(0.5, 0.8)};
}

std::vector<ExternalField> externals() {
  return {ExternalField::constant({1.0, 0.3, -0.2, 0.1}),
          ExternalField::polynomial_slow({1.0, 0.2, 0.0, -0.1}, 1e-2, {1.0, 0.5, -0.3, 0.2}),
          ExternalField::plane_wave(0.7, 3.0, {0, 1, 1}, {1, 0, 0}, 0.4),
          ExternalField::distant_charge(2.0, {10.0, -5.0, 3.0})};
}

}  // namespace

TEST(SingularityField, StaticCoulomb) {
  const SingularityField f(1.0, Worldline::rest());
  const Biquaternion x = four_vector(7.0, {0.0, 2.0, 0.0});
  const Biquaternion a = f.potential(x);
  EXPECT_NEAR(a.scalar().real(), 0.5, 1e-15);
  EXPECT_LT(norm(Biquaternion::vector(a.vec())), 1e-15);
  const Biquaternion b = f.field(x);
  EXPECT_NEAR(electric(b)[1], 0.25, 1e-15);
  EXPECT_NEAR(norm3(magnetic(b)), 0.0, 1e-15);
  EXPECT_NEAR(scal(conj(b) * b).real(), 1.0 / 16.0, 1e-15);
}

TEST(SingularityField, ZeroCharge) {
  const SingularityField f(0.0, Worldline::hyperbolic(0.3));
  const Biquaternion x = four_vector(2.0, {1.0, 1.0, 0.0});
  EXPECT_EQ(norm(f.potential(x)), 0.0);
  EXPECT_EQ(norm(f.field(x)), 0.0);
}

TEST(SingularityField, BoostedCoulomb) {
  const double beta = 0.6, gamma = 1.25, e = 1.5;
  const SingularityField f(e, Worldline::uniform({beta, 0, 0}));
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const Real4 x{d(rng), d(rng), d(rng), d(rng)};
    // Rest-frame Coulomb solution, Lorentz-transformed to the lab.
    const Vec3 xr{gamma * (x[1] - beta * x[0]), x[2], x[3]};
    const double r = norm3(xr);
    const double phi_r = e / r;
    const Vec3 er{e * xr[0] / (r * r * r), e * xr[1] / (r * r * r), e * xr[2] / (r * r * r)};
    const Vec3 el{er[0], gamma * er[1], gamma * er[2]};
    const Vec3 hl = cross3({beta, 0, 0}, el);

    const Real4 a = components(f.potential(four_vector(x)));
    EXPECT_NEAR(a[0], gamma * phi_r, 1e-12 * std::abs(phi_r));
    EXPECT_NEAR(a[1], gamma * beta * phi_r, 1e-12 * std::abs(phi_r));
    const Biquaternion b = f.field(four_vector(x));
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(electric(b)[k], el[k], 1e-11 * norm3(el));
      EXPECT_NEAR(magnetic(b)[k], hl[k], 1e-11 * norm3(el));
    }
  }
}

TEST(SingularityField, FieldMatchesGradientOfPotential) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (const auto& wl : families()) {
    const SingularityField f(1.0, wl);
    auto a = [&](const Real4& x) { return components(f.potential(four_vector(x))); };
    for (int i = 0; i < 10; ++i) {
      const double tau = d(rng);
      const Biquaternion x = tube_point(wl, tau, direction(0.5 * d(rng), 1.5 * d(rng)), 0.5 + 0.2 * d(rng));
      const Biquaternion exact = f.field(x);
      const Biquaternion fd = fd_field(a, components(x), 1e-4);
      EXPECT_LT(norm(fd - exact), 1e-6 * norm(exact)) << to_string(wl.family());
      EXPECT_EQ(scal(exact), Complex(0.0));
      // Library cross-check route.
      EXPECT_LT(norm(conj_gradient_vect(f.potential_map(), x, 1e-3) - exact), 1e-6 * norm(exact))
          << to_string(wl.family());
      EXPECT_LT(std::abs(lorenz_residual(f.potential_map(), x, 1e-3)), 1e-6 * norm(exact));
    }
  }
}

TEST(SingularityField, FarZoneScaling) {
  const Worldline wl = Worldline::hyperbolic(0.1);
  const SingularityField f(1.0, wl);
  const Vec3 n = direction(0.2, 0.7);
  const double tau = 0.5;
  std::vector<double> rad, vel;
  for (double xi : {10.0, 100.0, 1000.0}) {
    const auto p = f.field_parts(tube_point(wl, tau, n, xi));
    rad.push_back(norm(p.radiation) * xi);
    vel.push_back(norm(p.velocity) * xi * xi);
  }
  EXPECT_GT(rad[0], 0.0);
  EXPECT_NEAR(rad[1] / rad[0], 1.0, 1e-8);
  EXPECT_NEAR(rad[2] / rad[0], 1.0, 1e-8);
  EXPECT_NEAR(vel[2] / vel[0], 1.0, 1e-8);
}

TEST(ExternalField, FieldMatchesGradientOfPotential) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (const auto& ext : externals()) {
    auto a = [&](const Real4& x) { return ext.components(x); };
    for (int i = 0; i < 10; ++i) {
      const Real4 x{d(rng), d(rng), d(rng), d(rng)};
      const Biquaternion exact = ext.field(four_vector(x));
      const Biquaternion fd = fd_field(a, x, 1e-4);
      EXPECT_LT(norm(fd - exact), 1e-6 * std::max(norm(exact), 1e-3)) << to_string(ext.family());
    }
  }
}

TEST(ExternalField, ProperTimeDerivativeByChainRule) {
  const Worldline wl = Worldline::circular(0.5, 0.8);
  for (const auto& ext : externals()) {
    for (double tau : {-0.7, 0.3, 1.9}) {
      const double h = 1e-4;
      const Real4 p = ext.components(wl.z(tau + h)), m = ext.components(wl.z(tau - h));
      const Real4 d = components(ext.proper_time_derivative(wl, tau));
      for (int c = 0; c < 4; ++c) EXPECT_NEAR(d[c], (p[c] - m[c]) / (2 * h), 1e-7) << to_string(ext.family());
    }
  }
}

TEST(ExternalField, PlaneWaveIsNull) {
  const ExternalField w = ExternalField::plane_wave(1.3, 2.0, {1, 1, 0}, {0, 0, 1}, 0.2);
  const Biquaternion b = w.field(four_vector(0.4, {0.1, -0.3, 0.8}));
  EXPECT_NEAR(norm3(electric(b)), norm3(magnetic(b)), 1e-14);
  EXPECT_NEAR(dot3(electric(b), magnetic(b)), 0.0, 1e-14);
  EXPECT_THROW(ExternalField::plane_wave(1.0, 2.0, {1, 0, 0}, {2, 0, 0}), DomainError);
}

TEST(Regularity, SourceFreeFieldsAreHomogeneousSolutions) {
  const std::vector<Biquaternion> samples{four_vector(1.0, {2.0, 0.5, -0.3}), four_vector(-0.5, {0.0, 1.5, 1.0}),
                                          four_vector(3.0, {-1.0, -1.0, 2.0})};
  EXPECT_LT(check_regularity(SingularityField(1.0, Worldline::rest()).field_map(), samples, 1e-3), 1e-6);
  EXPECT_EQ(check_regularity(ExternalField::constant({1, 2, 3, 4}).field_map(), samples, 1e-3), 0.0);
  EXPECT_LT(check_regularity(ExternalField::plane_wave(1.0, 5.0, {0, 0, 1}, {1, 0, 0}).field_map(), samples, 1e-3),
            1e-6);
}

TEST(Regularity, ResidualConvergesAtSecondOrder) {
  const Worldline wl = Worldline::hyperbolic(0.3);
  const SingularityField f(1.0, wl);
  const std::vector<Biquaternion> samples{tube_point(wl, 0.2, direction(0.3, 0.4), 0.8),
                                          tube_point(wl, 1.0, direction(-0.6, 2.0), 0.6)};
  const double r1 = check_regularity(f.field_map(), samples, 2e-2);
  const double r2 = check_regularity(f.field_map(), samples, 1e-2);
  const double r3 = check_regularity(f.field_map(), samples, 5e-3);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.1);
  EXPECT_NEAR(std::log2(r2 / r3), 2.0, 0.1);
}
