#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <purefield/biquaternion.hpp>

using namespace purefield;

namespace {

// Independent model: w + v.e  ->  w I - i v.sigma in M2(C). Complex-linear
// algebra isomorphism, quaternion conjugation is the adjugate.
using M2 = Eigen::Matrix2cd;

M2 to_matrix(const Biquaternion& q) {
  const Complex w = q.scalar();
  const auto& v = q.vec();
  M2 m;
  m << w - kI * v[2], -kI * v[0] - v[1], -kI * v[0] + v[1], w + kI * v[2];
  return m;
}

Biquaternion from_matrix(const M2& m) {
  const Complex w = 0.5 * (m(0, 0) + m(1, 1));
  const Complex v3 = (m(0, 0) - m(1, 1)) / (-2.0 * kI);
  const Complex v1 = (m(0, 1) + m(1, 0)) / (-2.0 * kI);
  const Complex v2 = (m(1, 0) - m(0, 1)) / 2.0;
  return {w, {v1, v2, v3}};
}

Biquaternion random_q(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  auto c = [&] { return Complex(d(rng), d(rng)); };
  return {c(), {c(), c(), c()}};
}

double rel(const Biquaternion& a, const Biquaternion& b) {
  return norm(a - b) / std::max(1.0, std::max(norm(a), norm(b)));
}

const Biquaternion e1 = Biquaternion::vector({1.0, 0.0, 0.0});
const Biquaternion e2 = Biquaternion::vector({0.0, 1.0, 0.0});
const Biquaternion e3 = Biquaternion::vector({0.0, 0.0, 1.0});

}  // namespace

TEST(Biquaternion, UnitRelations) {
  EXPECT_EQ(e1 * e2, e3);
  EXPECT_EQ(e2 * e3, e1);
  EXPECT_EQ(e3 * e1, e2);
  EXPECT_EQ(e2 * e1, -e3);
  EXPECT_EQ(e1 * e1, Biquaternion(-1.0));
}

TEST(Biquaternion, IdentityElement) {
  std::mt19937_64 rng(7);
  const Biquaternion q = random_q(rng);
  EXPECT_EQ(q * Biquaternion(1.0), q);
  EXPECT_EQ(Biquaternion(1.0) * q, q);
}

TEST(Biquaternion, BoostFactorProduct) {
  const Biquaternion p{1.0, {kI * 0.6, 0.0, 0.0}};
  const Biquaternion q{1.0, {-kI * 0.6, 0.0, 0.0}};
  const Biquaternion r = p * q;
  EXPECT_NEAR(r.scalar().real(), 0.64, 1e-15);
  EXPECT_NEAR(r.scalar().imag(), 0.0, 1e-15);
  EXPECT_LT(norm(Biquaternion::vector(r.vec())), 1e-15);
}

TEST(Biquaternion, ProductMatchesMatrixModel) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Biquaternion p = random_q(rng), q = random_q(rng);
    EXPECT_LT(rel(p * q, from_matrix(to_matrix(p) * to_matrix(q))), 1e-14);
  }
}

TEST(Biquaternion, ConjugationMatchesAdjugate) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const Biquaternion q = random_q(rng);
    const M2 m = to_matrix(q);
    const M2 adj = m.trace() * M2::Identity() - m;
    EXPECT_LT(rel(conj(q), from_matrix(adj)), 1e-14);
  }
}

TEST(Biquaternion, ConjugationDoesNotConjugateCoefficients) {
  const Biquaternion q{Complex(2.0, 1.0), {Complex(0.0, 3.0), 1.0, Complex(1.0, -1.0)}};
  const Biquaternion c = conj(q);
  EXPECT_EQ(c.scalar(), Complex(2.0, 1.0));
  EXPECT_EQ(c.vec()[0], Complex(0.0, -3.0));
  EXPECT_EQ(conj(c), q);
}

TEST(Biquaternion, AlgebraProperties) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Biquaternion p = random_q(rng), q = random_q(rng), r = random_q(rng);
    EXPECT_LT(rel((p * q) * r, p * (q * r)), 1e-12);
    EXPECT_LT(rel(conj(p * q), conj(q) * conj(p)), 1e-12);
    EXPECT_LT(std::abs(scal(p * q) - scal(q * p)), 1e-12 * (1.0 + std::abs(scal(p * q))));
    EXPECT_LT(norm(Biquaternion::vector((conj(q) * q).vec())), 1e-12 * (1.0 + norm(q) * norm(q)));
    EXPECT_LT(rel(p * (q + r), p * q + p * r), 1e-12);
  }
}

TEST(Biquaternion, ProjectionsAndRealPart) {
  const Biquaternion q{3.0, {kI, 2.0, 0.0}};
  EXPECT_EQ(scal(q), Complex(3.0));
  EXPECT_EQ(realpart(Complex(3.0, 4.0)), Biquaternion(3.0));
  EXPECT_EQ(realpart(Biquaternion::vector({kI * 1.5, -kI * 2.0, kI})), Biquaternion());
  const Biquaternion v = Biquaternion::vector({1.0, 2.0, -1.0});
  EXPECT_EQ(vect(Biquaternion(1.0), v), v);
  EXPECT_EQ(vect(v, v), Biquaternion());
}

TEST(Biquaternion, SixVectorInvariant) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 e{d(rng), d(rng), d(rng)}, h{d(rng), d(rng), d(rng)};
    const Biquaternion b = six_vector(e, h);
    EXPECT_EQ(scal(b), Complex(0.0));
    const Complex s = scal(conj(b) * b);
    // Expanded by hand: (E + iH).(E + iH).
    EXPECT_NEAR(s.real(), dot3(e, e) - dot3(h, h), 1e-12);
    EXPECT_NEAR(s.imag(), 2.0 * dot3(e, h), 1e-12);
    EXPECT_EQ(realpart(scal(conj(b) * b)).scalar().real(), s.real());
  }
}

TEST(Biquaternion, FourVectorViews) {
  const double gamma = 1.25;
  const Biquaternion u = four_vector(gamma, {gamma * 0.6, 0.0, 0.0});
  EXPECT_NEAR(scal(conj(u) * u).real(), 1.0, 1e-15);
  EXPECT_NEAR(scal(conj(u) * u).imag(), 0.0, 1e-15);

  const Real4 a{1.0, 2.0, -3.0, 0.5}, b{-0.5, 1.0, 4.0, 2.0};
  EXPECT_NEAR(scal(conj(four_vector(a)) * four_vector(b)).real(), minkowski(a, b), 1e-14);
  EXPECT_EQ(components(four_vector(a)), a);
  const Biquaternion x = four_vector(5.0, {3.0, 0.0, 0.0});
  EXPECT_EQ(x.vec()[0], Complex(0.0, -3.0));
}
