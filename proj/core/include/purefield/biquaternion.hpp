#pragma once

// Complex-coefficient quaternions (biquaternions) and the spacetime
// conventions used across the library:
//
//   4-vector   X = t - i x           (c = 1, Gaussian units)
//   4-velocity U = gamma (1 - i beta)
//   potential  A = phi - i A_vec
//   6-vector   B = E + i H           (zero scalar part)
//
// With these conventions scal(conj(P) Q) is the Minkowski product of two
// 4-vectors with signature (+,-,-,-).

#include <array>
#include <complex>
#include <ostream>

namespace purefield {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

inline constexpr Complex kI{0.0, 1.0};

class Biquaternion {
 public:
  constexpr Biquaternion() = default;
  constexpr Biquaternion(Complex w) : w_(w) {}  // NOLINT(google-explicit-constructor)
  constexpr Biquaternion(double w) : w_(w) {}   // NOLINT(google-explicit-constructor)
  constexpr Biquaternion(Complex w, CVec3 v) : w_(w), v_(v) {}

  static constexpr Biquaternion vector(CVec3 v) { return {Complex{}, v}; }

  constexpr Complex scalar() const { return w_; }
  constexpr const CVec3& vec() const { return v_; }
  constexpr Complex operator[](int k) const { return k == 0 ? w_ : v_[k - 1]; }

  constexpr Biquaternion conj() const { return {w_, {-v_[0], -v_[1], -v_[2]}}; }

  Biquaternion& operator+=(const Biquaternion& o) {
    w_ += o.w_;
    for (int k = 0; k < 3; ++k) v_[k] += o.v_[k];
    return *this;
  }
  Biquaternion& operator-=(const Biquaternion& o) {
    w_ -= o.w_;
    for (int k = 0; k < 3; ++k) v_[k] -= o.v_[k];
    return *this;
  }
  Biquaternion& operator*=(Complex s) {
    w_ *= s;
    for (auto& c : v_) c *= s;
    return *this;
  }

  friend Biquaternion operator+(Biquaternion a, const Biquaternion& b) { return a += b; }
  friend Biquaternion operator-(Biquaternion a, const Biquaternion& b) { return a -= b; }
  friend Biquaternion operator-(Biquaternion a) { return a *= -1.0; }
  friend Biquaternion operator*(Biquaternion a, Complex s) { return a *= s; }
  friend Biquaternion operator*(Complex s, Biquaternion a) { return a *= s; }
  friend Biquaternion operator*(Biquaternion a, double s) { return a *= Complex(s); }
  friend Biquaternion operator*(double s, Biquaternion a) { return a *= Complex(s); }
  friend Biquaternion operator/(Biquaternion a, double s) { return a *= Complex(1.0 / s); }

  // Hamilton product: (a + u)(b + v) = ab - u.v + a v + b u + u x v.
  friend Biquaternion operator*(const Biquaternion& p, const Biquaternion& q) {
    const auto& u = p.v_;
    const auto& v = q.v_;
    Complex w = p.w_ * q.w_ - (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]);
    CVec3 r{p.w_ * v[0] + q.w_ * u[0] + (u[1] * v[2] - u[2] * v[1]),
            p.w_ * v[1] + q.w_ * u[1] + (u[2] * v[0] - u[0] * v[2]),
            p.w_ * v[2] + q.w_ * u[2] + (u[0] * v[1] - u[1] * v[0])};
    return {w, r};
  }

  friend bool operator==(const Biquaternion&, const Biquaternion&) = default;

 private:
  Complex w_{};
  CVec3 v_{};
};

inline Biquaternion mul(const Biquaternion& p, const Biquaternion& q) { return p * q; }
inline Biquaternion conj(const Biquaternion& q) { return q.conj(); }
inline Complex scal(const Biquaternion& q) { return q.scalar(); }

/// Vector part of the product p q; the scalar part is dropped.
inline Biquaternion vect(const Biquaternion& p, const Biquaternion& q) {
  return Biquaternion::vector((p * q).vec());
}

/// Componentwise real part of every coefficient.
inline Biquaternion realpart(const Biquaternion& q) {
  const auto& v = q.vec();
  return {q.scalar().real(), {v[0].real(), v[1].real(), v[2].real()}};
}

/// Euclidean norm over the eight real coefficients.
inline double norm(const Biquaternion& q) {
  double s = std::norm(q.scalar());
  for (const auto& c : q.vec()) s += std::norm(c);
  return std::sqrt(s);
}

inline std::ostream& operator<<(std::ostream& os, const Biquaternion& q) {
  const auto& v = q.vec();
  return os << '[' << q.scalar() << "; " << v[0] << ", " << v[1] << ", " << v[2] << ']';
}

// ---------------------------------------------------------------------------
// Real spacetime views.

/// Real 4-vector components (t, x, y, z).
using Real4 = std::array<double, 4>;

/// Builds the biquaternion t - i x for a real event or 4-vector.
inline Biquaternion four_vector(double t, const Vec3& x) {
  return {Complex(t), {-kI * x[0], -kI * x[1], -kI * x[2]}};
}
inline Biquaternion four_vector(const Real4& x) { return four_vector(x[0], {x[1], x[2], x[3]}); }

/// Inverse of four_vector; ignores any non-4-vector content.
inline Real4 components(const Biquaternion& q) {
  const auto& v = q.vec();
  return {q.scalar().real(), -v[0].imag(), -v[1].imag(), -v[2].imag()};
}

/// E + i H.
inline Biquaternion six_vector(const Vec3& e, const Vec3& h) {
  return Biquaternion::vector({Complex(e[0], h[0]), Complex(e[1], h[1]), Complex(e[2], h[2])});
}
inline Vec3 electric(const Biquaternion& b) {
  const auto& v = b.vec();
  return {v[0].real(), v[1].real(), v[2].real()};
}
inline Vec3 magnetic(const Biquaternion& b) {
  const auto& v = b.vec();
  return {v[0].imag(), v[1].imag(), v[2].imag()};
}

/// Minkowski product (+,-,-,-) of real 4-vectors.
inline double minkowski(const Real4& a, const Real4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }
inline Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace purefield
