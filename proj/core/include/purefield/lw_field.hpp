#pragma once

// Fields of a moving point singularity (Lienard-Wiechert) and of the
// external field families used to probe the interaction term.

#include <functional>
#include <span>
#include <string>
#include <variant>

#include "purefield/biquaternion.hpp"
#include "purefield/kinematics.hpp"

namespace purefield {

using SpacetimeMap = std::function<Biquaternion(const Biquaternion&)>;

class SingularityField {
 public:
  SingularityField(double charge, Worldline worldline, RetardedOptions opts = {})
      : charge_(charge), worldline_(std::move(worldline)), opts_(opts) {}

  double charge() const { return charge_; }
  const Worldline& worldline() const { return worldline_; }
  const RetardedOptions& retarded_options() const { return opts_; }

  /// e U / xi at the retarded point.
  Biquaternion potential(const Biquaternion& x) const;
  Biquaternion potential(const Biquaternion& x, const RetardedFrame& frame) const;

  /// Closed-form field E + i H: a 1/xi^2 velocity part plus a 1/xi
  /// radiation part.
  Biquaternion field(const Biquaternion& x) const;
  Biquaternion field(const Biquaternion& x, const RetardedFrame& frame) const;

  struct Parts {
    Biquaternion velocity;
    Biquaternion radiation;
  };
  Parts field_parts(const Biquaternion& x) const;

  SpacetimeMap potential_map() const;
  SpacetimeMap field_map() const;

 private:
  Parts parts(const Biquaternion& x, const RetardedFrame& frame) const;

  double charge_;
  Worldline worldline_;
  RetardedOptions opts_;
};

// ---------------------------------------------------------------------------

enum class ExternalFamily { kConstant, kPolynomialSlow, kPlaneWave, kDistantCharge };

std::string to_string(ExternalFamily f);

class ExternalField {
 public:
  /// a0 = (phi, Ax, Ay, Az).
  static ExternalField constant(const Real4& a0);
  /// A(X) = a0 (1 + eps (k_t t - k_vec . x)).
  static ExternalField polynomial_slow(const Real4& a0, double eps, const Real4& k);
  /// phi = 0, A_vec = amplitude * pol * cos(2 pi (t - k.x) / wavelength + phase).
  static ExternalField plane_wave(double amplitude, double wavelength, const Vec3& propagation,
                                  const Vec3& polarization, double phase = 0.0);
  /// Static Coulomb potential of charge q at `position`.
  static ExternalField distant_charge(double q, const Vec3& position);

  ExternalFamily family() const { return family_; }

  /// (phi, Ax, Ay, Az) at event x.
  Real4 components(const Real4& x) const;
  /// d/dx^mu of (phi, Ax, Ay, Az); outer index mu = t, x, y, z.
  std::array<Real4, 4> gradient(const Real4& x) const;

  Biquaternion potential(const Biquaternion& x) const;
  Biquaternion field(const Biquaternion& x) const;

  /// Proper-time derivative of the potential along the worldline,
  /// U^mu d_mu A at Z(tau), by the chain rule.
  Biquaternion proper_time_derivative(const Worldline& wl, double tau) const;

  SpacetimeMap potential_map() const;
  SpacetimeMap field_map() const;

 private:
  struct Constant { Real4 a0; };
  struct PolySlow { Real4 a0; double eps; Real4 k; };
  struct PlaneWave { double amplitude; double omega; Vec3 khat; Vec3 pol; double phase; };
  struct Charge { double q; Vec3 pos; };

  ExternalFamily family_;
  std::variant<Constant, PolySlow, PlaneWave, Charge> params_;

  ExternalField(ExternalFamily f, std::variant<Constant, PolySlow, PlaneWave, Charge> p)
      : family_(f), params_(std::move(p)) {}
};

// ---------------------------------------------------------------------------
// Finite-difference cross-checks.

/// vect(conj(grad), A) by fourth-order central differences with step h.
Biquaternion conj_gradient_vect(const SpacetimeMap& a, const Biquaternion& x, double h);

/// scal(conj(grad) A), the Lorenz-gauge residual, fourth-order differences.
Complex lorenz_residual(const SpacetimeMap& a, const Biquaternion& x, double h);

/// grad B with grad = d/d(ict) + grad_vec, second-order central differences.
Biquaternion grad_field(const SpacetimeMap& b, const Biquaternion& x, double h);

/// Max over samples of |grad B| (second-order central differences).
double check_regularity(const SpacetimeMap& b, std::span<const Biquaternion> samples, double h);

/// Shift of the event x by h along coordinate mu (0 = t, 1..3 = x, y, z).
Biquaternion shifted(const Biquaternion& x, int mu, double h);

}  // namespace purefield
