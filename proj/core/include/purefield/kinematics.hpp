#pragma once

// Worldlines parameterized by proper time and the retarded-time solver.

#include <functional>
#include <limits>
#include <string>

#include "purefield/biquaternion.hpp"

namespace purefield {

enum class WorldlineFamily { kRest, kUniform, kHyperbolic, kCircular, kCustom };

std::string to_string(WorldlineFamily f);

/// Position, 4-velocity and 4-acceleration at one proper time, as real
/// (t, x, y, z) components.
struct WorldlineState {
  Real4 z;
  Real4 u;
  Real4 a;
};

class Worldline {
 public:
  using Map = std::function<Real4(double)>;

  static Worldline rest(const Vec3& x0 = {});
  /// |beta| < 1. Z(0) = (0, x0).
  static Worldline uniform(const Vec3& beta, const Vec3& x0 = {});
  /// Proper acceleration `accel` along `direction`, at rest at tau = 0.
  static Worldline hyperbolic(double accel, const Vec3& direction = {1, 0, 0}, const Vec3& x0 = {});
  /// Circle of `radius` in the xy-plane at lab angular velocity `omega`.
  static Worldline circular(double radius, double omega);
  static Worldline custom(Map position, Map velocity, Map acceleration,
                          double tau_min = -std::numeric_limits<double>::infinity(),
                          double tau_max = std::numeric_limits<double>::infinity());

  WorldlineFamily family() const { return family_; }
  double tau_min() const { return tau_min_; }
  double tau_max() const { return tau_max_; }

  Real4 z(double tau) const { return position_(tau); }
  Real4 u(double tau) const { return velocity_(tau); }
  Real4 a(double tau) const { return acceleration_(tau); }
  WorldlineState state(double tau) const { return {z(tau), u(tau), a(tau)}; }

  Biquaternion position(double tau) const { return four_vector(z(tau)); }
  Biquaternion velocity(double tau) const { return four_vector(u(tau)); }
  Biquaternion acceleration(double tau) const { return four_vector(a(tau)); }

 private:
  Worldline(WorldlineFamily family, Map z, Map u, Map a, double tau_min, double tau_max);

  WorldlineFamily family_;
  Map position_;
  Map velocity_;
  Map acceleration_;
  double tau_min_;
  double tau_max_;
};

struct RetardedFrame {
  double tau_r = 0.0;
  double xi = 0.0;   // retarded distance scal(conj(U) (X - Z))
  Vec3 nhat{};       // unit vector from the retarded position to the field point
  double R = 0.0;    // coordinate light distance |x - z(tau_r)|
};

struct RetardedOptions {
  double degenerate_eps = 1e-9;
  int max_iterations = 200;
};

/// Solves for the unique retarded proper time of the event x.
/// Throws DegeneratePoint when x lies within degenerate_eps of the
/// worldline and NoRetardedPoint when the past light cone of x misses the
/// worldline domain.
RetardedFrame retarded_solve(const Worldline& wl, const Real4& x, const RetardedOptions& opts = {});
RetardedFrame retarded_solve(const Worldline& wl, const Biquaternion& x, const RetardedOptions& opts = {});

/// Coordinate light distance R for retarded distance xi along lab direction
/// nhat from a worldline point with 4-velocity u: xi / (u_t - nhat . u_vec).
double light_distance(const Real4& u, const Vec3& nhat, double xi);

/// Event on the proper tube: Z(tau) + R (1 - i nhat), R = light_distance.
Biquaternion tube_point(const Worldline& wl, double tau, const Vec3& nhat, double xi2);

/// Event on the forward light cone of Z(tau_end) at retarded distance xi.
Biquaternion cone_point(const Worldline& wl, double tau_end, const Vec3& nhat, double xi);

/// Unit vector from (cos theta, phi).
Vec3 direction(double cos_theta, double phi);

}  // namespace purefield
