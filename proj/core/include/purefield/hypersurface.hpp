#pragma once

// Directed 3-surface elements and surface quadrature on the proper tube of
// constant retarded distance and on the light cones that close it.
//
// Element convention: for a patch X(u1, u2, u3) with tangents T_a, the
// covector n_mu = d det(V, T1, T2, T3) / dV^mu is mapped to
//
//     N = -i n_t + n_vec,
//
// the same quaternion form as the 4-gradient, so that
// scal(conj(V) N) = -i det(V, T1, T2, T3) and the boundary integral of
// Re scal(conj(a) N b) equals the 4-volume integral of its divergence.

#include <array>
#include <functional>
#include <optional>

#include "purefield/biquaternion.hpp"
#include "purefield/kinematics.hpp"
#include "purefield/lw_field.hpp"
#include "purefield/quadrature.hpp"

namespace purefield {

enum class PatchKind { kTube, kCone, kFlatSlab };

// Orientation constants relative to the natural parameter order
// (tau, cos theta, phi) for tubes and (xi, cos theta, phi) for cones.
// Pinned by the Gauss check in the test suite.
inline constexpr int kTubeOutward = +1;
inline constexpr int kConeFuture = -1;
inline constexpr int kConePast = +1;

struct SurfacePatch {
  PatchKind kind = PatchKind::kTube;
  std::optional<Worldline> worldline;  // tube / cone
  double xi = 1.0;                     // tube radius
  double tau_lo = 0.0, tau_hi = 1.0;   // tube proper-time range
  double tau_end = 0.0;                // cone apex proper time
  double xi_lo = 0.0, xi_hi = 1.0;     // cone radial range
  double t0 = 0.0;                     // flat slab time
  Vec3 box_lo{}, box_hi{};             // flat slab extent
  int orientation = +1;
};

SurfacePatch make_tube(const Worldline& wl, double xi2, double tau1, double tau2, int orientation = kTubeOutward);
SurfacePatch make_cone(const Worldline& wl, double tau_end, double xi1, double xi2, int orientation = kConeFuture);
SurfacePatch make_flat_slab(double t0, const Vec3& lo, const Vec3& hi, int orientation = +1);

/// Point on a patch with its retarded coordinates when known by construction.
struct SurfacePoint {
  Biquaternion x;
  double tau = 0.0;  // retarded proper time (tube, cone)
  std::optional<RetardedFrame> frame;
};

struct SurfaceElement {
  SurfacePoint point;
  Biquaternion element;          // N, orientation applied
  double jacobian = 0.0;         // Euclidean norm of n_mu
  std::array<Real4, 3> tangents; // dX/du_a
};

/// u = (tau | xi | x, cos theta | y, phi | z). Throws DegenerateTangents
/// when the tangents are linearly dependent (e.g. the cone apex).
SurfaceElement element_at(const SurfacePatch& patch, const std::array<double, 3>& u);

/// Point map of the patch (no tangents).
SurfacePoint point_at(const SurfacePatch& patch, const std::array<double, 3>& u);

/// n_mu = d det(V, T1, T2, T3) / dV^mu.
Real4 dual_covector(const std::array<Real4, 3>& t);
double det4(const std::array<Real4, 4>& cols);

using SurfaceMap = std::function<Biquaternion(const SurfacePoint&)>;

/// Adapts a spacetime field to a surface integrand.
SurfaceMap on_surface(SpacetimeMap f);
/// LW potential / field using the retarded frame known on the patch
/// (falls back to retarded_solve when absent).
SurfaceMap lw_potential_on_surface(const SingularityField& field);
SurfaceMap lw_field_on_surface(const SingularityField& field);

struct SurfaceQuadrature {
  int n_theta = 24;
  int n_phi = 48;
  AdaptiveOptions outer{1e-14, 1e-12, 400, true};
  /// Coarse sphere rule for the angular error estimate, as a fraction of
  /// the fine orders.
  double coarse_fraction = 2.0 / 3.0;
  /// Flat slab only: Gauss-Legendre order per axis.
  int slab_order = 8;
};

struct SurfaceIntegral {
  double value = 0.0;
  double error = 0.0;
};

/// Re of the quadrature sum of scal(conj(a) N b) over the patch.
SurfaceIntegral surface_integral(const SurfacePatch& patch, const SurfaceMap& a, const SurfaceMap& b,
                                 const SurfaceQuadrature& q = {});

// ---------------------------------------------------------------------------

struct GaussRegion {
  Worldline worldline = Worldline::rest();
  double xi2 = 1.0;
  double tau1 = 0.0;
  double tau2 = 1.0;
  /// Orientation multipliers for (tube, cone at tau1, cone at tau2).
  std::array<int, 3> orientation{kTubeOutward, kConePast, kConeFuture};
};

struct GaussOptions {
  SurfaceQuadrature surface{};
  int volume_tau = 10;
  int volume_xi = 12;
  int volume_theta = 12;
  int volume_phi = 24;
  double fd_step = 1e-3;
};

struct GaussCheck {
  double tube = 0.0;
  double cone_start = 0.0;
  double cone_end = 0.0;
  double surface = 0.0;
  double volume = 0.0;
  double residual = 0.0;  // |surface - volume|
  double relative = 0.0;  // residual / max(|volume|, sum of |patch|)
};

/// Closed tube + cones integral of Re scal(conj(a) N b) against the 4-volume
/// integral of its divergence, in retarded coordinates.
GaussCheck gauss_check(const SpacetimeMap& a, const SpacetimeMap& b, const GaussRegion& region,
                       const GaussOptions& opts = {});

}  // namespace purefield
