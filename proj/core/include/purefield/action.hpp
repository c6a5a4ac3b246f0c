#pragma once

// Terms of the action integral assembled from surface integrals over the
// proper tube and its end cones, with their closed-form counterparts.

#include <array>
#include <numbers>
#include <optional>
#include <vector>

#include "purefield/hypersurface.hpp"
#include "purefield/lw_field.hpp"

namespace purefield {

inline constexpr double kSelfPrefactor = 1.0 / (8.0 * std::numbers::pi);
inline constexpr double kCrossPrefactor = 1.0 / (4.0 * std::numbers::pi);

struct ActionOptions {
  SurfaceQuadrature surface{};
  RetardedOptions retarded{};
  AdaptiveOptions line{1e-15, 1e-13, 400, true};
  /// Default inner cone radius as a fraction of xi2 for the mass term.
  double xi1_fraction = 1e-3;
  /// Slow-variation ratios above this raise ConditionViolated.
  double slow_threshold = 0.01;
  bool enforce_slow_variation = true;
  /// Components with max |A_e| below this are excluded from the ratios.
  double component_floor = 1e-12;
  int ratio_tau_samples = 9;
  int ratio_theta = 4;
  int ratio_phi = 8;
  /// Gauss-Legendre order per axis for the external field term.
  int box_order = 8;
};

struct MassTerm {
  double numeric = 0.0;
  double analytic = 0.0;
  double error = 0.0;
  double tube = 0.0;        // with prefactor
  double cone_start = 0.0;  // boundary orientation at tau1
  double cone_end = 0.0;    // boundary orientation at tau2
};

/// -e^2 (tau2 - tau1) / (2 xi2) from the tube and the two closing cones.
/// xi1 <= 0 selects xi1_fraction * xi2.
MassTerm mass_term(const Worldline& wl, double e, double xi2, double tau1, double tau2,
                   const ActionOptions& opts = {}, double xi1 = 0.0);

struct ConeSelfTerms {
  double cone1 = 0.0;  // cone at tau1
  double cone2 = 0.0;  // cone at tau2, same orientation as cone1
  double difference = 0.0;
  double reference = 0.0;  // e^2 ln(xi2 / xi1)
  double error = 0.0;
};

/// Both cones carry the orientation of the upper boundary (kConeFuture)
/// so the two values are directly comparable.
ConeSelfTerms cone_self_cancellation(const Worldline& wl, double e, double xi1, double xi2, double tau1, double tau2,
                                     const ActionOptions& opts = {});

struct InteractionTube {
  double numeric = 0.0;
  double analytic = 0.0;           // -e int (A_e . U + xi2 A_e . dU/dtau)
  double analytic_no_accel = 0.0;  // -e int A_e . U
  double error = 0.0;
};

InteractionTube interaction_tube(const Worldline& wl, double e, const ExternalField& ext, double xi2, double tau1,
                                 double tau2, const ActionOptions& opts = {});

struct InteractionCones {
  double numeric = 0.0;
  double analytic = 0.0;  // e (xi2 - xi1) [A_e . U] from tau1 to tau2
  double error = 0.0;
};

InteractionCones interaction_cones(const Worldline& wl, double e, const ExternalField& ext, double xi1, double xi2,
                                   double tau1, double tau2, const ActionOptions& opts = {});

struct SlowVariation {
  /// xi2 max|d A_c / d x^n| / max|A_c| maximised over components c, per
  /// coordinate n = t, x, y, z.
  Real4 ratios{};
  double max_ratio = 0.0;
  /// Components excluded because max |A_c| fell below the floor.
  std::vector<int> excluded;
  bool satisfied(double threshold) const { return max_ratio < threshold; }
};

SlowVariation slow_variation_ratios(const ExternalField& ext, const Worldline& wl, double xi2, double tau1,
                                    double tau2, const ActionOptions& opts = {});

struct InteractionTotal {
  double numeric = 0.0;
  double analytic_closed = 0.0;  // -e int (A_e - xi2 dA_e/dtau) . U
  double analytic_usual = 0.0;  // -e int A_e . U
  double error = 0.0;
  double tube = 0.0;
  double cones = 0.0;
  /// Same surfaces with A_e evaluated at the surface point itself.
  double pointwise = 0.0;
  double pointwise_error = 0.0;
  SlowVariation condition;
};

/// Throws ConditionViolated when enforce_slow_variation is set and a ratio
/// reaches slow_threshold.
InteractionTotal interaction_total(const Worldline& wl, double e, const ExternalField& ext, double xi2, double tau1,
                                   double tau2, const ActionOptions& opts = {});

struct MassAssignment {
  double mass = 0.0;
  double rest_energy = 0.0;  // m c^2
  double r_e = 0.0;          // e^2 / (m c^2)
  double xi2_over_re = 0.0;
};

MassAssignment assign_mass(double e, double xi2, double c = 1.0);

/// Electron in CGS units.
inline constexpr double kElectronCharge = 4.803204712570263e-10;  // esu
inline constexpr double kElectronMass = 9.1093837015e-28;         // g
inline constexpr double kSpeedOfLight = 2.99792458e10;            // cm/s

/// assign_mass with the electron's charge and xi2 chosen so the assigned
/// mass equals the electron mass. r_e in cm.
MassAssignment electron_assignment();

struct Box4 {
  double t0 = 0.0, t1 = 1.0;
  Vec3 lo{0, 0, 0}, hi{1, 1, 1};
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// (1/8 pi) times the 4-volume integral of Re scal(conj(B_e) B_e) over the box.
Estimate external_field_term(const ExternalField& ext, const Box4& box, int order = 8);

// ---------------------------------------------------------------------------

struct Scenario {
  Worldline worldline = Worldline::rest();
  double e = 1.0;
  double xi1 = 1e-3;
  double xi2 = 1.0;
  double tau1 = 0.0;
  double tau2 = 1.0;
  ExternalField external = ExternalField::constant({0, 0, 0, 0});
  std::optional<Box4> external_region;
};

struct ActionReport {
  MassTerm mass;
  ConeSelfTerms cone_self;
  InteractionTube tube;
  InteractionCones cones;
  InteractionTotal total;
  MassAssignment assigned;
  std::optional<Estimate> external_field;  // empty: not computed
  /// Rest family only: field energy inside and outside the proper sphere.
  std::optional<double> energy_inside;
  std::optional<double> energy_outside;
  double surface_action = 0.0;  // mass + interaction from surfaces
  double usual_action = 0.0;    // -m c^2 dtau - e int A_e . U with the assigned m
  double action_relative_difference = 0.0;
};

ActionReport assemble_report(const Scenario& s, const ActionOptions& opts = {});

}  // namespace purefield
