#pragma once

// Volume-form self-energy of a point singularity and Hadamard finite parts
// of radial integrals with power-law singularities at xi = 0.

#include <functional>
#include <optional>
#include <vector>

#include "purefield/lw_field.hpp"
#include "purefield/quadrature.hpp"

namespace purefield {

struct RadialIntegrand {
  std::function<double(double)> f;
  /// Powers p >= 1 of the c_p / xi^p terms to subtract at xi -> 0.
  std::vector<int> singular_orders;
  double lower = 0.0;
  double upper = 1.0;
  /// Known c_p (same order as singular_orders); checked against the fit.
  std::optional<std::vector<double>> coefficients;
};

struct FinitePartOptions {
  AdaptiveOptions quad{};
  /// Fit window [0, window_fraction * upper] for the local expansion.
  double window_fraction = 0.1;
  /// Extra polynomial degrees in the local fit beyond the singular order.
  int extra_degree = 10;
};

struct FinitePartResult {
  double value = 0.0;
  double error = 0.0;
  std::vector<double> coefficients;  // fitted c_p, aligned with singular_orders
};

/// Finite part of the integral of f over [lower, upper]. Equals the ordinary
/// integral when lower > 0 or no singular orders are declared (and f is
/// integrable). Throws SingularMismatch when the subtracted remainder is
/// still non-integrable at 0, InvalidInterval on a bad domain.
FinitePartResult hadamard_finite_part(const RadialIntegrand& integrand, const FinitePartOptions& opts = {});

/// Finite part over (-half_width, half_width) of an even integrand with
/// singular orders at 0: twice the one-sided finite part.
FinitePartResult hadamard_finite_part_symmetric(const std::function<double(double)>& even_f,
                                                std::vector<int> singular_orders, double half_width,
                                                const FinitePartOptions& opts = {});

// ---------------------------------------------------------------------------

struct VolumeOptions {
  AdaptiveOptions quad{1e-14, 1e-12, 4000, true};
  int sphere_theta = 8;
  int sphere_phi = 16;
};

/// Field-energy density per unit radius in the rest frame:
/// (1/8 pi) xi^2 * sphere integral of Re scal(conj(B) B). Rest worldline only.
double self_energy_density(const SingularityField& field, double xi, const VolumeOptions& opts = {});

/// Re (1/8 pi) of the rest-frame volume integral of conj(B) B over the shell
/// xi1 < xi < xi2 (xi2 may be +infinity), per unit proper time.
QuadResult volume_self_energy(const SingularityField& field, double xi1, double xi2, const VolumeOptions& opts = {});

/// e^2 (1/(2 xi1) - 1/(2 xi2)).
double volume_self_energy_closed_form(double charge, double xi1, double xi2);

/// Self-energy radial integrand with its declared 1/xi^2 singularity.
RadialIntegrand self_energy_integrand(const SingularityField& field, double xi2, const VolumeOptions& opts = {});

}  // namespace purefield
