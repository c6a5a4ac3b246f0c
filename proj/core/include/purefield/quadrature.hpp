#pragma once

// Quadrature building blocks: Gauss-Legendre rules, a global adaptive
// Gauss-Kronrod (21-point) integrator with an error estimate, a product
// rule on the unit sphere, and a deterministic pairwise reduction.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace purefield {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  std::size_t max_panels = 2000;
  bool throw_on_failure = true;
};

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending. Cached.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// Fixed-order Gauss-Legendre on [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// Global adaptive Gauss-Kronrod 21 (bisect the panel with the largest
/// error). b may be +infinity; the tail is mapped onto (0, 1].
/// Throws NonConvergent when the panel budget runs out and
/// opts.throw_on_failure is set.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const AdaptiveOptions& opts = {});

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// periodic trapezoid rule in phi. Weights sum to 4 pi.
struct SphereNode {
  double cos_theta;
  double phi;
  double weight;
};
class SphereRule {
 public:
  SphereRule(int n_theta, int n_phi);
  std::span<const SphereNode> nodes() const { return nodes_; }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }

 private:
  int n_theta_;
  int n_phi_;
  std::vector<SphereNode> nodes_;
};

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace purefield
