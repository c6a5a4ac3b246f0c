#include "purefield/finite_part.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "purefield/errors.hpp"

namespace purefield {
namespace {

// Finite part of the integral of xi^(-p) over [0, b].
double template_finite_part(int p, double b) {
  if (p == 1) return std::log(b);
  return std::pow(b, 1 - p) / (1 - p);
}

// Chebyshev interpolant of g(xi) = xi^P f(xi) on [0, h], variable s = 2 xi / h - 1.
struct LocalFit {
  std::vector<double> a;  // Chebyshev coefficients
  double h = 0.0;

  double operator()(double xi) const {
    const double s = 2.0 * xi / h - 1.0;
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
      const double b0 = a[k] + 2.0 * s * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return a[0] + s * b1 - b2;
  }

  // Taylor coefficient of xi^j at 0, from T_k^(j)(-1).
  double taylor(int j) const {
    double sum = 0.0;
    for (int k = 0; k < static_cast<int>(a.size()); ++k) {
      double d = 1.0;
      for (int i = 0; i < j; ++i) d *= (static_cast<double>(k) * k - static_cast<double>(i) * i) / (2.0 * i + 1.0);
      sum += a[k] * d * (((k + j) % 2 == 0) ? 1.0 : -1.0);
    }
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    return sum * std::pow(2.0 / h, j) / fact;
  }
};

// FP of the integral over [0, 1] of T*_k(t) t^-P, T*_k(t) = T_k(2t - 1).
std::vector<long double> chebyshev_moments(int degree, int order) {
  std::vector<std::vector<long double>> t{{1.0L}, {-1.0L, 2.0L}};
  while (static_cast<int>(t.size()) <= degree) {
    const auto& a = t[t.size() - 1];
    const auto& b = t[t.size() - 2];
    std::vector<long double> c(a.size() + 1, 0.0L);
    for (std::size_t j = 0; j < a.size(); ++j) {
      c[j + 1] += 4.0L * a[j];
      c[j] -= 2.0L * a[j];
    }
    for (std::size_t j = 0; j < b.size(); ++j) c[j] -= b[j];
    t.push_back(std::move(c));
  }
  std::vector<long double> m(degree + 1, 0.0L);
  for (int k = 0; k <= degree; ++k)
    for (std::size_t j = 0; j < t[k].size(); ++j) {
      const int p = static_cast<int>(j) - order;
      if (p != -1) m[k] += t[k][j] / (p + 1);
    }
  return m;
}

LocalFit local_fit(const std::function<double(double)>& f, int max_order, double h, int degree) {
  const int m = degree + 1;
  Eigen::MatrixXd v(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const double s = -std::cos((i + 0.5) * std::numbers::pi / m);
    const double xi = 0.5 * h * (s + 1.0);
    rhs(i) = std::pow(xi, max_order) * f(xi);
    for (int k = 0; k < m; ++k) v(i, k) = std::cos(k * std::acos(s));
  }
  const Eigen::VectorXd sol = v.colPivHouseholderQr().solve(rhs);
  return {std::vector<double>(sol.data(), sol.data() + m), h};
}

}  // namespace

FinitePartResult hadamard_finite_part(const RadialIntegrand& in, const FinitePartOptions& opts) {
  if (!(in.upper > in.lower) || in.lower < 0.0 || !std::isfinite(in.upper))
    throw InvalidInterval("finite part requires 0 <= lower < upper < infinity");

  const bool singular = in.lower == 0.0 && !in.singular_orders.empty();
  if (!singular) {
    if (in.lower == 0.0) {
      // Regular claim: the integrand must not blow up like 1/xi or worse.
      const double x7 = in.upper * 1e-7;
      const double x5 = in.upper * 1e-5;
      const double m7 = x7 * std::abs(in.f(x7));
      const double m5 = x5 * std::abs(in.f(x5));
      const double scale =
          in.upper * std::max(std::abs(in.f(in.upper)), std::abs(in.f(0.5 * in.upper))) + 1e-300;
      if (m7 > 1e-4 * scale && m7 >= 0.5 * m5) throw SingularMismatch("integrand declared regular diverges at 0");
    }
    const QuadResult r = integrate_adaptive(in.f, in.lower, in.upper, opts.quad);
    return {r.value, r.error, {}};
  }

  const int order = *std::max_element(in.singular_orders.begin(), in.singular_orders.end());
  if (*std::min_element(in.singular_orders.begin(), in.singular_orders.end()) < 1)
    throw SingularMismatch("singular orders must be >= 1");

  const double h = opts.window_fraction * in.upper;
  const LocalFit fit = local_fit(in.f, order, h, order + opts.extra_degree);
  std::vector<double> b(order);  // b_j, coefficient of xi^(j - P) in f
  for (int j = 0; j < order; ++j) b[j] = fit.taylor(j);
  double gscale = 0.0;
  for (double c : fit.a) gscale += std::abs(c);

  // c_p is the coefficient of xi^(P - p) in g.
  std::vector<double> coeff;
  for (int p : in.singular_orders) coeff.push_back(b[order - p]);
  if (in.coefficients) {
    if (in.coefficients->size() != in.singular_orders.size())
      throw SingularMismatch("coefficient list does not match singular orders");
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      const double known = (*in.coefficients)[i];
      if (std::abs(known - coeff[i]) > 1e-6 * std::max(1.0, std::abs(known))) {
        std::ostringstream msg;
        msg << "declared coefficient of xi^-" << in.singular_orders[i] << " is " << known
            << " but the local expansion gives " << coeff[i];
        throw SingularMismatch(msg.str());
      }
    }
    coeff = *in.coefficients;
  }

  // Terms of the expansion that were not declared must be integrable.
  for (int p = 1; p <= order; ++p) {
    if (std::find(in.singular_orders.begin(), in.singular_orders.end(), p) != in.singular_orders.end()) continue;
    const double c = b[order - p];
    if (std::abs(c) * std::pow(h, order - p) > 1e-8 * (gscale + 1e-300)) {
      std::ostringstream msg;
      msg << "undeclared xi^-" << p << " term with coefficient " << c;
      throw SingularMismatch(msg.str());
    }
  }

  auto tmpl = [&](double xi) {
    double s = 0.0;
    for (std::size_t i = 0; i < coeff.size(); ++i) s += coeff[i] * std::pow(xi, -in.singular_orders[i]);
    return s;
  };

  // Divergence check of the subtracted remainder under refinement toward 0.
  {
    auto remainder = [&](double xi) { return in.f(xi) - tmpl(xi); };
    double prev = std::numeric_limits<double>::infinity();
    bool shrinking = true;
    double last = 0.0;
    for (int k = 3; k <= 6; ++k) {
      const double x = in.upper * std::pow(10.0, -k);
      last = x * std::abs(remainder(x));
      if (last > prev * 1.5) shrinking = false;
      prev = last;
    }
    double scale = in.upper * std::abs(in.f(in.upper));
    for (std::size_t i = 0; i < coeff.size(); ++i)
      scale += std::abs(coeff[i]) * std::pow(in.upper, 1 - in.singular_orders[i]);
    if (!shrinking && last > 1e-6 * (scale + 1e-300))
      throw SingularMismatch("remainder after template subtraction still diverges at 0");
  }

  // [0, h]: finite-part moments of the interpolant, then the declared
  // coefficients replace the fitted ones in the template.
  double near = 0.0;
  {
    const std::vector<long double> m = chebyshev_moments(static_cast<int>(fit.a.size()) - 1, order);
    long double sum = 0.0L;
    for (std::size_t k = 0; k < fit.a.size(); ++k) sum += static_cast<long double>(fit.a[k]) * m[k];
    // The scaled moments drop c_1 ln h; an undeclared 1/xi term was checked
    // to be negligible and counts as zero.
    near = static_cast<double>(sum) * std::pow(h, 1 - order);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      const int p = in.singular_orders[i];
      near += p == 1 ? coeff[i] * std::log(h) : (coeff[i] - b[order - p]) * template_finite_part(p, h);
    }
  }
  // The tolerance follows the size of the finite part, not of the divergent
  // integral over [h, upper].
  double fp_scale = std::abs(near) + in.upper * std::abs(in.f(in.upper));
  for (std::size_t i = 0; i < coeff.size(); ++i)
    fp_scale += std::abs(coeff[i] * template_finite_part(in.singular_orders[i], in.upper));
  AdaptiveOptions quad = opts.quad;
  quad.abs_tol = std::max(quad.abs_tol, quad.rel_tol * fp_scale);
  quad.rel_tol = 0.0;
  const QuadResult far = integrate_adaptive(in.f, h, in.upper, quad);

  return {near + far.value, far.error, coeff};
}

FinitePartResult hadamard_finite_part_symmetric(const std::function<double(double)>& even_f,
                                                std::vector<int> singular_orders, double half_width,
                                                const FinitePartOptions& opts) {
  RadialIntegrand in{even_f, std::move(singular_orders), 0.0, half_width, std::nullopt};
  FinitePartResult r = hadamard_finite_part(in, opts);
  r.value *= 2.0;
  r.error *= 2.0;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void require_rest(const SingularityField& field) {
  if (field.worldline().family() != WorldlineFamily::kRest)
    throw DomainError("volume self-energy is evaluated in the rest frame; rest worldline required");
}

}  // namespace

double self_energy_density(const SingularityField& field, double xi, const VolumeOptions& opts) {
  require_rest(field);
  const SphereRule sphere(opts.sphere_theta, opts.sphere_phi);
  const Real4 z = field.worldline().z(0.0);
  std::vector<double> terms;
  terms.reserve(sphere.nodes().size());
  for (const auto& node : sphere.nodes()) {
    const Vec3 n = direction(node.cos_theta, node.phi);
    const Biquaternion x = four_vector(z[0], {z[1] + xi * n[0], z[2] + xi * n[1], z[3] + xi * n[2]});
    const Biquaternion b = field.field(x);
    terms.push_back(node.weight * scal(conj(b) * b).real());
  }
  return xi * xi * pairwise_sum(terms) / (8.0 * std::numbers::pi);
}

QuadResult volume_self_energy(const SingularityField& field, double xi1, double xi2, const VolumeOptions& opts) {
  require_rest(field);
  if (!(xi1 > 0.0) || !(xi2 > xi1)) throw InvalidInterval("volume self-energy requires 0 < xi1 < xi2");
  if (field.charge() == 0.0) return {};
  return integrate_adaptive([&](double xi) { return self_energy_density(field, xi, opts); }, xi1, xi2, opts.quad);
}

double volume_self_energy_closed_form(double charge, double xi1, double xi2) {
  const double inv2 = std::isinf(xi2) ? 0.0 : 1.0 / (2.0 * xi2);
  return charge * charge * (1.0 / (2.0 * xi1) - inv2);
}

RadialIntegrand self_energy_integrand(const SingularityField& field, double xi2, const VolumeOptions& opts) {
  require_rest(field);
  return {[field, opts](double xi) { return self_energy_density(field, xi, opts); }, {2}, 0.0, xi2, std::nullopt};
}

}  // namespace purefield
