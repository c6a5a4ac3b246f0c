#include "purefield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "purefield/errors.hpp"

namespace purefield {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct PanelByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

// One GK21 panel with the QUADPACK error heuristic.
Panel gk21(const std::function<double(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  fv[0] = f(center);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    fv[2 * j - 1] = f(center - half * xk[j]);
    fv[2 * j] = f(center + half * xk[j]);
  }
  double resk = wk[0] * fv[0];
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    const double pair = fv[2 * j - 1] + fv[2 * j];
    resk += wk[j] * pair;
    resabs += wk[j] * (std::abs(fv[2 * j - 1]) + std::abs(fv[2 * j]));
    // Gauss-10 nodes are the odd Kronrod abscissae.
    if (j % 2 == 1) resg += wg[j / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t j = 1; j < xk.size(); ++j)
    resasc += wk[j] * (std::abs(fv[2 * j - 1] - mean) + std::abs(fv[2 * j] - mean));

  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);
  return {a, b, resk, err};
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre rule;
  // legendre_p_zeros returns the non-negative zeros in ascending order.
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (x == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w);
    } else {
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  std::vector<std::size_t> idx(rule.nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return rule.nodes[i] < rule.nodes[j]; });
  GaussLegendre sorted;
  for (auto i : idx) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  return cache.emplace(n, std::move(sorted)).first->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  std::vector<double> terms(rule.nodes.size());
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * pairwise_sum(terms);
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const AdaptiveOptions& opts) {
  if (a == b) return {};
  if (std::isinf(b)) {
    if (b < 0) throw InvalidInterval("integrate_adaptive: lower-infinite intervals unsupported");
    // x = a + (1 - s) / s, dx = ds / s^2
    auto g = [&](double s) {
      const double x = a + (1.0 - s) / s;
      return f(x) / (s * s);
    };
    return integrate_adaptive(g, 0.0, 1.0, opts);
  }

  std::priority_queue<Panel, std::vector<Panel>, PanelByError> heap;
  Panel first = gk21(f, a, b);
  heap.push(first);
  double total_err = first.error;
  double total_val = first.value;
  std::size_t evals = 21;

  auto tolerance = [&]() { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total_val)); };

  bool converged = total_err <= tolerance();
  while (!converged && heap.size() < opts.max_panels) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;  // panel cannot be split further
    }
    Panel left = gk21(f, worst.a, mid);
    Panel right = gk21(f, mid, worst.b);
    evals += 42;
    total_val += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    converged = total_err <= tolerance();
  }

  // Deterministic final reduction in interval order.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> vals(panels.size()), errs(panels.size());
  for (std::size_t i = 0; i < panels.size(); ++i) {
    vals[i] = panels[i].value;
    errs[i] = panels[i].error;
  }
  QuadResult out{pairwise_sum(vals), pairwise_sum(errs), evals, panels.size()};
  converged = out.error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value));
  if (!converged && opts.throw_on_failure) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "adaptive quadrature on [" << a << ", " << b << "] stalled at error " << out.error
        << " after " << out.panels << " panels";
    throw NonConvergent(msg.str());
  }
  return out;
}

SphereRule::SphereRule(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  const auto& gl = gauss_legendre(n_theta);
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  nodes_.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      nodes_.push_back({gl.nodes[i], (j + 0.5) * dphi, gl.weights[i] * dphi});
    }
  }
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.subspan(0, mid)) + pairwise_sum(values.subspan(mid));
}

}  // namespace purefield
