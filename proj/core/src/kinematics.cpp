#include "purefield/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "purefield/errors.hpp"

namespace purefield {

std::string to_string(WorldlineFamily f) {
  switch (f) {
    case WorldlineFamily::kRest: return "rest";
    case WorldlineFamily::kUniform: return "uniform";
    case WorldlineFamily::kHyperbolic: return "hyperbolic";
    case WorldlineFamily::kCircular: return "circular";
    case WorldlineFamily::kCustom: return "custom";
  }
  return "unknown";
}

Worldline::Worldline(WorldlineFamily family, Map z, Map u, Map a, double tau_min, double tau_max)
    : family_(family),
      position_(std::move(z)),
      velocity_(std::move(u)),
      acceleration_(std::move(a)),
      tau_min_(tau_min),
      tau_max_(tau_max) {}

Worldline Worldline::rest(const Vec3& x0) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Worldline(
      WorldlineFamily::kRest, [x0](double tau) { return Real4{tau, x0[0], x0[1], x0[2]}; },
      [](double) { return Real4{1, 0, 0, 0}; }, [](double) { return Real4{0, 0, 0, 0}; }, -inf, inf);
}

Worldline Worldline::uniform(const Vec3& beta, const Vec3& x0) {
  const double b2 = dot3(beta, beta);
  if (!(b2 < 1.0)) throw DomainError("uniform worldline requires |beta| < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Worldline(
      WorldlineFamily::kUniform,
      [=](double tau) {
        return Real4{gamma * tau, x0[0] + gamma * beta[0] * tau, x0[1] + gamma * beta[1] * tau,
                     x0[2] + gamma * beta[2] * tau};
      },
      [=](double) { return Real4{gamma, gamma * beta[0], gamma * beta[1], gamma * beta[2]}; },
      [](double) { return Real4{0, 0, 0, 0}; }, -inf, inf);
}

Worldline Worldline::hyperbolic(double accel, const Vec3& direction, const Vec3& x0) {
  if (!(accel > 0.0)) throw DomainError("hyperbolic worldline requires accel > 0");
  const double n = norm3(direction);
  if (!(n > 0.0)) throw DomainError("hyperbolic worldline requires a nonzero direction");
  const Vec3 d{direction[0] / n, direction[1] / n, direction[2] / n};
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Worldline(
      WorldlineFamily::kHyperbolic,
      [=](double tau) {
        const double s = std::cosh(accel * tau) - 1.0;
        return Real4{std::sinh(accel * tau) / accel, x0[0] + d[0] * s / accel, x0[1] + d[1] * s / accel,
                     x0[2] + d[2] * s / accel};
      },
      [=](double tau) {
        const double sh = std::sinh(accel * tau);
        return Real4{std::cosh(accel * tau), d[0] * sh, d[1] * sh, d[2] * sh};
      },
      [=](double tau) {
        const double ch = accel * std::cosh(accel * tau);
        return Real4{accel * std::sinh(accel * tau), d[0] * ch, d[1] * ch, d[2] * ch};
      },
      -inf, inf);
}

Worldline Worldline::circular(double radius, double omega) {
  const double v = radius * omega;
  if (!(radius > 0.0) || !(std::abs(v) < 1.0))
    throw DomainError("circular worldline requires radius > 0 and |radius * omega| < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Worldline(
      WorldlineFamily::kCircular,
      [=](double tau) {
        const double t = gamma * tau;
        return Real4{t, radius * std::cos(omega * t), radius * std::sin(omega * t), 0.0};
      },
      [=](double tau) {
        const double t = gamma * tau;
        return Real4{gamma, -gamma * v * std::sin(omega * t), gamma * v * std::cos(omega * t), 0.0};
      },
      [=](double tau) {
        const double t = gamma * tau;
        const double c = gamma * gamma * v * omega;
        return Real4{0.0, -c * std::cos(omega * t), -c * std::sin(omega * t), 0.0};
      },
      -inf, inf);
}

Worldline Worldline::custom(Map position, Map velocity, Map acceleration, double tau_min, double tau_max) {
  if (!(tau_min < tau_max)) throw DomainError("custom worldline requires tau_min < tau_max");
  return Worldline(WorldlineFamily::kCustom, std::move(position), std::move(velocity),
                   std::move(acceleration), tau_min, tau_max);
}

namespace {

// g(tau) = (t - Z_t) - |x - z|, strictly decreasing for timelike worldlines.
struct NullResidual {
  const Worldline& wl;
  const Real4& x;

  double operator()(double tau) const {
    const Real4 z = wl.z(tau);
    const double dx = x[1] - z[1], dy = x[2] - z[2], dz = x[3] - z[3];
    return (x[0] - z[0]) - std::sqrt(dx * dx + dy * dy + dz * dz);
  }

  double derivative(double tau) const {
    const Real4 z = wl.z(tau);
    const Real4 u = wl.u(tau);
    const Vec3 d{x[1] - z[1], x[2] - z[2], x[3] - z[3]};
    const double r = norm3(d);
    if (r == 0.0) return -u[0];
    return -u[0] + (d[0] * u[1] + d[1] * u[2] + d[2] * u[3]) / r;
  }
};

[[noreturn]] void no_retarded(const Real4& x, const char* why) {
  std::ostringstream msg;
  msg << "no retarded point for event (" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3]
      << "): " << why;
  throw NoRetardedPoint(msg.str());
}

}  // namespace

RetardedFrame retarded_solve(const Worldline& wl, const Real4& x, const RetardedOptions& opts) {
  NullResidual g{wl, x};
  const double lo_bound = wl.tau_min();
  const double hi_bound = wl.tau_max();

  // Bracket [lo, hi] with g(lo) > 0 >= g(hi). Start from the proper time
  // whose coordinate time matches t, found by a few Newton steps on Z_t.
  double guess = std::isfinite(lo_bound) ? std::max(lo_bound, 0.0) : 0.0;
  if (std::isfinite(hi_bound)) guess = std::min(guess, hi_bound);
  for (int i = 0; i < 8; ++i) {
    const double step = (wl.z(guess)[0] - x[0]) / wl.u(guess)[0];
    double next = guess - step;
    next = std::clamp(next, std::isfinite(lo_bound) ? lo_bound : next, std::isfinite(hi_bound) ? hi_bound : next);
    if (!std::isfinite(next)) break;
    guess = next;
  }

  double hi = guess;
  double lo = guess;
  double ghi = g(hi);
  double step = std::max(1.0, std::abs(x[0]) * 1e-3);
  if (ghi > 0.0) {
    while (ghi > 0.0) {
      if (hi >= hi_bound) no_retarded(x, "retarded time lies beyond the worldline domain");
      lo = hi;
      hi = std::min(hi + step, hi_bound);
      step *= 2.0;
      ghi = g(hi);
      if (step > 1e300) no_retarded(x, "bracket search diverged");
    }
  } else {
    // Past the horizon of an asymptotically null worldline the residual is
    // lost to cancellation; treat that as no intersection.
    const double reach = 1e8 * (1.0 + std::abs(x[0]) + std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]));
    double glo = ghi;
    while (glo <= 0.0) {
      if (lo <= lo_bound) no_retarded(x, "past light cone does not intersect the worldline domain");
      hi = lo;
      lo = std::max(lo - step, lo_bound);
      step *= 2.0;
      glo = g(lo);
      if (glo <= 0.0 && wl.z(lo)[0] < -reach)
        no_retarded(x, "past light cone does not intersect the worldline");
      if (step > 1e16) no_retarded(x, "past light cone does not intersect the worldline");
    }
  }

  // Safeguarded Newton with bisection fallback.
  double tau = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double gv = g(tau);
    if (gv == 0.0) break;
    if (gv > 0.0) lo = tau; else hi = tau;
    const double dg = g.derivative(tau);
    double next = tau - gv / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - tau) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(tau))) {
      tau = next;
      break;
    }
    tau = next;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(tau))) break;
  }

  const WorldlineState s = wl.state(tau);
  Vec3 d{x[1] - s.z[1], x[2] - s.z[2], x[3] - s.z[3]};
  const double R = norm3(d);
  if (R < opts.degenerate_eps) {
    std::ostringstream msg;
    msg << "event lies within " << opts.degenerate_eps << " of the worldline (R = " << R << ")";
    throw DegeneratePoint(msg.str());
  }
  const Vec3 n{d[0] / R, d[1] / R, d[2] / R};
  const double xi = R * (s.u[0] - (n[0] * s.u[1] + n[1] * s.u[2] + n[2] * s.u[3]));
  return {tau, xi, n, R};
}

RetardedFrame retarded_solve(const Worldline& wl, const Biquaternion& x, const RetardedOptions& opts) {
  return retarded_solve(wl, components(x), opts);
}

double light_distance(const Real4& u, const Vec3& nhat, double xi) {
  return xi / (u[0] - (nhat[0] * u[1] + nhat[1] * u[2] + nhat[2] * u[3]));
}

Biquaternion tube_point(const Worldline& wl, double tau, const Vec3& nhat, double xi2) {
  const Real4 z = wl.z(tau);
  const double R = light_distance(wl.u(tau), nhat, xi2);
  return four_vector({z[0] + R, z[1] + R * nhat[0], z[2] + R * nhat[1], z[3] + R * nhat[2]});
}

Biquaternion cone_point(const Worldline& wl, double tau_end, const Vec3& nhat, double xi) {
  return tube_point(wl, tau_end, nhat, xi);
}

Vec3 direction(double cos_theta, double phi) {
  const double s = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return {s * std::cos(phi), s * std::sin(phi), cos_theta};
}

}  // namespace purefield
