#include "purefield_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace purefield::cli {
namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s = "invalid configuration:";
  for (const auto& i : v) s += "\n  " + i;
  return s;
}

// Collects issues while reading typed values out of a YAML tree.
class Reader {
 public:
  std::vector<std::string> issues;

  void issue(const std::string& path, const std::string& msg) { issues.push_back(path + ": " + msg); }

  template <class T>
  std::optional<T> get(const YAML::Node& node, const std::string& key, const std::string& path, bool required) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!node || !node.IsMap() || !node[key]) {
      if (required) issue(full, "missing required field");
      return std::nullopt;
    }
    try {
      return node[key].as<T>();
    } catch (const YAML::Exception&) {
      issue(full, "wrong type");
      return std::nullopt;
    }
  }

  template <std::size_t N>
  std::optional<std::array<double, N>> vec(const YAML::Node& node, const std::string& key, const std::string& path,
                                           bool required) {
    auto v = get<std::vector<double>>(node, key, path, required);
    if (!v) return std::nullopt;
    if (v->size() != N) {
      issue(path + "." + key, "expected " + std::to_string(N) + " numbers");
      return std::nullopt;
    }
    std::array<double, N> out{};
    std::copy(v->begin(), v->end(), out.begin());
    return out;
  }
};

std::optional<Worldline> read_worldline(Reader& r, const YAML::Node& n, std::string& desc) {
  const std::string p = "worldline";
  if (!n) {
    r.issue(p, "missing required field");
    return std::nullopt;
  }
  auto family = r.get<std::string>(n, "family", p, true);
  if (!family) return std::nullopt;
  const Vec3 origin = r.vec<3>(n, "origin", p, false).value_or(Vec3{0, 0, 0});
  std::ostringstream d;
  d.precision(6);
  if (*family == "rest") {
    d << "rest";
    desc = d.str();
    return Worldline::rest(origin);
  }
  if (*family == "uniform") {
    auto beta = r.vec<3>(n, "beta", p, true);
    if (!beta) return std::nullopt;
    if (!(norm3(*beta) < 1.0)) {
      r.issue(p + ".beta", "|beta| must be < 1");
      return std::nullopt;
    }
    d << "uniform beta=(" << (*beta)[0] << "," << (*beta)[1] << "," << (*beta)[2] << ")";
    desc = d.str();
    return Worldline::uniform(*beta, origin);
  }
  if (*family == "hyperbolic") {
    auto a = r.get<double>(n, "acceleration", p, true);
    const Vec3 dir = r.vec<3>(n, "direction", p, false).value_or(Vec3{1, 0, 0});
    if (!a) return std::nullopt;
    if (!(*a > 0.0)) {
      r.issue(p + ".acceleration", "must be positive");
      return std::nullopt;
    }
    if (!(norm3(dir) > 0.0)) {
      r.issue(p + ".direction", "must be non-zero");
      return std::nullopt;
    }
    d << "hyperbolic a=" << *a;
    desc = d.str();
    return Worldline::hyperbolic(*a, dir, origin);
  }
  if (*family == "circular") {
    auto radius = r.get<double>(n, "radius", p, true);
    auto omega = r.get<double>(n, "omega", p, true);
    if (!radius || !omega) return std::nullopt;
    if (!(*radius > 0.0) || !(std::abs(*radius * *omega) < 1.0)) {
      r.issue(p, "circular motion needs radius > 0 and |radius * omega| < 1");
      return std::nullopt;
    }
    d << "circular radius=" << *radius << " omega=" << *omega;
    desc = d.str();
    return Worldline::circular(*radius, *omega);
  }
  r.issue(p + ".family", "unknown family '" + *family + "' (rest, uniform, hyperbolic, circular)");
  return std::nullopt;
}

std::optional<ExternalField> read_external(Reader& r, const YAML::Node& n, std::string& desc, Real4& a0_out,
                                           Real4& k_out) {
  const std::string p = "external";
  if (!n) {
    desc = "none";
    return ExternalField::constant({0, 0, 0, 0});
  }
  auto family = r.get<std::string>(n, "family", p, true);
  if (!family) return std::nullopt;
  if (*family == "constant") {
    auto a0 = r.vec<4>(n, "a0", p, true);
    if (!a0) return std::nullopt;
    desc = "constant";
    return ExternalField::constant(*a0);
  }
  if (*family == "polynomial_slow") {
    auto a0 = r.vec<4>(n, "a0", p, true);
    auto k = r.vec<4>(n, "k", p, true);
    const double eps = r.get<double>(n, "eps", p, false).value_or(1e-3);
    if (!a0 || !k) return std::nullopt;
    a0_out = *a0;
    k_out = *k;
    desc = "polynomial_slow eps=" + std::to_string(eps);
    return ExternalField::polynomial_slow(*a0, eps, *k);
  }
  if (*family == "plane_wave") {
    auto amp = r.get<double>(n, "amplitude", p, true);
    auto wavelength = r.get<double>(n, "wavelength", p, true);
    auto prop = r.vec<3>(n, "propagation", p, true);
    auto pol = r.vec<3>(n, "polarization", p, true);
    const double phase = r.get<double>(n, "phase", p, false).value_or(0.0);
    if (!amp || !wavelength || !prop || !pol) return std::nullopt;
    if (!(*wavelength > 0.0)) {
      r.issue(p + ".wavelength", "must be positive");
      return std::nullopt;
    }
    if (!(norm3(*prop) > 0.0) || !(norm3(*pol) > 0.0) || std::abs(dot3(*prop, *pol)) > 1e-12 * norm3(*prop) * norm3(*pol)) {
      r.issue(p + ".polarization", "must be non-zero and transverse to propagation");
      return std::nullopt;
    }
    desc = "plane_wave";
    return ExternalField::plane_wave(*amp, *wavelength, *prop, *pol, phase);
  }
  if (*family == "distant_charge") {
    auto q = r.get<double>(n, "charge", p, true);
    auto pos = r.vec<3>(n, "position", p, true);
    if (!q || !pos) return std::nullopt;
    desc = "distant_charge";
    return ExternalField::distant_charge(*q, *pos);
  }
  r.issue(p + ".family", "unknown family '" + *family + "' (constant, polynomial_slow, plane_wave, distant_charge)");
  return std::nullopt;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues) : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

ScenarioConfig parse_config(const std::string& text, const std::string& default_name) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError({std::string("<document>: YAML parse error: ") + e.what()});
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError({"<document>: expected a mapping at top level"});

  Reader r;
  ScenarioConfig cfg;
  cfg.name = r.get<std::string>(root, "name", "", false).value_or(default_name);

  auto wl = read_worldline(r, root["worldline"], cfg.worldline_description);
  auto ext = read_external(r, root["external"], cfg.external_description, cfg.sweep_a0, cfg.sweep_k);
  auto charge = r.get<double>(root, "charge", "", true);
  auto xi2 = r.get<double>(root, "xi2", "", true);
  auto tau = r.get<std::vector<double>>(root, "tau", "", true);
  auto xi1 = r.get<double>(root, "xi1", "", false);

  ActionOptions& o = cfg.options;
  if (const YAML::Node q = root["quadrature"]) {
    o.surface.n_theta = r.get<int>(q, "n_theta", "quadrature", false).value_or(o.surface.n_theta);
    o.surface.n_phi = r.get<int>(q, "n_phi", "quadrature", false).value_or(o.surface.n_phi);
    o.surface.outer.abs_tol = r.get<double>(q, "abs_tol", "quadrature", false).value_or(o.surface.outer.abs_tol);
    o.surface.outer.rel_tol = r.get<double>(q, "rel_tol", "quadrature", false).value_or(o.surface.outer.rel_tol);
    o.surface.outer.max_panels =
        r.get<std::size_t>(q, "max_panels", "quadrature", false).value_or(o.surface.outer.max_panels);
    o.box_order = r.get<int>(q, "box_order", "quadrature", false).value_or(o.box_order);
    if (o.surface.n_theta < 2) r.issue("quadrature.n_theta", "must be >= 2");
    if (o.surface.n_phi < 4) r.issue("quadrature.n_phi", "must be >= 4");
    if (o.box_order < 2) r.issue("quadrature.box_order", "must be >= 2");
  }
  if (const YAML::Node t = root["tolerances"]) {
    const std::string p = "tolerances";
    cfg.relative_tolerance = r.get<double>(t, "relative", p, false).value_or(cfg.relative_tolerance);
    cfg.absolute_tolerance = r.get<double>(t, "absolute", p, false).value_or(cfg.absolute_tolerance);
    o.slow_threshold = r.get<double>(t, "slow_variation", p, false).value_or(o.slow_threshold);
    o.enforce_slow_variation = r.get<bool>(t, "enforce_slow_variation", p, false).value_or(o.enforce_slow_variation);
    o.component_floor = r.get<double>(t, "component_floor", p, false).value_or(o.component_floor);
    if (!(o.slow_threshold > 0.0)) r.issue(p + ".slow_variation", "must be positive");
  }
  cfg.convergence_levels = r.get<int>(root, "convergence_levels", "", false).value_or(cfg.convergence_levels);
  if (cfg.convergence_levels < 0 || cfg.convergence_levels > 6) r.issue("convergence_levels", "must be in [0, 6]");

  if (const YAML::Node g = root["gauss"]) {
    GaussConfig gc;
    const std::string p = "gauss";
    gc.xi2 = r.get<double>(g, "xi2", p, false).value_or(gc.xi2);
    if (auto t = r.get<std::vector<double>>(g, "tau", p, false)) {
      if (t->size() != 2 || !((*t)[1] > (*t)[0]))
        r.issue(p + ".tau", "expected [tau1, tau2] with tau1 < tau2");
      else
        gc.tau1 = (*t)[0], gc.tau2 = (*t)[1];
    }
    if (auto orient = r.get<std::vector<int>>(g, "orientation", p, false)) {
      if (orient->size() != 3 || std::any_of(orient->begin(), orient->end(), [](int s) { return s != 1 && s != -1; }))
        r.issue(p + ".orientation", "expected three signs (+1 or -1) for tube, start cone, end cone");
      else
        gc.orientation = {(*orient)[0], (*orient)[1], (*orient)[2]};
    }
    const std::string fields = r.get<std::string>(g, "fields", p, false).value_or("polynomial");
    if (fields == "polynomial")
      gc.fields = GaussFields::kPolynomial;
    else if (fields == "plane_wave")
      gc.fields = GaussFields::kPlaneWave;
    else if (fields == "external")
      gc.fields = GaussFields::kExternal;
    else
      r.issue(p + ".fields", "unknown test fields '" + fields + "' (polynomial, plane_wave, external)");
    gc.tolerance = r.get<double>(g, "tolerance", p, false).value_or(gc.tolerance);
    if (!(gc.xi2 > 0.0)) r.issue(p + ".xi2", "must be positive");
    cfg.gauss = gc;
  }

  if (const YAML::Node s = root["eps_sweep"]) {
    SweepConfig sc;
    if (auto eps = r.get<std::vector<double>>(s, "eps", "eps_sweep", true)) {
      sc.eps = *eps;
      if (sc.eps.size() < 2) r.issue("eps_sweep.eps", "need at least two values");
      for (double e : sc.eps)
        if (!(e > 0.0)) r.issue("eps_sweep.eps", "values must be positive");
    }
    sc.slope_tolerance = r.get<double>(s, "slope_tolerance", "eps_sweep", false).value_or(sc.slope_tolerance);
    if (ext && ext->family() != ExternalFamily::kPolynomialSlow)
      r.issue("eps_sweep", "requires external.family = polynomial_slow");
    cfg.eps_sweep = sc;
  }

  std::optional<Box4> region;
  if (const YAML::Node b = root["external_region"]) {
    const std::string p = "external_region";
    auto t = r.get<std::vector<double>>(b, "t", p, true);
    auto lo = r.vec<3>(b, "lo", p, true);
    auto hi = r.vec<3>(b, "hi", p, true);
    if (t && t->size() != 2) r.issue(p + ".t", "expected [t0, t1]");
    if (t && t->size() == 2 && lo && hi) {
      Box4 box{(*t)[0], (*t)[1], *lo, *hi};
      if (!(box.t1 > box.t0) || !(box.hi[0] > box.lo[0]) || !(box.hi[1] > box.lo[1]) || !(box.hi[2] > box.lo[2]))
        r.issue(p, "box must have positive extent along every axis");
      else
        region = box;
    }
  }

  if (auto out = r.get<std::string>(root, "output", "", false)) cfg.output = *out;

  if (tau && tau->size() != 2) r.issue("tau", "expected [tau1, tau2]");
  if (tau && tau->size() == 2 && !((*tau)[1] > (*tau)[0])) r.issue("tau", "requires tau1 < tau2");
  if (xi2) {
    if (!(*xi2 > 1e3 * o.retarded.degenerate_eps))
      r.issue("xi2", "must exceed 1e3 x the degenerate-point epsilon (" +
                         std::to_string(1e3 * o.retarded.degenerate_eps) + ")");
    if (xi1 && !(*xi1 > 0.0 && *xi1 < *xi2)) r.issue("xi1", "requires 0 < xi1 < xi2");
  }

  if (!r.issues.empty()) throw ConfigError(r.issues);

  cfg.scenario = Scenario{*wl, *charge, xi1.value_or(o.xi1_fraction * *xi2), *xi2, (*tau)[0], (*tau)[1], *ext, region};
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot open file"});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.stem().string());
}

}  // namespace purefield::cli
