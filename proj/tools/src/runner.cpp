#include "purefield_cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include <purefield/errors.hpp>
#include <purefield/finite_part.hpp>

namespace purefield::cli {
namespace fs = std::filesystem;

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::kPass: return "pass";
    case RowStatus::kFail: return "fail";
    case RowStatus::kInfo: return "info";
  }
  return "?";
}

int ScenarioResult::failures() const {
  return static_cast<int>(std::count_if(terms.begin(), terms.end(), [](const TermRow& t) { return t.status == RowStatus::kFail; }));
}

ActionOptions scaled_options(const ActionOptions& o, double mesh_scale) {
  ActionOptions s = o;
  s.surface.n_theta = std::max(2, static_cast<int>(std::lround(o.surface.n_theta * mesh_scale)));
  s.surface.n_phi = std::max(4, static_cast<int>(std::lround(o.surface.n_phi * mesh_scale)));
  return s;
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

class Rows {
 public:
  Rows(std::vector<TermRow>& rows, double rtol, double atol) : rows_(rows), rtol_(rtol), atol_(atol) {}

  // |numeric - analytic| <= max(10 x estimate, rtol |analytic|, atol).
  void gated(std::string term, double numeric, double analytic, double estimate, std::string tag) {
    const double tol = std::max({10.0 * estimate, rtol_ * std::abs(analytic), atol_});
    push(std::move(term), numeric, analytic, estimate, tol, std::move(tag), true);
  }
  void custom(std::string term, double numeric, double analytic, double estimate, double tol, std::string tag) {
    push(std::move(term), numeric, analytic, estimate, tol, std::move(tag), true);
  }
  void info(std::string term, double numeric, std::optional<double> analytic, double estimate, std::string tag) {
    TermRow r{std::move(term), numeric, analytic, analytic ? std::abs(numeric - *analytic) : 0.0, estimate, 0.0,
              std::move(tag), RowStatus::kInfo};
    rows_.push_back(std::move(r));
  }

 private:
  void push(std::string term, double numeric, double analytic, double estimate, double tol, std::string tag, bool) {
    const double err = std::abs(numeric - analytic);
    rows_.push_back({std::move(term), numeric, analytic, err, estimate, tol, std::move(tag),
                     err <= tol ? RowStatus::kPass : RowStatus::kFail});
  }
  std::vector<TermRow>& rows_;
  double rtol_, atol_;
};

std::pair<SpacetimeMap, SpacetimeMap> gauss_fields(const ScenarioConfig& cfg, GaussFields f) {
  switch (f) {
    case GaussFields::kPlaneWave: {
      const ExternalField w = ExternalField::plane_wave(1.0, 4.0, {0, 0, 1}, {1, 0, 0}, 0.3);
      return {w.potential_map(), w.field_map()};
    }
    case GaussFields::kExternal:
      return {cfg.scenario.external.potential_map(), cfg.scenario.external.field_map()};
    case GaussFields::kPolynomial:
      break;
  }
  SpacetimeMap a = [](const Biquaternion& x) {
    const Real4 c = components(x);
    return four_vector(Real4{1.0 + 0.3 * c[1] * c[0], 0.2 * c[2], c[3] * c[3], 0.1 * c[0]});
  };
  SpacetimeMap b = [](const Biquaternion& x) {
    const Real4 c = components(x);
    return six_vector({0.5 + c[0], c[1] * c[2], 0.3}, {c[3], 0.2, c[0] * c[1]});
  };
  return {a, b};
}

double fit_slope(const std::vector<SweepRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log10(r.eps), y = std::log10(r.correspondence);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  ScenarioResult res;
  res.name = cfg.name;
  const Scenario& s = cfg.scenario;
  ActionOptions ao = scaled_options(cfg.options, opts.mesh_scale);
  const bool enforce = ao.enforce_slow_variation;
  ao.enforce_slow_variation = false;  // gated as a row below

  res.report = assemble_report(s, ao);
  const ActionReport& r = res.report;
  res.condition = r.total.condition;
  const double dtau = s.tau2 - s.tau1;

  Rows rows(res.terms, cfg.relative_tolerance, cfg.absolute_tolerance);
  rows.gated("mass_tube", r.mass.tube, r.mass.analytic, r.mass.error, "Eq.(12)");
  rows.gated("cone_self_tau1", r.cone_self.cone1, r.cone_self.reference, r.cone_self.error, "Eq.(13)");
  rows.gated("cone_self_tau2", r.cone_self.cone2, r.cone_self.reference, r.cone_self.error, "Eq.(13)");
  rows.custom("cone_self_difference", r.cone_self.difference, 0.0, r.cone_self.error, cfg.absolute_tolerance,
              "Eq.(13)");
  rows.gated("mass_term", r.mass.numeric, r.mass.analytic, r.mass.error, "Eq.(14)");
  rows.gated("interaction_tube", r.tube.numeric, r.tube.analytic, r.tube.error, "Eq.(17)");
  rows.gated("interaction_cones", r.cones.numeric, r.cones.analytic, r.cones.error, "Eq.(18)");
  rows.gated("interaction_total", r.total.numeric, r.total.analytic_closed, r.total.error, "Eq.(19)");
  rows.info("interaction_usual", r.total.numeric, r.total.analytic_usual, r.total.error, "Eq.(20)");
  rows.info("interaction_pointwise", r.total.pointwise, r.total.analytic_usual, r.total.pointwise_error, "Eq.(20)");
  if (enforce)
    rows.custom("slow_variation_max", res.condition.max_ratio, 0.0, 0.0,
                std::nextafter(ao.slow_threshold, 0.0), "Eq.(25)");
  else
    rows.info("slow_variation_max", res.condition.max_ratio, std::nullopt, 0.0, "Eq.(25)");
  rows.gated("assigned_rest_energy", r.assigned.rest_energy, -r.mass.numeric / dtau, r.mass.error / dtau, "Eq.(22)");
  rows.gated("xi2_over_re", r.assigned.xi2_over_re, 0.5, 0.0, "Eq.(23)");
  rows.info("action_surface_vs_usual", r.surface_action, r.usual_action, r.mass.error + r.total.error, "Eq.(6)");
  if (r.energy_inside) {
    const double mc2 = s.e * s.e / (2.0 * s.xi2);
    rows.gated("self_energy_inside", *r.energy_inside, -mc2, 0.0, "Eq.(10)");
    rows.gated("self_energy_outside", *r.energy_outside, mc2, 0.0, "Eq.(9)");
  }
  if (r.external_field)
    rows.info("external_field_term", r.external_field->value, std::nullopt, r.external_field->error, "Eq.(5)");

  if (cfg.gauss) {
    const GaussConfig& g = *cfg.gauss;
    auto [a, b] = gauss_fields(cfg, g.fields);
    GaussOptions go;
    go.surface = ao.surface;
    res.gauss = gauss_check(a, b, GaussRegion{s.worldline, g.xi2, g.tau1, g.tau2, g.orientation}, go);
    const double scale = res.gauss->residual / std::max(res.gauss->relative, 1e-300);
    rows.custom("gauss_closure", res.gauss->surface, res.gauss->volume, 0.0,
                res.gauss->relative > 0.0 ? g.tolerance * scale : g.tolerance, "Gauss");
  }

  if (cfg.eps_sweep) {
    for (double eps : cfg.eps_sweep->eps) {
      const ExternalField ext = ExternalField::polynomial_slow(cfg.sweep_a0, eps, cfg.sweep_k);
      const InteractionTotal t = interaction_total(s.worldline, s.e, ext, s.xi2, s.tau1, s.tau2, ao);
      res.sweep.push_back({eps, t.condition.max_ratio, t.numeric, t.analytic_closed, t.analytic_usual,
                           std::abs(t.numeric - t.analytic_usual)});
      if (enforce && !t.condition.satisfied(ao.slow_threshold))
        rows.custom("eps_sweep_slow_variation", t.condition.max_ratio, 0.0, 0.0,
                    std::nextafter(ao.slow_threshold, 0.0), "Eq.(25)");
    }
    res.slope = fit_slope(res.sweep);
    rows.custom("eps_sweep_slope", *res.slope, 1.0, 0.0, cfg.eps_sweep->slope_tolerance, "Eq.(15)-(16)");
  }

  for (int l = 0; l < cfg.convergence_levels; ++l) {
    const double f = std::ldexp(1.0, l - (cfg.convergence_levels - 1));
    const ActionOptions lo = scaled_options(ao, f);
    const MassTerm m = mass_term(s.worldline, s.e, s.xi2, s.tau1, s.tau2, lo, s.xi1);
    res.convergence.push_back({l, "mass_term", lo.surface.n_theta, lo.surface.n_phi, m.numeric,
                               std::abs(m.numeric - m.analytic), m.error});
    const InteractionTotal t = interaction_total(s.worldline, s.e, s.external, s.xi2, s.tau1, s.tau2, lo);
    res.convergence.push_back({l, "interaction_total", lo.surface.n_theta, lo.surface.n_phi, t.numeric,
                               std::abs(t.numeric - t.analytic_closed), t.error});
  }
  return res;
}

void write_outputs(const ScenarioResult& r, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "terms.csv");
    f << "term,numeric,analytic,abs_error,error_estimate,eq_tag,tolerance,status\n";
    for (const auto& t : r.terms)
      f << t.term << ',' << num(t.numeric) << ',' << (t.analytic ? num(*t.analytic) : "") << ','
        << (t.analytic ? num(t.abs_error) : "") << ',' << num(t.error_estimate) << ',' << t.eq_tag << ','
        << (t.status == RowStatus::kInfo ? "" : num(t.tolerance)) << ',' << to_string(t.status) << '\n';
  }
  {
    std::ofstream f(dir / "convergence.csv");
    f << "level,quantity,n_theta,n_phi,value,error,estimate\n";
    for (const auto& c : r.convergence)
      f << c.level << ',' << c.quantity << ',' << c.n_theta << ',' << c.n_phi << ',' << num(c.value) << ','
        << num(c.error) << ',' << num(c.estimate) << '\n';
  }
  if (!r.sweep.empty()) {
    std::ofstream f(dir / "eps_sweep.csv");
    f << "eps,max_ratio,interaction_total,analytic_closed,analytic_usual,correspondence_error,slope\n";
    for (const auto& s : r.sweep)
      f << num(s.eps) << ',' << num(s.max_ratio) << ',' << num(s.numeric) << ',' << num(s.analytic_closed) << ','
        << num(s.analytic_usual) << ',' << num(s.correspondence) << ',' << num(r.slope.value_or(NAN)) << '\n';
  }
  nlohmann::ordered_json j;
  j["scenario"] = r.name;
  j["passed"] = r.passed();
  j["failures"] = r.failures();
  j["slow_variation"] = {{"ratios", r.condition.ratios},
                         {"max_ratio", r.condition.max_ratio},
                         {"excluded_components", r.condition.excluded}};
  j["assigned"] = {{"mass", r.report.assigned.mass},
                   {"rest_energy", r.report.assigned.rest_energy},
                   {"r_e", r.report.assigned.r_e},
                   {"xi2_over_re", r.report.assigned.xi2_over_re}};
  if (r.report.external_field)
    j["external_field_term"] = {{"value", r.report.external_field->value}, {"error", r.report.external_field->error}};
  else
    j["external_field_term"] = "not computed";
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : r.terms)
    terms.push_back({{"term", t.term}, {"eq_tag", t.eq_tag}, {"status", to_string(t.status)}});
  if (r.slope) j["eps_slope"] = *r.slope;
  std::ofstream(dir / "summary.json") << j.dump(2) << '\n';
}

void print_terms(const ScenarioResult& r, std::ostream& os) {
  os << "scenario " << r.name << '\n';
  os << std::left << std::setw(26) << "term" << std::right << std::setw(24) << "numeric" << std::setw(24) << "analytic"
     << std::setw(12) << "abs_error" << std::setw(12) << "estimate" << "  " << std::left << std::setw(13) << "eq_tag"
     << "status\n";
  for (const auto& t : r.terms) {
    os << std::left << std::setw(26) << t.term << std::right << std::setprecision(15) << std::setw(24) << t.numeric
       << std::setw(24) << (t.analytic ? num(*t.analytic).substr(0, 22) : std::string("-")) << std::setprecision(3)
       << std::setw(12) << t.abs_error << std::setw(12) << t.error_estimate << "  " << std::left << std::setw(13)
       << t.eq_tag << to_string(t.status) << '\n';
  }
  if (r.slope) os << "eps sweep slope " << std::setprecision(6) << *r.slope << '\n';
  os << (r.passed() ? "PASS" : "FAIL") << " (" << r.failures() << " failing rows)\n";
}

namespace {

fs::path output_dir(const ScenarioConfig& cfg, const RunOptions& opts) {
  if (opts.out) return *opts.out / cfg.name;
  if (cfg.output) return *cfg.output;
  return fs::path("purefield-out") / cfg.name;
}

}  // namespace

int run_command(const fs::path& config, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = load_config(config);
  } catch (const ConfigError& e) {
    err << config.string() << ": " << e.what() << '\n';
    return kExitConfig;
  }
  ScenarioResult r;
  try {
    r = run_scenario(cfg, opts);
  } catch (const Error& e) {
    err << cfg.name << ": " << e.what() << '\n';
    return kExitTolerance;
  }
  write_outputs(r, output_dir(cfg, opts));
  if (!opts.quiet) print_terms(r, out);
  return opts.check && !r.passed() ? kExitTolerance : kExitPass;
}

int suite_command(const fs::path& dir, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) {
    err << dir.string() << ": not a directory\n";
    return kExitConfig;
  }
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && (e.path().extension() == ".yaml" || e.path().extension() == ".yml"))
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    err << "warning: no scenarios found in " << dir.string() << '\n';
    return kExitPass;
  }

  std::vector<ScenarioConfig> configs;
  bool bad = false;
  for (const auto& f : files) {
    try {
      configs.push_back(load_config(f));
    } catch (const ConfigError& e) {
      err << f.string() << ": " << e.what() << '\n';
      bad = true;
    }
  }
  if (bad) return kExitConfig;

  struct Tally {
    int checks = 0;
    int failures = 0;
  };
  std::map<std::string, Tally> by_tag;
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  int failed = 0;
  const fs::path root = opts.out.value_or("purefield-out");
  for (const auto& cfg : configs) {
    ScenarioResult r;
    std::string error;
    try {
      r = run_scenario(cfg, opts);
      write_outputs(r, root / cfg.name);
    } catch (const Error& e) {
      error = e.what();
    }
    const bool ok = error.empty() && r.passed();
    failed += ok ? 0 : 1;
    for (const auto& t : r.terms) {
      if (t.status == RowStatus::kInfo) continue;
      auto& tally = by_tag[t.eq_tag];
      ++tally.checks;
      if (t.status == RowStatus::kFail) ++tally.failures;
    }
    nlohmann::ordered_json row{{"scenario", cfg.name}, {"passed", ok}, {"failures", r.failures()}};
    nlohmann::ordered_json failing = nlohmann::ordered_json::array();
    for (const auto& t : r.terms)
      if (t.status == RowStatus::kFail) failing.push_back(t.term);
    row["failing_terms"] = failing;
    if (!error.empty()) row["error"] = error;
    summary.push_back(row);
    if (!opts.quiet) {
      out << std::left << std::setw(28) << cfg.name << (ok ? "pass" : "FAIL");
      if (!error.empty()) out << "  " << error;
      for (const auto& t : r.terms)
        if (t.status == RowStatus::kFail) out << "  " << t.term;
      out << '\n';
    }
  }

  fs::create_directories(root);
  {
    std::ofstream f(root / "suite_summary.csv");
    f << "eq_tag,checks,failures,status\n";
    for (const auto& [tag, t] : by_tag)
      f << tag << ',' << t.checks << ',' << t.failures << ',' << (t.failures ? "fail" : "pass") << '\n';
  }
  std::ofstream(root / "suite_summary.json") << summary.dump(2) << '\n';
  if (!opts.quiet) {
    out << '\n' << std::left << std::setw(16) << "eq_tag" << "checks  failures\n";
    for (const auto& [tag, t] : by_tag) out << std::setw(16) << tag << std::setw(8) << t.checks << t.failures << '\n';
    out << configs.size() - failed << '/' << configs.size() << " scenarios passed\n";
  }
  return failed ? kExitTolerance : kExitPass;
}

}  // namespace purefield::cli
