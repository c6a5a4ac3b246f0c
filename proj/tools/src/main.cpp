#include <iostream>

#include <CLI11.hpp>

#include "purefield_cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace purefield::cli;
  CLI::App app{"purefield: surface-integral verification of the pure-field action"};
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions opts;
  std::string out;
  app.add_flag("--check", opts.check, "exit 1 when any gated row fails");
  app.add_option("--out", out, "output directory");
  app.add_option("--mesh-scale", opts.mesh_scale, "multiplier on the sphere quadrature orders")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", opts.quiet, "suppress the terminal table");

  std::string config, dir;
  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("config", config, "scenario YAML file")->required();
  auto* suite = app.add_subcommand("suite", "run every scenario in a directory (always checked)");
  suite->add_option("dir", dir, "directory of scenario YAML files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (!out.empty()) opts.out = out;

  if (run->parsed()) return run_command(config, opts, std::cout, std::cerr);
  opts.check = true;
  return suite_command(dir, opts, std::cout, std::cerr);
}
