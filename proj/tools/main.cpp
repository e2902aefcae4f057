#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace kgf::cli;
  CLI::App app{"Explicit solutions of the iterated Klein-Gordon-Fock equation with a time Bessel operator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config;
  CommandOptions opt;
  double tol = -1;
  app.add_option("--config", config, "problem config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", opt.out, "output path (CSV for solve, report otherwise)");
  app.add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--tolerance", tol, "override the numerical gap tolerances")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "evaluate u on the configured grid, CSV x1..xn,t,u");
  auto* verify = app.add_subcommand("verify", "residual, initial-condition, two-path and oracle checks");
  auto* ops = app.add_subcommand("operators", "exact constant tables and operator identity ladders");
  auto* conv = app.add_subcommand("convergence", "solution change under radial-order refinement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }
  if (tol > 0) opt.tolerance = tol;

  try {
    const RunConfig cfg = load_config(config);
    if (solve->parsed()) return cmd_solve(cfg, opt, std::cerr);
    if (verify->parsed()) return cmd_verify(cfg, opt, std::cerr);
    if (ops->parsed()) return cmd_operators(cfg, opt, std::cerr);
    if (conv->parsed()) return cmd_convergence(cfg, opt, std::cerr);
  } catch (const kgf::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return kAccuracy;
  } catch (const kgf::RangeError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return kAccuracy;
  } catch (const kgf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
