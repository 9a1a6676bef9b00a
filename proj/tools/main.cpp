#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eulertop/cli.hpp"

namespace cli = eulertop::cli;

int main(int argc, char** argv) {
  CLI::App app{"Limit cycles of perturbed Euler tops: closed-form analysis and numerical verification"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  cfg.out_dir = cli::default_out_dir();
  std::string format = "text";
  std::string epsilons;
  double c = 0.0;
  double mu3 = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "Output directory for CSV files (default: $EULERTOP_OUT_DIR)");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--rtol", cfg.integrator.rtol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--atol", cfg.integrator.atol, "Integrator absolute tolerance")->check(CLI::PositiveNumber);
  };
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "Spec file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--c", c, "Sphere radius (tangent kinds only)");
    sub->add_option("--mu3", mu3, "Override mu3");
  };

  auto* analyze = app.add_subcommand("analyze", "Closed-form I(h), roots and admissibility");
  add_spec(analyze);
  add_common(analyze);

  auto* verify = app.add_subcommand("verify", "Confirm predicted cycles by integration");
  add_spec(verify);
  add_common(verify);
  verify->add_option("--epsilon", epsilons, "Comma-separated epsilon list (default: eps, eps/2, eps/4)");

  auto* moments = app.add_subcommand("moments", "Exact table of trigonometric moments");
  moments->add_option("--max-degree", cfg.max_degree, "Largest i + j")->check(CLI::Range(0u, 200u));
  moments->add_option("--format", format, "Table format")->check(CLI::IsMember({"text", "csv"}));

  std::string example_name;
  auto* example = app.add_subcommand("example", "Run a worked example end to end");
  example->add_option("name", example_name, "Example name")->required()->check(CLI::IsMember(cli::example_names()));
  example->add_option("--epsilon", epsilons, "Comma-separated epsilon list");
  add_common(example);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInvalidSpec;
  }

  try {
    cfg.format = format == "csv" ? cli::Format::Csv : cli::Format::Text;
    if (!epsilons.empty()) cfg.epsilons = cli::parse_epsilon_list(epsilons);
    for (auto* sub : {analyze, verify}) {
      if (sub->count("--c")) cfg.c = c;
      if (sub->count("--mu3")) cfg.mu3 = mu3;
    }
  } catch (const eulertop::Error& e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return cli::kInvalidSpec;
  }

  if (analyze->parsed()) return cli::cmd_analyze(cfg, std::cout, std::cerr);
  if (verify->parsed()) return cli::cmd_verify(cfg, std::cout, std::cerr);
  if (moments->parsed()) return cli::cmd_moments(cfg, std::cout, std::cerr);
  return cli::cmd_example(example_name, cfg, std::cout, std::cerr);
}
