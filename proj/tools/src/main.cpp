#include <CLI11.hpp>
#include <iostream>

#include "solvint/cli/commands.hpp"

int main(int argc, char** argv) {
  solvint::cli::Options opt;
  CLI::App app{"solvint: maximal intersections in finite solvable groups"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap-order", opt.cap_order, "largest group order handled by the oracle");
    sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "seed for randomized suites");
  };
  auto* analyze = app.add_subcommand("analyze", "lattice, counts, crowns and eta values of one group");
  analyze->add_option("--spec", opt.spec_path, "group spec (JSON)")->required();
  add_common(analyze);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--spec", opt.spec_path, "group spec (JSON)")->required();
  verify->add_option("--suite", opt.suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"thuno", "due", "propo", "fittingamma", "mobius", "interKM", "impor", "possibile", "tower"}));
  verify->add_option("--cases", opt.cases, "number of random cases");
  add_common(verify);

  auto* counts = app.add_subcommand("counts", "tower class counts for a range of levels");
  counts->add_option("--n-min", opt.n_min, "first level");
  counts->add_option("--n-max", opt.n_max, "last level");
  counts->add_flag("--strict-tower", opt.strict_tower, "use primes with the growth condition");
  add_common(counts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : solvint::cli::kSchemaError;
  }
  opt.command = app.get_subcommands().front()->get_name();
  return solvint::cli::run(opt, std::cout, std::cerr);
}
