#include "chemotax/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Two-species competition with directed advection: simulation, stability, continuation"};
  app.require_subcommand(1, 1);
  chemotax::Invocation inv;
  std::uint64_t seed = 0;
  for (const auto& name : chemotax::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", inv.config_path, "key = value config file")->required();
    sub->add_option("--out", inv.out_flag, "output directory (default $CHEMOTAX_LV_OUT or ./out)");
    sub->add_option("--seed", seed, "seed for random perturbations, overrides the config");
    sub->callback([&inv, sub, name, &seed] {
      inv.command = name;
      if (sub->count("--seed")) inv.seed = seed;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return chemotax::run_command(inv, std::cout);
}
