// Sweep runner: executes the experiment grid of a config file (or built-in
// preset) and writes the summary/trace report.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "harness/config.hpp"
#include "harness/sweep.hpp"

using namespace gridecon;

int main(int argc, char** argv) {
  CLI::App app{"economic grid scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string seeds_override;
  int parallel = 1;
  auto* run = app.add_subcommand("run", "run the sweep described by a config file");
  run->add_option("config", config_path, "config file path, or preset:<name>")
      ->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seeds", seeds_override, "comma-separated seed override");
  run->add_option("--parallel", parallel, "number of worker threads")
      ->check(CLI::PositiveNumber);

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "print a built-in preset config");
  preset->add_option("name", preset_name, "preset name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset->parsed()) {
      std::cout << preset_text(preset_name);
      return 0;
    }

    SweepConfig config;
    if (config_path.rfind("preset:", 0) == 0) {
      config = parse_config(preset_text(config_path.substr(7)));
    } else {
      config = load_config(config_path);
    }
    if (!seeds_override.empty()) {
      config.seeds.clear();
      std::size_t pos = 0;
      while (pos <= seeds_override.size()) {
        std::size_t comma = seeds_override.find(',', pos);
        if (comma == std::string::npos) comma = seeds_override.size();
        config.seeds.push_back(std::stoull(seeds_override.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    }

    SweepResult result = run_sweep(config, parallel);
    emit_report(result, out_dir);

    int failures = 0;
    for (const auto& cell : result.cells)
      if (!cell.ok) {
        ++failures;
        std::fprintf(stderr, "cell deadline=%g budget=%g seed=%llu failed: %s\n",
                     cell.deadline, cell.budget,
                     static_cast<unsigned long long>(cell.seed), cell.error.c_str());
      }
    std::printf("%zu cells, %d failed; report in %s\n", result.cells.size(), failures,
                out_dir.c_str());
    return failures == 0 ? 0 : 1;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
}
