#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "recon/experiment.hpp"
#include "recon/io.hpp"

namespace {

int dump_presets(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& name : recon::preset_names()) {
    for (const auto& cfg : recon::preset_configs(name)) {
      auto kv = recon::to_key_values(cfg);
      kv.erase("out");  // shipped presets leave the output location to the run
      std::ofstream out(dir + "/" + cfg.id + ".cfg");
      if (!out) {
        std::cerr << "cannot write " << dir << "/" << cfg.id << ".cfg\n";
        return 1;
      }
      out << "# preset " << name << "\n";
      for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruction of piecewise-smooth images from non-uniform "
               "Fourier samples"};
  app.require_subcommand(0, 1);

  std::optional<std::uint64_t> seed;
  int threads = 1;
  app.add_option("--seed", seed, "Override the jitter seed of every run");
  app.add_option("--threads", threads, "Worker cap; runs execute serially")
      ->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  std::string config_path;
  run->add_option("--config", config_path, "key = value experiment file")
      ->required();

  auto* suite =
      app.add_subcommand("suite", "Run named presets and write summary.csv");
  std::vector<std::string> preset_list;
  std::string suite_out = "suite_out";
  suite->add_option("--presets", preset_list, "Preset names (repeatable)");
  suite->add_option("--out", suite_out, "Output directory");

  auto* list = app.add_subcommand("presets", "List built-in preset names");

  auto* dump = app.add_subcommand("dump-presets",
                                  "Write every preset as a .cfg file");
  std::string dump_dir = "presets";
  dump->add_option("--out", dump_dir, "Target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      auto cfg = recon::parse_experiment(recon::read_config(config_path));
      if (seed) {
        cfg.seed = *seed;
        cfg.noise_seed = 0;
        cfg.subsample_seed = 0;
      }
      auto oc = recon::run_experiment(cfg);
      if (oc.status != 0) {
        std::cerr << cfg.id << " failed: " << oc.message << "\n";
        return 1;
      }
      std::cout << cfg.id << ": re=" << recon::format_double(oc.re)
                << " jump_window_max="
                << recon::format_double(oc.jump_window_max)
                << " seconds=" << recon::format_double(oc.seconds) << "\n";
      return 0;
    }
    if (suite->parsed()) return recon::run_suite(preset_list, suite_out, seed);
    if (list->parsed()) {
      for (const auto& name : recon::preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (dump->parsed()) return dump_presets(dump_dir);
    std::cout << app.help();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
