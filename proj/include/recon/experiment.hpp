#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recon/phantoms.hpp"
#include "recon/reconstruction.hpp"

namespace recon {

enum class Method { HOTV, IR, EA };

// One reconstruction run: scene, sampling, degradation, method, parameters,
// output location. Fully described by a flat key=value config.
struct ExperimentConfig {
  std::string id;
  PhantomId phantom = PhantomId::F1;
  std::string data_csv;  // when set, load measured data instead of sampling
  int grid_n = 257;      // reconstruction points per axis (2J+1)
  int modes_n = 257;     // Fourier modes per axis (2M+1)
  std::uint64_t seed = 1;
  double snr_db = std::numeric_limits<double>::infinity();  // inf: no noise
  std::uint64_t noise_seed = 0;      // 0: derived from seed
  long keep = 0;                     // retained samples; 0 keeps all
  std::uint64_t subsample_seed = 0;  // 0: derived from seed
  Method method = Method::EA;
  ReconstructionConfig recon;
  std::string out_dir = ".";
};

// Parses and validates a key=value map; unknown keys and out-of-range values
// are rejected.
ExperimentConfig parse_experiment(const std::map<std::string, std::string>& kv);

// Flat echo of a config, parseable by parse_experiment.
std::map<std::string, std::string> to_key_values(const ExperimentConfig& cfg);

struct ExperimentOutcome {
  std::string id;
  std::string method;
  int status = 0;  // 0 ok, 1 stage failure
  std::string message;
  double re = std::numeric_limits<double>::quiet_NaN();
  double jump_window_max = std::numeric_limits<double>::quiet_NaN();
  double seconds = std::numeric_limits<double>::quiet_NaN();
};

// Runs one experiment, writing image/error/edge/mask CSVs, PGM renderings,
// an error-report row, and a manifest under cfg.out_dir. Failures are
// captured in the outcome rather than thrown.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

// Built-in experiment families, one per reproduced figure or table column.
std::vector<std::string> preset_names();

// Expands a preset into its experiment configs (typically one per method or
// sweep value). Unknown names throw invalid_argument.
std::vector<ExperimentConfig> preset_configs(const std::string& name);

// Runs each preset in order, continuing past failures, and writes
// summary.csv under out_dir. Returns 0 when every experiment succeeded,
// otherwise 1.
int run_suite(const std::vector<std::string>& presets, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace recon
