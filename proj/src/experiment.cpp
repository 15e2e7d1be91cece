#include "recon/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "recon/io.hpp"
#include "recon/metrics.hpp"
#include "recon/sampling.hpp"

namespace fs = std::filesystem;

namespace recon {
namespace {

constexpr std::uint64_t kNoiseSeedOffset = 7919;
constexpr std::uint64_t kSubsampleSeedOffset = 104729;

PhantomId phantom_from(const std::string& s) {
  if (s == "f1") return PhantomId::F1;
  if (s == "f2") return PhantomId::F2;
  if (s == "f3") return PhantomId::F3;
  if (s == "shepp_logan") return PhantomId::SHEPP_LOGAN;
  throw std::invalid_argument("unknown phantom: " + s);
}

std::string phantom_name(PhantomId id) {
  switch (id) {
    case PhantomId::F1: return "f1";
    case PhantomId::F2: return "f2";
    case PhantomId::F3: return "f3";
    default: return "shepp_logan";
  }
}

Method method_from(const std::string& s) {
  if (s == "hotv") return Method::HOTV;
  if (s == "ir") return Method::IR;
  if (s == "ea") return Method::EA;
  throw std::invalid_argument("unknown method: " + s);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::HOTV: return "hotv";
    case Method::IR: return "ir";
    default: return "ea";
  }
}

CfKind cf_from(const std::string& s) {
  if (s == "first_order") return CfKind::FIRST_ORDER;
  if (s == "gaussian") return CfKind::GAUSSIAN;
  throw std::invalid_argument("unknown concentration factor: " + s);
}

std::string cf_name(CfKind k) {
  return k == CfKind::GAUSSIAN ? "gaussian" : "first_order";
}

SolverMode mode_from(const std::string& s) {
  if (s == "auto") return SolverMode::AUTO;
  if (s == "direct") return SolverMode::DIRECT;
  if (s == "accelerated") return SolverMode::ACCELERATED;
  throw std::invalid_argument("unknown solver mode: " + s);
}

std::string mode_name(SolverMode m) {
  switch (m) {
    case SolverMode::DIRECT: return "direct";
    case SolverMode::ACCELERATED: return "accelerated";
    default: return "auto";
  }
}

double parse_num(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      // fractions let presets keep printed values like 1/257 exact
      double num = std::stod(s.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(s);
      std::string den_s = s.substr(slash + 1);
      double den = std::stod(den_s, &used);
      if (used != den_s.size() || den == 0.0) throw std::invalid_argument(s);
      return num / den;
    }
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number for " + key + ": '" + s + "'");
  }
}

long parse_long(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for " + key + ": '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad seed for " + key + ": '" + s + "'");
  }
}

Phantom make_phantom(PhantomId id) {
  switch (id) {
    case PhantomId::F1: return f1();
    case PhantomId::F2: return f2();
    case PhantomId::F3: return f3();
    default: return shepp_logan_phantom();
  }
}

// 2D jump neighborhoods come from the rasterized truth: cells on either side
// of a large axis difference. The cut clears smooth variation (f3 neighbor
// differences stay below ~0.1 at 129 points per axis and scale down with n).
std::vector<int> cells_from_truth(const RealVec& t, int n, double cut) {
  std::vector<char> mark(t.size(), 0);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r + 1 < n; ++r) {
      long i = r + static_cast<long>(c) * n;
      if (std::abs(t[i + 1] - t[i]) > cut) mark[i] = mark[i + 1] = 1;
    }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c + 1 < n; ++c) {
      long i = r + static_cast<long>(c) * n;
      if (std::abs(t[i + n] - t[i]) > cut) mark[i] = mark[i + n] = 1;
    }
  std::vector<int> cells;
  for (long i = 0; i < static_cast<long>(mark.size()); ++i)
    if (mark[i]) cells.push_back(static_cast<int>(i));
  return cells;
}

std::string report_header() {
  return "id,method,phantom,grid_n,modes_n,keep,snr_db,seed,m,lambda,rho,eps,"
         "mu,tau,lmax,cf,re,jump_window_max,seconds,status,message";
}

std::string csv_escape(const std::string& s) {
  std::string out = s;
  for (auto& ch : out)
    if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
  return out;
}

std::string report_row(const ExperimentConfig& cfg, const ExperimentOutcome& oc) {
  std::string snr = std::isinf(cfg.snr_db) ? "none" : format_double(cfg.snr_db);
  std::string row;
  row += csv_escape(cfg.id) + ',' + method_name(cfg.method) + ',' +
         phantom_name(cfg.phantom) + ',' + std::to_string(cfg.grid_n) + ',' +
         std::to_string(cfg.modes_n) + ',' + std::to_string(cfg.keep) + ',' +
         snr + ',' + std::to_string(cfg.seed) + ',' +
         std::to_string(cfg.recon.m) + ',' + format_double(cfg.recon.lambda) +
         ',' + format_double(cfg.recon.rho) + ',' +
         format_double(cfg.recon.eps) + ',' + format_double(cfg.recon.mu) +
         ',' + format_double(cfg.recon.tau) + ',' +
         std::to_string(cfg.recon.lmax) + ',' + cf_name(cfg.recon.cf) + ',';
  row += (std::isnan(oc.re) ? "" : format_double(oc.re)) + std::string(",");
  row += (std::isnan(oc.jump_window_max) ? ""
                                         : format_double(oc.jump_window_max)) +
         std::string(",");
  row += (std::isnan(oc.seconds) ? "" : format_double(oc.seconds)) +
         std::string(",");
  row += std::to_string(oc.status) + ',' + csv_escape(oc.message);
  return row;
}

}  // namespace

ExperimentConfig parse_experiment(const std::map<std::string, std::string>& kv_in) {
  auto kv = kv_in;
  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  ExperimentConfig cfg;
  if (auto v = take("phantom")) cfg.phantom = phantom_from(*v);
  if (auto v = take("data_csv")) cfg.data_csv = *v;
  if (auto v = take("grid_n")) cfg.grid_n = static_cast<int>(parse_long("grid_n", *v));
  bool modes_given = false;
  if (auto v = take("modes_n")) {
    cfg.modes_n = static_cast<int>(parse_long("modes_n", *v));
    modes_given = true;
  }
  if (!modes_given) cfg.modes_n = cfg.grid_n;
  if (auto v = take("seed")) cfg.seed = parse_u64("seed", *v);
  if (auto v = take("snr_db")) {
    if (!v->empty() && *v != "none") cfg.snr_db = parse_num("snr_db", *v);
  }
  if (auto v = take("noise_seed")) cfg.noise_seed = parse_u64("noise_seed", *v);
  if (auto v = take("keep")) cfg.keep = parse_long("keep", *v);
  if (auto v = take("subsample_seed"))
    cfg.subsample_seed = parse_u64("subsample_seed", *v);
  if (auto v = take("method")) cfg.method = method_from(*v);
  if (auto v = take("m")) cfg.recon.m = static_cast<int>(parse_long("m", *v));
  if (auto v = take("lambda")) cfg.recon.lambda = parse_num("lambda", *v);
  if (auto v = take("rho")) cfg.recon.rho = parse_num("rho", *v);
  if (auto v = take("eps")) cfg.recon.eps = parse_num("eps", *v);
  if (auto v = take("mu")) cfg.recon.mu = parse_num("mu", *v);
  if (auto v = take("tau")) cfg.recon.tau = parse_num("tau", *v);
  if (auto v = take("lmax")) cfg.recon.lmax = static_cast<int>(parse_long("lmax", *v));
  if (auto v = take("cf")) cfg.recon.cf = cf_from(*v);
  if (auto v = take("mode")) cfg.recon.mode = mode_from(*v);
  if (auto v = take("cg_tol")) cfg.recon.cg.tol = parse_num("cg_tol", *v);
  if (auto v = take("cg_max_iter"))
    cfg.recon.cg.max_iter = static_cast<int>(parse_long("cg_max_iter", *v));
  if (auto v = take("sb_beta")) cfg.recon.bregman.beta = parse_num("sb_beta", *v);
  if (auto v = take("sb_inner_tol"))
    cfg.recon.bregman.inner_tol = parse_num("sb_inner_tol", *v);
  if (auto v = take("sb_inner_max"))
    cfg.recon.bregman.inner_max =
        static_cast<int>(parse_long("sb_inner_max", *v));
  if (auto v = take("sb_outer_tol"))
    cfg.recon.bregman.outer_tol = parse_num("sb_outer_tol", *v);
  if (auto v = take("sb_max_outer"))
    cfg.recon.bregman.max_outer =
        static_cast<int>(parse_long("sb_max_outer", *v));
  if (auto v = take("ir_change_tol"))
    cfg.recon.ir_change_tol = parse_num("ir_change_tol", *v);
  if (auto v = take("out")) cfg.out_dir = *v;
  if (auto v = take("id"))
    cfg.id = *v;
  else
    cfg.id = phantom_name(cfg.phantom) + "_" + method_name(cfg.method);

  if (!kv.empty())
    throw std::invalid_argument("unknown config key: " + kv.begin()->first);

  if (cfg.grid_n < 3 || cfg.grid_n % 2 == 0)
    throw std::invalid_argument("grid_n must be odd and at least 3");
  if (cfg.modes_n < 3 || cfg.modes_n % 2 == 0)
    throw std::invalid_argument("modes_n must be odd and at least 3");
  if (cfg.keep < 0) throw std::invalid_argument("keep must be nonnegative");
  if (cfg.recon.m < 1 || cfg.recon.m >= cfg.grid_n)
    throw std::invalid_argument("m out of range");
  if (cfg.recon.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (cfg.recon.rho <= 0.0) throw std::invalid_argument("rho must be > 0");
  if (cfg.recon.eps <= 0.0) throw std::invalid_argument("eps must be > 0");
  if (cfg.recon.mu <= 0.0) throw std::invalid_argument("mu must be > 0");
  if (cfg.recon.tau <= 0.0 || cfg.recon.tau >= 1.0)
    throw std::invalid_argument("tau must lie in (0,1)");
  if (cfg.recon.lmax < 1) throw std::invalid_argument("lmax must be >= 1");
  return cfg;
}

std::map<std::string, std::string> to_key_values(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["id"] = cfg.id;
  kv["phantom"] = phantom_name(cfg.phantom);
  if (!cfg.data_csv.empty()) kv["data_csv"] = cfg.data_csv;
  kv["grid_n"] = std::to_string(cfg.grid_n);
  kv["modes_n"] = std::to_string(cfg.modes_n);
  kv["seed"] = std::to_string(cfg.seed);
  kv["snr_db"] = std::isinf(cfg.snr_db) ? "none" : format_double(cfg.snr_db);
  if (cfg.noise_seed) kv["noise_seed"] = std::to_string(cfg.noise_seed);
  kv["keep"] = std::to_string(cfg.keep);
  if (cfg.subsample_seed)
    kv["subsample_seed"] = std::to_string(cfg.subsample_seed);
  kv["method"] = method_name(cfg.method);
  kv["m"] = std::to_string(cfg.recon.m);
  kv["lambda"] = format_double(cfg.recon.lambda);
  kv["rho"] = format_double(cfg.recon.rho);
  kv["eps"] = format_double(cfg.recon.eps);
  kv["mu"] = format_double(cfg.recon.mu);
  kv["tau"] = format_double(cfg.recon.tau);
  kv["lmax"] = std::to_string(cfg.recon.lmax);
  kv["cf"] = cf_name(cfg.recon.cf);
  kv["mode"] = mode_name(cfg.recon.mode);
  kv["out"] = cfg.out_dir;
  return kv;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutcome oc;
  oc.id = cfg.id;
  oc.method = method_name(cfg.method);
  try {
    fs::create_directories(cfg.out_dir);
    const std::string prefix = cfg.out_dir + "/" + cfg.id;

    Phantom ph = make_phantom(cfg.phantom);
    const int dims = ph.dims;
    const int n = cfg.grid_n;
    const int J = (n - 1) / 2;
    const int M = (cfg.modes_n - 1) / 2;
    SpatialGrid grid{dims, J};

    std::uint64_t noise_seed =
        cfg.noise_seed ? cfg.noise_seed : cfg.seed + kNoiseSeedOffset;
    std::uint64_t sub_seed = cfg.subsample_seed
                                 ? cfg.subsample_seed
                                 : cfg.seed + kSubsampleSeedOffset;

    FrequencySet freqs;
    FourierData data;
    if (!cfg.data_csv.empty()) {
      std::tie(freqs, data) = read_freq_csv(cfg.data_csv);
      if (freqs.dims != dims)
        throw std::invalid_argument(
            "data csv dimensionality does not match the phantom");
    } else {
      freqs = dims == 1 ? jittered_frequencies_1d(M, cfg.seed)
                        : jittered_frequencies_2d(M, cfg.seed);
      data = continuous_fourier_samples(ph, freqs);
      if (cfg.keep > 0)
        std::tie(freqs, data) = subsample(freqs, data, cfg.keep, sub_seed);
      if (std::isfinite(cfg.snr_db))
        data = add_noise(data, NoiseSpec{cfg.snr_db, noise_seed});
    }

    RealVec truth;
    std::vector<int> cells;
    if (dims == 1) {
      truth = rasterize(ph, grid);
      cells = jump_cells(ph, grid);
    } else {
      RealMat t = rasterize_2d(ph, grid);
      truth = Eigen::Map<const RealVec>(t.data(), t.size());
      double cut = cfg.phantom == PhantomId::F3 ? 0.3 : 0.05;
      cells = cells_from_truth(truth, n, cut);
    }

    ReconstructionResult res;
    switch (cfg.method) {
      case Method::HOTV: res = hotv_l1(data, freqs, grid, cfg.recon); break;
      case Method::IR: res = ir_l1(data, freqs, grid, cfg.recon); break;
      case Method::EA: res = edge_adaptive_l2(data, freqs, grid, cfg.recon); break;
    }

    ErrorReport rep =
        make_error_report(res.image, truth, cells, dims, n, res.total_seconds);
    oc.re = rep.relative_error;
    oc.jump_window_max = rep.jump_neighborhood_max;
    oc.seconds = rep.runtime_s;

    std::vector<std::string> files;
    auto note = [&](const std::string& p) { files.push_back(p); };

    write_freq_csv(prefix + "_data.csv", freqs, data);
    note(prefix + "_data.csv");
    if (dims == 1) {
      RealVec xs(n);
      for (int i = 0; i < n; ++i) xs[i] = grid.x(i);
      write_vector_csv(prefix + "_image.csv", xs, res.image, "x", "value");
      note(prefix + "_image.csv");
      write_vector_csv(prefix + "_truth.csv", xs, truth, "x", "value");
      note(prefix + "_truth.csv");
      write_vector_csv(prefix + "_error.csv", xs, rep.pointwise, "x",
                       "abs_error");
      note(prefix + "_error.csv");
      if (res.edge) {
        write_vector_csv(prefix + "_edge.csv", xs, res.edge->values, "x",
                         "jump");
        note(prefix + "_edge.csv");
      }
      if (res.mask) {
        RealVec rows(res.mask->z.size());
        for (long i = 0; i < rows.size(); ++i) rows[i] = static_cast<double>(i);
        write_vector_csv(prefix + "_mask.csv", rows, res.mask->z, "row",
                         "weight");
        note(prefix + "_mask.csv");
      }
    } else {
      write_matrix_csv(prefix + "_image.csv", res.image, n, n);
      note(prefix + "_image.csv");
      write_pgm16(prefix + "_image.pgm", res.image, n, n);
      note(prefix + "_image.pgm");
      write_matrix_csv(prefix + "_error.csv", rep.pointwise, n, n);
      note(prefix + "_error.csv");
      RealVec log_err = (rep.pointwise.array() + 1e-16).log10();
      write_pgm16(prefix + "_error_log10.pgm", log_err, n, n);
      note(prefix + "_error_log10.pgm");
      if (res.edge) {
        write_matrix_csv(prefix + "_edge.csv", res.edge->values, n, n);
        note(prefix + "_edge.csv");
      }
      if (res.edge_x && res.edge_y) {
        BinaryEdgeMap sx =
            select_edge_support(*res.edge_x, cfg.recon.tau, Axis::Rows);
        BinaryEdgeMap sy =
            select_edge_support(*res.edge_y, cfg.recon.tau, Axis::Cols);
        write_pbm(prefix + "_support_x.pbm", sx.indicator, n, n);
        note(prefix + "_support_x.pbm");
        write_pbm(prefix + "_support_y.pbm", sy.indicator, n, n);
        note(prefix + "_support_y.pbm");
      }
      if (res.mask) {
        int m = res.mask->m;
        write_matrix_csv(prefix + "_mask_x.csv", res.mask->mx, n - m, n);
        note(prefix + "_mask_x.csv");
        write_matrix_csv(prefix + "_mask_y.csv", res.mask->my, n, n - m);
        note(prefix + "_mask_y.csv");
      }
    }

    {
      std::ofstream out(prefix + "_report.csv");
      if (!out) throw std::runtime_error("cannot write report csv");
      out << report_header() << '\n' << report_row(cfg, oc) << '\n';
      note(prefix + "_report.csv");
    }

    nlohmann::json manifest;
    manifest["config"] = to_key_values(cfg);
    manifest["derived"] = {
        {"J", J},
        {"M", M},
        {"samples", static_cast<long>(freqs.size())},
        {"noise_seed_used", std::isfinite(cfg.snr_db) ? noise_seed : 0},
        {"subsample_seed_used", cfg.keep > 0 ? sub_seed : 0},
        {"degenerate_mask", res.degenerate_mask},
    };
    manifest["results"] = {
        {"re", oc.re},
        {"jump_window_max", oc.jump_window_max},
        {"seconds", oc.seconds},
    };
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& [name, srep] : res.stages)
      stages.push_back({{"name", name},
                        {"iterations", srep.iterations},
                        {"residual", srep.residual},
                        {"seconds", srep.seconds},
                        {"converged", srep.converged}});
    manifest["results"]["stages"] = stages;
    manifest["files"] = files;
    write_manifest(prefix + "_manifest.json", manifest);
  } catch (const std::exception& e) {
    oc.status = 1;
    oc.message = e.what();
  }
  return oc;
}

int run_suite(const std::vector<std::string>& presets, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override) {
  // resolve every name first so typos fail before any work runs
  std::vector<std::pair<std::string, std::vector<ExperimentConfig>>> work;
  for (const auto& name : presets) work.emplace_back(name, preset_configs(name));

  fs::create_directories(out_dir);
  std::ofstream summary(out_dir + "/summary.csv");
  if (!summary) throw std::runtime_error("cannot write suite summary");
  summary << report_header() << '\n';

  bool all_ok = true;
  for (auto& [name, configs] : work) {
    for (auto& cfg : configs) {
      cfg.out_dir = out_dir + "/" + name;
      if (seed_override) {
        cfg.seed = *seed_override;
        cfg.noise_seed = 0;
        cfg.subsample_seed = 0;
      }
      ExperimentOutcome oc = run_experiment(cfg);
      summary << report_row(cfg, oc) << '\n';
      summary.flush();
      if (oc.status != 0) all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace recon
