#include <initializer_list>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "recon/experiment.hpp"

namespace recon {
namespace {

using KV = std::map<std::string, std::string>;

KV with(KV kv, std::initializer_list<std::pair<const std::string, std::string>> extra) {
  for (const auto& [k, v] : extra) kv[k] = v;
  return kv;
}

// Parameter sets follow the published experiments these presets reproduce.
KV base_f1() {
  return {{"phantom", "f1"}, {"grid_n", "257"}, {"seed", "1"},  {"m", "1"},
          {"lambda", "1"},   {"rho", "1"},      {"mu", "1"},    {"eps", "1.9"},
          {"tau", "1/257"},  {"lmax", "25"}};
}

KV base_f2() {
  return with(base_f1(), {{"phantom", "f2"}, {"eps", "2.9"}});
}

KV base_f3(const std::string& n) {
  return {{"phantom", "f3"}, {"grid_n", n},  {"seed", "1"},    {"m", "2"},
          {"lambda", "1"},   {"rho", "0.01"}, {"mu", "0.1"},   {"eps", "0.9"},
          {"tau", "0.025"},  {"lmax", "5"}};
}

KV base_sl(const std::string& keep) {
  return {{"phantom", "shepp_logan"}, {"grid_n", "257"}, {"seed", "1"},
          {"m", "1"},                 {"lambda", "0.1"}, {"rho", "0.01"},
          {"mu", "0.01"},             {"eps", "0.9"},    {"tau", "0.1"},
          {"lmax", "5"},              {"keep", keep}};
}

std::vector<KV> ea_ir_pair(const KV& base, const std::string& stem) {
  return {with(base, {{"method", "ea"}, {"id", stem + "_ea"}}),
          with(base, {{"method", "ir"}, {"id", stem + "_ir"}})};
}

const std::vector<std::pair<std::string, std::vector<KV>>>& table() {
  static const std::vector<std::pair<std::string, std::vector<KV>>> t = [] {
    std::vector<std::pair<std::string, std::vector<KV>>> v;
    v.emplace_back("fig_1Dcos", ea_ir_pair(base_f1(), "fig_1Dcos"));
    for (const std::string m : {"1", "2", "3"})
      v.emplace_back("fig_1Dgelb_m" + m,
                     ea_ir_pair(with(base_f2(), {{"m", m}}), "fig_1Dgelb_m" + m));
    v.emplace_back("fig_1Dnoise_f1",
                   ea_ir_pair(with(base_f1(), {{"snr_db", "15"}}),
                              "fig_1Dnoise_f1"));
    v.emplace_back("fig_1Dnoise_f2",
                   ea_ir_pair(with(base_f2(), {{"snr_db", "20"}}),
                              "fig_1Dnoise_f2"));

    std::vector<KV> lam;
    for (const std::string l : {"0.01", "0.1", "1", "10", "100"})
      lam.push_back(with(base_f1(), {{"method", "ea"},
                                     {"lambda", l},
                                     {"id", "lambda_sweep_ea_" + l}}));
    lam.push_back(with(base_f1(), {{"method", "ir"}, {"id", "lambda_sweep_ir"}}));
    v.emplace_back("lambda_sweep", std::move(lam));

    std::vector<KV> rho;
    for (const std::string r : {"0.01", "0.1", "1", "10", "100"})
      rho.push_back(with(base_f1(), {{"method", "ir"},
                                     {"rho", r},
                                     {"id", "rho_sweep_ir_" + r}}));
    rho.push_back(with(base_f1(), {{"method", "ea"}, {"id", "rho_sweep_ea"}}));
    v.emplace_back("rho_sweep", std::move(rho));

    v.emplace_back("fig_f3", ea_ir_pair(base_f3("257"), "fig_f3"));
    v.emplace_back("fig_quarter", ea_ir_pair(base_sl("16641"), "fig_quarter"));
    v.emplace_back("fig_half", ea_ir_pair(base_sl("32761"), "fig_half"));
    v.emplace_back("fig_3quarters",
                   ea_ir_pair(base_sl("50625"), "fig_3quarters"));
    for (const std::string n : {"129", "257", "513", "1025"})
      v.emplace_back("table1_" + n, ea_ir_pair(base_f3(n), "table1_" + n));
    return v;
  }();
  return t;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, configs] : table()) names.push_back(name);
  return names;
}

std::vector<ExperimentConfig> preset_configs(const std::string& name) {
  for (const auto& [preset, configs] : table()) {
    if (preset != name) continue;
    std::vector<ExperimentConfig> out;
    for (const auto& kv : configs) out.push_back(parse_experiment(kv));
    return out;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace recon
