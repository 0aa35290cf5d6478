// declab command-line tool: coefficient computations, experiment runs,
// policy covers, and hard-family reports, all emitting JSON/CSV artifacts.

#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "declab/dec.hpp"
#include "declab/e2d.hpp"
#include "declab/errors.hpp"
#include "declab/families.hpp"
#include "declab/json_io.hpp"
#include "declab/pcigw.hpp"

namespace {

using declab::json;

constexpr int kExitSchema = 2;
constexpr int kExitSolver = 3;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw declab::InvalidParamsError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

// All artifacts are written via a temp file plus rename.
void write_atomic(const std::filesystem::path& path, const std::string& body) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw declab::InvalidParamsError("cannot write " + tmp.string());
    out << body;
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string trace_to_csv(const declab::RegretTrace& trace) {
  std::ostringstream out;
  out << "t,pi,r,inst_regret,dec_value,hell_inc,cum_regret,cum_est\n";
  for (const auto& rec : trace.rounds) {
    out << rec.t << ',' << rec.decision << ',' << format_double(rec.reward) << ','
        << format_double(rec.inst_regret) << ',' << format_double(rec.dec_value)
        << ',' << format_double(rec.hellinger_increment) << ','
        << format_double(rec.cum_regret) << ',' << format_double(rec.cum_est)
        << '\n';
  }
  return out.str();
}

json summary_to_json(const declab::RegretTrace& trace) {
  return {{"cum_regret", trace.cum_regret},
          {"est_h", trace.est_h},
          {"reg_kl", trace.reg_kl},
          {"bound_rhs", trace.bound_rhs}};
}

declab::E2dOption option_from_name(const std::string& name) {
  if (name == "I" || name == "i") return declab::E2dOption::OptionI;
  if (name == "II" || name == "ii") return declab::E2dOption::OptionII;
  if (name == "bayes") return declab::E2dOption::Bayes;
  if (name == "generalized") return declab::E2dOption::Generalized;
  throw declab::InvalidParamsError("unknown option: " + name);
}

declab::ExperimentConfig experiment_from_json(const json& j) {
  declab::require_keys(j, {"schema", "class_file", "rounds", "gamma"},
                       {"truth", "option", "divergence", "seed", "smoothing",
                        "radius_sq", "prior"});
  if (j.at("schema").get<std::string>() != "declab/run/v1") {
    throw declab::InvalidParamsError("unsupported config schema");
  }
  declab::ExperimentConfig cfg;
  cfg.rounds = j.at("rounds").get<int>();
  cfg.gamma = j.at("gamma").get<double>();
  cfg.option = option_from_name(j.value("option", std::string("I")));
  cfg.divergence =
      declab::divergence_from_name(j.value("divergence", std::string("hellinger")));
  cfg.seed = j.value("seed", 0ULL);
  cfg.smoothing_alpha = j.value("smoothing", 0.0);
  if (j.contains("radius_sq")) cfg.radius_sq = j.at("radius_sq").get<double>();
  if (j.contains("prior")) cfg.prior = j.at("prior").get<std::vector<double>>();
  cfg.validate();
  return cfg;
}

int run_dec(const std::string& class_file, int ref, double gamma,
            const std::string& divergence) {
  const declab::ModelClass cls =
      declab::model_class_from_json(load_json_file(class_file));
  if (ref < 0 || ref >= cls.num_models()) {
    throw declab::InvalidParamsError("--ref out of range");
  }
  const declab::DecCertificate cert = declab::dec_lp(
      cls, cls.models[ref], gamma, declab::divergence_from_name(divergence));
  json out = {{"value", cert.value}, {"p", cert.witness}, {"method", "LP"}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_once(const json& config, const std::filesystem::path& out_dir) {
  const declab::ExperimentConfig cfg = experiment_from_json(config);
  const declab::ModelClass cls =
      declab::model_class_from_json(load_json_file(config.at("class_file")));
  int truth = config.value("truth", -1);
  if (truth < 0 && cls.truth_index) truth = *cls.truth_index;
  if (truth < 0) throw declab::InvalidParamsError("no truth index given");

  const declab::RegretTrace trace = declab::run_experiment(cls, truth, cfg);
  std::filesystem::create_directories(out_dir);
  write_atomic(out_dir / "trace.csv", trace_to_csv(trace));
  write_atomic(out_dir / "summary.json", summary_to_json(trace).dump(2) + "\n");
  return 0;
}

int run_bench(const json& config, const std::filesystem::path& out_dir) {
  declab::require_keys(config, {"schema", "run", "seeds"});
  if (config.at("schema").get<std::string>() != "declab/bench/v1") {
    throw declab::InvalidParamsError("unsupported config schema");
  }
  const json& run_cfg = config.at("run");
  const std::vector<std::uint64_t> seeds =
      config.at("seeds").get<std::vector<std::uint64_t>>();

  const declab::ModelClass cls =
      declab::model_class_from_json(load_json_file(run_cfg.at("class_file")));
  int truth = run_cfg.value("truth", -1);
  if (truth < 0 && cls.truth_index) truth = *cls.truth_index;
  if (truth < 0) throw declab::InvalidParamsError("no truth index given");

  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("DECLAB_THREADS")) {
    workers = static_cast<unsigned>(std::max(1, std::atoi(env)));
  }
  workers = std::max(1u, std::min<unsigned>(workers, seeds.size()));

  std::vector<declab::RegretTrace> traces(seeds.size());
  std::vector<std::future<void>> jobs;
  std::atomic<std::size_t> cursor{0};
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&]() {
      while (true) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= seeds.size()) return;
        declab::ExperimentConfig cfg = experiment_from_json(run_cfg);
        cfg.seed = seeds[i];
        traces[i] = declab::run_experiment(cls, truth, cfg);
      }
    }));
  }
  for (auto& job : jobs) job.get();

  std::filesystem::create_directories(out_dir);
  json per_seed = json::array();
  double mean_regret = 0.0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    json entry = summary_to_json(traces[i]);
    entry["seed"] = seeds[i];
    per_seed.push_back(entry);
    mean_regret += traces[i].cum_regret;
  }
  mean_regret /= static_cast<double>(seeds.size());
  const json out = {{"mean_cum_regret", mean_regret}, {"runs", per_seed}};
  write_atomic(out_dir / "bench.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_pcigw(const std::string& mdp_file, double eta, bool floor,
              const std::string& out_path) {
  const declab::TabularMdp mdp = declab::mdp_from_json(load_json_file(mdp_file));
  const declab::PolicyCover cover = declab::pcigw(mdp, eta, floor);
  json policies = json::array();
  for (const auto& pi : cover.policies) {
    json table = json::array();
    for (int h = 0; h < pi.horizon; ++h) {
      json layer = json::array();
      for (int s = 0; s < pi.states; ++s) {
        json row = json::array();
        for (int a = 0; a < pi.actions; ++a) row.push_back(pi.at(h, s, a));
        layer.push_back(row);
      }
      table.push_back(layer);
    }
    policies.push_back(table);
  }
  const json out = {{"lambda", cover.lambda},
                    {"policies", policies},
                    {"weights", cover.weights}};
  if (!out_path.empty()) {
    write_atomic(out_path, out.dump(2) + "\n");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_family(const std::string& kind_name, int arms, int dim, double delta,
               double eps, int horizon, int states, double gamma, bool verify,
               std::uint64_t seed) {
  declab::FamilyParams params;
  params.seed = seed;
  if (kind_name == "mab") params.kind = declab::FamilyKind::Mab;
  else if (kind_name == "linear") params.kind = declab::FamilyKind::Linear;
  else if (kind_name == "lipschitz") params.kind = declab::FamilyKind::LipschitzGrid;
  else if (kind_name == "relu") params.kind = declab::FamilyKind::ReluGrid;
  else if (kind_name == "gap-mab") params.kind = declab::FamilyKind::GapMab;
  else if (kind_name == "gap-linear") params.kind = declab::FamilyKind::GapLinear;
  else if (kind_name == "tree") params.kind = declab::FamilyKind::TreeMdp;
  else if (kind_name == "linear-qstar") params.kind = declab::FamilyKind::LinearQstar;
  else throw declab::InvalidParamsError("unknown family kind: " + kind_name);
  params.arms = arms;
  params.dim = dim;
  params.delta = delta;
  params.eps = eps;
  params.horizon = horizon;
  params.states = states;
  params.actions = arms;  // --A doubles as the tree action count

  const declab::HardFamily family = declab::make_family(params);
  json out = {{"kind", kind_name},
              {"alternatives", family.num_alternatives()},
              {"alpha", family.alpha},
              {"beta", family.beta},
              {"delta", family.delta_slack},
              {"lower_bound", declab::family_lower_bound(family, gamma)}};
  if (verify) {
    const declab::FamilyReport report = declab::verify_family(family);
    out["passes"] = report.passes;
    out["sampled"] = report.sampled;
    out["checked_points"] = report.checked_points;
    out["worst_slacks"] = {{"regret", report.worst_regret_slack},
                           {"info", report.worst_info_slack},
                           {"u_budget", report.worst_u_slack},
                           {"v_budget", report.worst_v_slack}};
  }
  if (!family.is_mdp()) {
    const declab::DecLowerWitness dual = declab::dec_dual_lp(
        family.cls, *family.ref, gamma, declab::DivergenceKind::HellingerSq);
    out["dual_lp_value"] = dual.value;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision-estimation coefficient laboratory"};
  app.require_subcommand(1);

  auto* dec_cmd = app.add_subcommand("dec", "coefficient of a finite class");
  std::string class_file, divergence = "hellinger";
  int ref = 0;
  double gamma = 1.0;
  dec_cmd->add_option("--class", class_file, "model class JSON file")->required();
  dec_cmd->add_option("--ref", ref, "reference model index");
  dec_cmd->add_option("--gamma", gamma, "exploration scale")->required();
  dec_cmd->add_option("--divergence", divergence, "hellinger|squared|kl|tv");

  auto* run_cmd = app.add_subcommand("run", "one experiment from a config");
  std::string run_config, run_out = "out";
  run_cmd->add_option("--config", run_config, "run config JSON")->required();
  run_cmd->add_option("--out", run_out, "output directory");

  auto* bench_cmd = app.add_subcommand("bench", "fan an experiment over seeds");
  std::string bench_config, bench_out = "bench_out";
  bench_cmd->add_option("--config", bench_config, "bench config JSON")->required();
  bench_cmd->add_option("--out", bench_out, "output directory");

  auto* pcigw_cmd = app.add_subcommand("pcigw", "inverse-gap policy cover");
  std::string mdp_file, pcigw_out;
  double eta = 1.0;
  bool floor = false;
  pcigw_cmd->add_option("--mdp", mdp_file, "MDP JSON file")->required();
  pcigw_cmd->add_option("--eta", eta, "gap weight")->required();
  pcigw_cmd->add_flag("--floor", floor, "mix kernels with uniform at 1e-6");
  pcigw_cmd->add_option("--out", pcigw_out, "also write the JSON here");

  auto* family_cmd = app.add_subcommand("family", "hard-instance family report");
  std::string kind = "mab";
  int arms = 0, dim = 0, horizon = 0, states = 0;
  double delta = 0.0, eps = 0.0, fam_gamma = 1.0;
  std::uint64_t seed = 0;
  bool verify = false;
  family_cmd->add_option("--kind", kind,
                         "mab|linear|lipschitz|relu|gap-mab|gap-linear|tree|linear-qstar")
      ->required();
  family_cmd->add_option("--A", arms, "arms / actions");
  family_cmd->add_option("--d", dim, "dimension");
  family_cmd->add_option("--delta", delta, "gap parameter");
  family_cmd->add_option("--eps", eps, "scale parameter");
  family_cmd->add_option("--H", horizon, "horizon");
  family_cmd->add_option("--S", states, "states");
  family_cmd->add_option("--gamma", fam_gamma, "scale for the lower bound");
  family_cmd->add_option("--seed", seed, "sampling seed");
  family_cmd->add_flag("--verify", verify, "check the family conditions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dec_cmd) return run_dec(class_file, ref, gamma, divergence);
    if (*run_cmd) return run_once(load_json_file(run_config), run_out);
    if (*bench_cmd) return run_bench(load_json_file(bench_config), bench_out);
    if (*pcigw_cmd) return run_pcigw(mdp_file, eta, floor, pcigw_out);
    if (*family_cmd) {
      return run_family(kind, arms, dim, delta, eps, horizon, states, fam_gamma,
                        verify, seed);
    }
  } catch (const declab::NumericFailureError& e) {
    std::cerr << json{{"error", "solver"}, {"message", e.what()}}.dump() << "\n";
    return kExitSolver;
  } catch (const declab::LpInfeasibleError& e) {
    std::cerr << json{{"error", "solver"}, {"message", e.what()}}.dump() << "\n";
    return kExitSolver;
  } catch (const declab::Error& e) {
    std::cerr << json{{"error", "schema"}, {"message", e.what()}}.dump() << "\n";
    return kExitSchema;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "schema"}, {"message", e.what()}}.dump() << "\n";
    return kExitSchema;
  }
  return 0;
}
