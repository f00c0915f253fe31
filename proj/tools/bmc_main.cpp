#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bmc/adversary.hpp"
#include "bmc/bench.hpp"
#include "bmc/io.hpp"
#include "bmc/merge_tree.hpp"
#include "bmc/offline.hpp"
#include "bmc/policies.hpp"
#include "bmc/workload.hpp"

namespace {

using nlohmann::json;

struct GenArgs {
  std::string dist = "lognormal";
  double mu = 10, v = 1, read_mean = 1;
  double lbar = 1, rbar = 1;
  int n = 0;
  uint64_t seed = 0;
  double truncate = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  bmc::WorkloadSpec spec;
  if (a.dist == "uniform") {
    spec.kind = bmc::WorkloadSpec::Kind::Uniform;
    spec.lbar = a.lbar;
    spec.rbar = a.rbar;
  } else if (a.dist == "lognormal") {
    spec.kind = bmc::WorkloadSpec::Kind::IidLogNormalExp;
    spec.mu = a.mu;
    spec.v = a.v;
    spec.read_mean = a.read_mean;
  } else {
    throw bmc::Error("gen: unknown --dist '" + a.dist + "'");
  }
  spec.n = a.n;
  spec.seed = a.seed;
  spec.truncate_quantile = a.truncate;
  bmc::write_instance_csv(a.out, bmc::generate(spec));
  return 0;
}

struct SimArgs {
  std::string instance, schedule, model = "linear", trace_out;
};

int cmd_simulate(const SimArgs& a) {
  auto inst = bmc::read_instance_csv(a.instance);
  auto sched = bmc::read_schedule_csv(a.schedule);
  auto model = bmc::parse_model(a.model);
  auto trace = bmc::simulate(inst, sched, model);
  if (!a.trace_out.empty()) {
    std::ofstream f(a.trace_out);
    if (!f) throw bmc::Error("cannot open " + a.trace_out);
    f << "t,merge_cost,read_cost,stack_size\n";
    for (size_t i = 0; i < trace.steps.size(); ++i) {
      f << i + 1 << ',' << bmc::format_double(trace.steps[i].merge_cost) << ','
        << bmc::format_double(trace.steps[i].read_cost) << ','
        << trace.steps[i].stack_size << '\n';
    }
  }
  std::cout << "total_cost " << bmc::format_double(trace.total_cost) << '\n'
            << "total_merge " << bmc::format_double(trace.total_merge) << '\n'
            << "total_read " << bmc::format_double(trace.total_read) << '\n'
            << "max_stack " << trace.max_stack << '\n';
  return 0;
}

struct OptArgs {
  std::string instance, model = "linear", out, dump_tree;
};

int cmd_opt(const OptArgs& a) {
  auto inst = bmc::read_instance_csv(a.instance);
  auto model = bmc::parse_model(a.model);
  auto res = bmc::dp_opt(inst, model);
  std::cout << bmc::format_double(res.cost) << '\n';
  if (!a.out.empty()) bmc::write_schedule_csv(a.out, res.schedule);
  if (!a.dump_tree.empty()) {
    std::ofstream f(a.dump_tree);
    if (!f) throw bmc::Error("cannot open " + a.dump_tree);
    bmc::serialize_tree(f, res.tree);
  }
  return 0;
}

struct BenchArgs {
  std::string config;
  std::string dist, model;
  double mu = -1, v = -1, read_mean = -1, lbar = -1, rbar = -1;
  long long seed = -1;
  std::vector<std::string> policies;
  std::vector<int> n_grid;
  int reps = -1;
  int include_opt = -1;
  int opt_cap_capped = -1, opt_cap_linear = -1;
  std::string out, plot_svg, plot_table;
};

bmc::ExperimentConfig load_config(const BenchArgs& a) {
  bmc::ExperimentConfig cfg;
  cfg.workload.kind = bmc::WorkloadSpec::Kind::IidLogNormalExp;
  if (!a.config.empty()) {
    std::ifstream f(a.config);
    if (!f) throw bmc::Error("cannot open config " + a.config);
    json j = json::parse(f);
    if (j.contains("workload")) {
      const auto& w = j["workload"];
      std::string kind = w.value("dist", "lognormal");
      if (kind == "uniform") {
        cfg.workload.kind = bmc::WorkloadSpec::Kind::Uniform;
      } else if (kind == "lognormal") {
        cfg.workload.kind = bmc::WorkloadSpec::Kind::IidLogNormalExp;
      } else if (kind == "file") {
        cfg.workload.kind = bmc::WorkloadSpec::Kind::FromFile;
        cfg.workload.path = w.value("path", "");
      } else {
        throw bmc::Error("config: unknown workload dist '" + kind + "'");
      }
      cfg.workload.mu = w.value("mu", cfg.workload.mu);
      cfg.workload.v = w.value("v", cfg.workload.v);
      cfg.workload.read_mean = w.value("read_mean", cfg.workload.read_mean);
      cfg.workload.lbar = w.value("lbar", cfg.workload.lbar);
      cfg.workload.rbar = w.value("rbar", cfg.workload.rbar);
      cfg.workload.seed = w.value("seed", cfg.workload.seed);
      cfg.workload.truncate_quantile =
          w.value("truncate_quantile", cfg.workload.truncate_quantile);
    }
    cfg.policies = j.value("policies", cfg.policies);
    cfg.model = j.value("model", cfg.model);
    cfg.n_grid = j.value("n_grid", cfg.n_grid);
    cfg.include_opt = j.value("include_opt", cfg.include_opt);
    cfg.opt_cap_capped = j.value("opt_cap_capped", cfg.opt_cap_capped);
    cfg.opt_cap_linear = j.value("opt_cap_linear", cfg.opt_cap_linear);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
  }
  // Flags win over the config file.
  if (!a.dist.empty()) {
    if (a.dist == "uniform") {
      cfg.workload.kind = bmc::WorkloadSpec::Kind::Uniform;
    } else if (a.dist == "lognormal") {
      cfg.workload.kind = bmc::WorkloadSpec::Kind::IidLogNormalExp;
    } else {
      throw bmc::Error("bench: unknown --dist '" + a.dist + "'");
    }
  }
  if (a.mu >= 0) cfg.workload.mu = a.mu;
  if (a.v >= 0) cfg.workload.v = a.v;
  if (a.read_mean >= 0) cfg.workload.read_mean = a.read_mean;
  if (a.lbar >= 0) cfg.workload.lbar = a.lbar;
  if (a.rbar >= 0) cfg.workload.rbar = a.rbar;
  if (a.seed >= 0) cfg.workload.seed = static_cast<uint64_t>(a.seed);
  if (!a.policies.empty()) cfg.policies = a.policies;
  if (!a.model.empty()) cfg.model = a.model;
  if (!a.n_grid.empty()) cfg.n_grid = a.n_grid;
  if (a.reps >= 1) cfg.repetitions = a.reps;
  if (a.include_opt >= 0) cfg.include_opt = a.include_opt != 0;
  if (a.opt_cap_capped >= 0) cfg.opt_cap_capped = a.opt_cap_capped;
  if (a.opt_cap_linear >= 0) cfg.opt_cap_linear = a.opt_cap_linear;
  return cfg;
}

int cmd_bench(const BenchArgs& a) {
  auto cfg = load_config(a);
  auto table = bmc::run_experiment(cfg);
  if (!a.out.empty()) {
    bmc::write_results_csv(a.out, table);
  } else {
    bmc::write_results_csv(std::cout, table);
  }
  for (const auto& row : table.rows) {
    if (!row.ok) {
      std::cerr << "warning: n=" << row.n << " policy=" << row.policy
                << " rep=" << row.rep << ": " << row.error << '\n';
    }
  }
  if (!a.plot_svg.empty() || !a.plot_table.empty()) {
    bmc::emit_plot_data(table, a.plot_svg, a.plot_table);
  }
  return 0;
}

struct AdvArgs {
  int k = 2;
  double lk = 10;
  std::vector<double> overrides;
  std::string policy = "brb:2";
  std::string out, stats;
  bool no_instance = false;
};

int cmd_adversary(const AdvArgs& a) {
  auto ladder = bmc::build_ladder(a.k, a.lk, a.overrides);
  auto model = bmc::CostModel::capped(a.k);
  auto policy = bmc::parse_policy(a.policy, model);
  bmc::AdversaryOptions opts;
  opts.keep_instance = !a.no_instance && !a.out.empty();
  auto res = bmc::run_adversary(*policy, ladder, opts);
  if (opts.keep_instance && !a.out.empty()) {
    bmc::write_instance_csv(a.out, res.instance);
  }
  json stats;
  stats["k"] = a.k;
  stats["lk"] = a.lk;
  stats["policy"] = a.policy;
  stats["steps"] = res.stats.steps;
  stats["policy_cost"] = res.stats.policy_cost;
  stats["max_stack"] = res.stats.max_stack;
  stats["reference_bound"] = res.stats.reference_bound;
  stats["averaging_bound"] = res.stats.averaging_bound;
  stats["beta_costs"] = res.stats.beta_costs;
  stats["ratio"] = res.stats.reference_bound > 0
                       ? res.stats.policy_cost / res.stats.reference_bound
                       : 0.0;
  stats["separation"] = ladder.separation;
  for (int h = 1; h <= a.k; ++h) {
    stats["n"][std::to_string(h)] = res.stats.n[h];
    stats["tau"][std::to_string(h)] = res.stats.tau[h];
  }
  if (!a.stats.empty()) {
    std::ofstream f(a.stats);
    if (!f) throw bmc::Error("cannot open " + a.stats);
    f << stats.dump(2) << '\n';
  } else {
    std::cout << stats.dump(2) << '\n';
  }
  return 0;
}

struct PlotArgs {
  std::string results, out, table;
};

int cmd_plot(const PlotArgs& a) {
  auto tbl = bmc::read_results_csv(a.results);
  bmc::emit_plot_data(tbl, a.out, a.table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"merge-compaction policy laboratory"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* sgen = app.add_subcommand("gen", "generate a workload instance CSV");
  sgen->add_option("--dist", gen.dist, "uniform|lognormal");
  sgen->add_option("--mu", gen.mu, "log-normal mu");
  sgen->add_option("--v", gen.v, "log-normal variance");
  sgen->add_option("--read-mean", gen.read_mean, "exponential read mean");
  sgen->add_option("--lbar", gen.lbar, "uniform length");
  sgen->add_option("--rbar", gen.rbar, "uniform read rate");
  sgen->add_option("--n", gen.n, "steps")->required();
  sgen->add_option("--seed", gen.seed, "rng seed");
  sgen->add_option("--truncate-quantile", gen.truncate,
                   "clamp draws at this quantile (0 = off)");
  sgen->add_option("--out", gen.out, "output CSV")->required();

  SimArgs sim;
  auto* ssim = app.add_subcommand("simulate", "score a schedule on an instance");
  ssim->add_option("--instance", sim.instance)->required();
  ssim->add_option("--schedule", sim.schedule)->required();
  ssim->add_option("--model", sim.model, "linear|capped:K|sqrt");
  ssim->add_option("--trace", sim.trace_out, "per-step trace CSV");

  OptArgs opt;
  auto* sopt = app.add_subcommand("opt", "exact offline optimum");
  sopt->add_option("--instance", opt.instance)->required();
  sopt->add_option("--model", opt.model, "linear|capped:K|sqrt");
  sopt->add_option("--out", opt.out, "optimal schedule CSV");
  sopt->add_option("--dump-tree", opt.dump_tree, "merge tree dump");

  BenchArgs bench;
  auto* sbench = app.add_subcommand("bench", "policy/OPT comparison harness");
  sbench->add_option("--config", bench.config, "JSON config (flags win)");
  sbench->add_option("--dist", bench.dist, "uniform|lognormal");
  sbench->add_option("--mu", bench.mu);
  sbench->add_option("--v", bench.v);
  sbench->add_option("--read-mean", bench.read_mean);
  sbench->add_option("--lbar", bench.lbar);
  sbench->add_option("--rbar", bench.rbar);
  sbench->add_option("--seed", bench.seed);
  sbench->add_option("--policies", bench.policies, "policy strings")
      ->delimiter(',');
  sbench->add_option("--model", bench.model, "linear|capped:K|sqrt");
  sbench->add_option("--n-grid", bench.n_grid, "horizons")->delimiter(',');
  sbench->add_option("--reps", bench.reps, "repetitions");
  sbench->add_option("--include-opt", bench.include_opt, "0|1");
  sbench->add_option("--opt-cap-capped", bench.opt_cap_capped);
  sbench->add_option("--opt-cap-linear", bench.opt_cap_linear);
  sbench->add_option("--out", bench.out, "results CSV (stdout if absent)");
  sbench->add_option("--plot", bench.plot_svg, "SVG chart path");
  sbench->add_option("--plot-table", bench.plot_table, "text table path");

  AdvArgs adv;
  auto* sadv = app.add_subcommand("adversary", "phase-driven lower-bound run");
  sadv->add_option("--k", adv.k, "stack budget K")->required();
  sadv->add_option("--lk", adv.lk, "separation parameter L_K")->required();
  sadv->add_option("--l-override", adv.overrides,
                   "explicit L_1..L_{K-1} (paper recurrence otherwise)")
      ->delimiter(',');
  sadv->add_option("--policy", adv.policy)->required();
  sadv->add_option("--out", adv.out, "realized instance CSV");
  sadv->add_option("--stats", adv.stats, "stats JSON (stdout if absent)");
  sadv->add_flag("--no-instance", adv.no_instance,
                 "stream without storing the instance");

  PlotArgs plot;
  auto* splot = app.add_subcommand("plot", "chart a results CSV");
  splot->add_option("--results", plot.results)->required();
  splot->add_option("--out", plot.out, "SVG path");
  splot->add_option("--table", plot.table, "text table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sgen->parsed()) return cmd_gen(gen);
    if (ssim->parsed()) return cmd_simulate(sim);
    if (sopt->parsed()) return cmd_opt(opt);
    if (sbench->parsed()) return cmd_bench(bench);
    if (sadv->parsed()) return cmd_adversary(adv);
    if (splot->parsed()) return cmd_plot(plot);
  } catch (const bmc::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const bmc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const bmc::ScheduleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const bmc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
