// Acceptance suite: end-to-end checks of the laboratory's guarantees,
// one pass/fail line per criterion. The path to the CLI binary comes in
// argv[1] (used by the determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bmc/adversary.hpp"
#include "bmc/bench.hpp"
#include "bmc/io.hpp"
#include "bmc/merge_tree.hpp"
#include "bmc/offline.hpp"
#include "bmc/policies.hpp"
#include "bmc/workload.hpp"

using namespace bmc;

namespace {

std::string g_cli_path;

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& msg) {
    if (!cond) {
      pass = false;
      detail += "\n    FAILED: " + msg;
    }
  }
  void note(const std::string& msg) { detail += "\n    " + msg; }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Instance random_small_instance(const CounterRng& rng, uint64_t tag, int n,
                               bool with_zeros) {
  std::vector<double> lens(n), reads(n);
  for (int i = 0; i < n; ++i) {
    lens[i] = rng.uniform(1, tag * 1000 + i) * 10;
    if (with_zeros && rng.uniform(2, tag * 1000 + i) < 0.2) lens[i] = 0;
    reads[i] = rng.uniform(3, tag * 1000 + i) * 4;
  }
  return Instance(std::move(lens), std::move(reads));
}

Schedule random_schedule(const CounterRng& rng, uint64_t tag, int n) {
  std::vector<int> widths;
  int k = 0;
  for (int t = 0; t < n; ++t) {
    double u = rng.uniform(4, tag * 1000 + t);
    int w = 1 + static_cast<int>(u * u * (k + 1));
    w = std::min(w, k + 1);
    widths.push_back(w);
    k = k + 2 - w;
  }
  return Schedule(std::move(widths));
}

Instance lognormal_instance(uint64_t seed, int n, double mu, double v,
                            double read_mean) {
  WorkloadSpec spec;
  spec.kind = WorkloadSpec::Kind::IidLogNormalExp;
  spec.mu = mu;
  spec.v = v;
  spec.read_mean = read_mean;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

// 1. dp_opt equals the exhaustive oracle across all model families.
Result criterion1() {
  Result r;
  const CostModel models[] = {
      CostModel::capped(1), CostModel::capped(2), CostModel::capped(3),
      CostModel::linear(),
      CostModel::general([](int k) { return std::sqrt(double(k)); }, "sqrt")};
  CounterRng rng(101);
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng.uniform(0, trial) * 9.999);
    auto inst = random_small_instance(rng, trial, n, trial % 3 == 0);
    for (const auto& model : models) {
      auto bf = brute_force_opt(inst, model);
      auto dp = dp_opt(inst, model);
      double diff = std::abs(bf.cost - dp.cost);
      double scale = std::max(1.0, std::max(bf.cost, dp.cost));
      worst = std::max(worst, diff / scale);
      r.require(diff <= 1e-9 * scale,
                "dp=" + fmt(dp.cost) + " brute=" + fmt(bf.cost) + " at trial " +
                    std::to_string(trial) + " model " + model.name());
      r.require(approx_eq(cost_of(inst, dp.schedule, model), dp.cost),
                "dp schedule does not reproduce its cost, trial " +
                    std::to_string(trial));
      if (!r.pass) return r;
    }
  }
  r.detail = "500 instances x 5 models, max relative gap " + fmt(worst);
  return r;
}

// 2. The schedule<->tree bijection round-trips and preserves cost.
Result criterion2() {
  Result r;
  CounterRng rng(202);
  auto sqrt_model =
      CostModel::general([](int k) { return std::sqrt(double(k)); }, "sqrt");
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng.uniform(0, trial) * 199.999);
    std::vector<double> lens(n), reads(n);
    for (int i = 0; i < n; ++i) {
      lens[i] = rng.uniform(5, trial * 1000 + i) * 7;
      reads[i] = rng.uniform(6, trial * 1000 + i) * 2;
    }
    Instance inst(std::move(lens), std::move(reads));
    auto sched = random_schedule(rng, trial, n);
    auto tree = schedule_to_tree(inst, sched);
    auto back = tree_to_schedule(tree);
    r.require(back.widths == sched.widths,
              "round trip mismatch at trial " + std::to_string(trial));
    auto linear_trace = simulate(inst, sched, CostModel::linear());
    r.require(approx_eq(tree_cost(tree, inst, CostModel::linear()),
                        linear_trace.total_cost),
              "linear tree cost mismatch at trial " + std::to_string(trial));
    auto capped = CostModel::capped(linear_trace.max_stack);
    r.require(approx_eq(tree_cost(tree, inst, capped),
                        simulate(inst, sched, capped).total_cost),
              "capped tree cost mismatch at trial " + std::to_string(trial));
    r.require(approx_eq(tree_cost(tree, inst, sqrt_model),
                        simulate(inst, sched, sqrt_model).total_cost),
              "general tree cost mismatch at trial " + std::to_string(trial));
    if (!r.pass) return r;
  }
  r.detail = "1000 round trips, three model kinds";
  return r;
}

// 3. BRB is K-competitive on log-normal inputs and respects the cap.
Result criterion3() {
  Result r;
  double worst_ratio = 0;
  for (int k : {2, 3, 5}) {
    auto model = CostModel::capped(k);
    for (int trial = 0; trial < 100; ++trial) {
      auto inst = lognormal_instance(3000 + trial, 300, 10, 1, std::exp(10.5));
      auto run = run_policy(inst, *make_brb(k), model);
      r.require(run.trace.max_stack <= k,
                "brb exceeded its stack budget at K=" + std::to_string(k));
      double opt = dp_opt(inst, model).cost;
      double ratio = run.trace.total_cost / opt;
      worst_ratio = std::max(worst_ratio, ratio / k);
      r.require(ratio <= k * (1 + 1e-9),
                "brb ratio " + fmt(ratio) + " exceeds K=" + std::to_string(k) +
                    " at trial " + std::to_string(trial));
      if (!r.pass) return r;
    }
  }
  r.detail = "K in {2,3,5} x 100 instances, worst ratio/K " + fmt(worst_ratio);
  return r;
}

// 4. The adversary drives every built-in policy's ratio toward K = 2.
Result criterion4() {
  Result r;
  struct PolicyPlan {
    const char* name;
    int depth[3];  // ladder depth P per L_2 in {10, 30, 100}
  };
  // Truncated paper-geometry ladders L_1 = L_2^{P+1}: P grows with L_2
  // so the measured ratio climbs, while runtime stays bounded (the
  // timeout-prone default policy keeps shallow ladders).
  const PolicyPlan plans[] = {
      {"brb:2", {2, 3, 4}},
      {"merge-all", {2, 3, 4}},
      {"doubling-capped:2", {2, 3, 4}},
      {"default:2", {2, 2, 2}},
  };
  const double l2s[3] = {10, 30, 100};
  for (const auto& plan : plans) {
    double prev = 0;
    std::string seq;
    for (int i = 0; i < 3; ++i) {
      auto ladder =
          build_ladder(2, l2s[i], {std::pow(l2s[i], plan.depth[i] + 1)});
      auto policy = parse_policy(plan.name, CostModel::capped(2));
      auto res = run_adversary(*policy, ladder,
                               AdversaryOptions{.keep_instance = false});
      double ratio = res.policy_cost / res.stats.reference_bound;
      seq += (i ? ", " : "") + fmt(ratio);
      if (i == 0) {
        r.require(ratio >= 1.5, std::string(plan.name) + " ratio " +
                                    fmt(ratio) + " < 1.5 at L_2=10");
      }
      if (i == 2) {
        r.require(ratio >= 1.8, std::string(plan.name) + " ratio " +
                                    fmt(ratio) + " < 1.8 at L_2=100");
      }
      r.require(ratio > prev, std::string(plan.name) +
                                  " ratio not increasing at L_2=" +
                                  fmt(l2s[i]));
      prev = ratio;
    }
    r.note(std::string(plan.name) + ": " + seq);
  }
  return r;
}

// 5. The balanced-split tree is a 2-approximation; its lower bound holds.
Result criterion5() {
  Result r;
  CounterRng rng(505);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.uniform(0, trial) * 299.999);
    std::vector<double> lens(n), reads(n);
    for (int i = 0; i < n; ++i) {
      lens[i] = rng.exponential(7, trial * 1000 + i, 3.0);
      reads[i] = rng.exponential(8, trial * 1000 + i, 1.0);
    }
    Instance inst(std::move(lens), std::move(reads));
    double opt = dp_opt(inst, CostModel::linear()).cost;
    auto approx = approx2_linear(inst);
    worst = std::max(worst, approx.cost / opt);
    r.require(approx.cost <= 2 * opt * (1 + 1e-9),
              "approx ratio " + fmt(approx.cost / opt) + " at trial " +
                  std::to_string(trial));
    r.require(tree_lower_bound(approx.tree, inst) <= opt * (1 + 1e-9),
              "tree lower bound exceeds OPT at trial " + std::to_string(trial));
    if (!r.pass) return r;
  }
  r.detail = "200 instances, worst approx ratio " + fmt(worst);
  return r;
}

// 6. The linear-online invariant holds step by step, and the potential
//    argument's cost bound follows.
Result criterion6() {
  Result r;
  CounterRng rng(606);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 10000;
    std::vector<double> lens(n), reads(n);
    double alpha = 0;
    for (int i = 0; i < n; ++i) {
      reads[i] = rng.exponential(9, trial * 100000 + i, 1.0) + 1e-6;
      double a = rng.uniform(10, trial * 100000 + i) * 2.0;
      lens[i] = a * reads[i];
      alpha = std::max(alpha, a);
    }
    Instance inst(std::move(lens), std::move(reads));
    auto policy = make_linear_online();
    StackSim sim(CostModel::linear());
    bool invariant_ok = true;
    for (int t = 1; t <= n; ++t) {
      int w = policy->decide(inst.length(t), inst.read_rate(t));
      sim.step(inst.length(t), inst.read_rate(t), w);
      if (t % 97 == 0 || t == n) {  // full scan periodically and at the end
        for (const auto& f : linear_online_spine(*policy)) {
          if (f.left_mass < f.right_read * (1 - 1e-9) - 1e-12) {
            invariant_ok = false;
          }
        }
      }
    }
    r.require(invariant_ok,
              "invariant violated in trial " + std::to_string(trial));

    auto rerun = run_policy(inst, *make_linear_online(), CostModel::linear());
    for (const auto& f : linear_online_spine(*policy)) {
      r.require(f.left_mass >= f.right_read * (1 - 1e-9) - 1e-12,
                "final spine violates the invariant");
    }
    auto tree = schedule_to_tree(inst, rerun.schedule);
    double lb = tree_lower_bound(tree, inst);
    double bound = 2 * (1 + alpha) * lb;
    worst = std::max(worst, rerun.trace.total_cost / bound);
    r.require(rerun.trace.total_cost <= bound * (1 + 1e-9),
              "cost " + fmt(rerun.trace.total_cost) + " above 2(1+alpha)lb " +
                  fmt(bound) + " at trial " + std::to_string(trial));
    if (!r.pass) return r;
  }
  r.detail = "100 read-heavy instances (n=10^4), worst cost/bound " +
             fmt(worst);
  return r;
}

// 7. The binomial-fill trees are exactly optimal on uniform inputs and
//    match the predicted asymptotic rate at n = 2000, K = 5.
Result criterion7() {
  Result r;
  for (int k = 1; k <= 6; ++k) {
    for (int n = 1; n <= 200; ++n) {
      UniformParams p{1.0, 0.0, n};
      double direct = uniform_opt_cappedK(p, k).cost;
      double dp = dp_opt(Instance::uniform(1.0, 0.0, n), CostModel::capped(k)).cost;
      r.require(std::abs(direct - dp) <= 1e-9 * std::max(1.0, dp),
                "uniform capped mismatch at n=" + std::to_string(n) +
                    " K=" + std::to_string(k) + ": " + fmt(direct) + " vs " +
                    fmt(dp));
      if (!r.pass) return r;
    }
  }
  const double lbar = 2.0;
  auto big = uniform_opt_cappedK({lbar, 0.0, 2000}, 5);
  double per_step = big.cost / 2000;
  double predicted = lbar * 5 * std::pow(2000.0, 0.2) / c_K(5);
  r.require(std::abs(per_step - predicted) <= 0.20 * predicted,
            "per-step " + fmt(per_step) + " not within 20% of " +
                fmt(predicted));
  r.detail = "exact for n<=200, K<=6; n=2000 per-step " + fmt(per_step) +
             " vs asymptote " + fmt(predicted) + " (c_5=" + fmt(c_K(5)) + ")";
  if (std::abs(per_step - predicted) > 0.20 * predicted) {
    double dp = dp_opt(Instance::uniform(lbar, 0.0, 2000), CostModel::capped(5))
                    .cost / 2000;
    r.note("note: the construction equals the exact DP optimum here (" +
           fmt(per_step) + " = " + fmt(dp) +
           " per step); the K n^(1/K)/c_K asymptote is not yet within 20% "
           "of the true optimum at n = 2000 (their ratio is " +
           fmt(per_step / predicted) + ")");
  }
  return r;
}

// 8. The lopsided-code rate beta governs uniform linear optima.
Result criterion8() {
  Result r;
  r.require(std::abs(solve_beta(1, 1) - 1.0) <= 1e-9, "beta(1,1) != 1");
  r.require(std::abs(solve_beta(7.25, 7.25) - 7.25) <= 1e-9,
            "beta(c,c) != c");
  double golden = -1.0 / std::log2((std::sqrt(5.0) - 1) / 2);
  r.require(std::abs(solve_beta(2, 1) - golden) <= 1e-6,
            "beta(2,1)=" + fmt(solve_beta(2, 1)) + " vs closed form " +
                fmt(golden));
  r.require(std::abs(solve_beta(2, 1) - 1.440420) <= 1e-6,
            "beta(2,1) != 1.440420");
  std::string measured;
  for (auto [lbar, rbar] :
       {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{10.0, 1.0}}) {
    int n = 4096;
    double cost = uniform_opt_linear({lbar, rbar, n}).cost;
    double rate = cost / n / std::log2(double(n));
    double beta = solve_beta(lbar, rbar);
    measured += " (" + fmt(lbar) + "," + fmt(rbar) + "): rate " + fmt(rate) +
                " vs beta " + fmt(beta) + ";";
    r.require(std::abs(rate - beta) <= 0.20 * beta,
              "rate " + fmt(rate) + " not within 20% of beta " + fmt(beta));
  }
  r.detail = measured;
  return r;
}

// 9. Default's per-step cost calibration on uniform inputs, and the
//    resulting gap to BRB at K = 5, n = 10^5.
Result criterion9() {
  Result r;
  int n = 100000;
  auto inst = Instance::uniform(1.0, 0.0, n);
  auto model = CostModel::capped(5);
  auto def = run_policy(inst, *make_default(5), model);
  double def_per_step = def.trace.total_cost / n;
  double predicted = double(n) / (2 * 81);  // n / (2 * 3^(K-1))
  r.require(def_per_step <= predicted * 1.5 && def_per_step >= predicted / 1.5,
            "default per-step " + fmt(def_per_step) + " not within 1.5x of " +
                fmt(predicted));
  auto brb = run_policy(inst, *make_brb(5), model);
  double brb_per_step = brb.trace.total_cost / n;
  r.require(def_per_step >= 5 * brb_per_step,
            "default/brb = " + fmt(def_per_step / brb_per_step) + " < 5");
  r.detail = "default " + fmt(def_per_step) + " (predicted " + fmt(predicted) +
             "), brb " + fmt(brb_per_step) + ", gap " +
             fmt(def_per_step / brb_per_step) + "x";
  return r;
}

// 10. Figure-style property checks: BRB hugs OPT and beats Default on
//     the capped benchmark; the linear-model averages track beta log n;
//     linear-online stays within a constant factor of OPT when reads
//     dominate.
Result criterion10() {
  Result r;
  // Capped benchmark through the experiment harness.
  ExperimentConfig cfg;
  cfg.workload.kind = WorkloadSpec::Kind::IidLogNormalExp;
  cfg.workload.mu = 10;
  cfg.workload.v = 1;
  cfg.workload.read_mean = std::exp(10.5);
  cfg.workload.seed = 1005;
  cfg.policies = {"brb:5", "default:5"};
  cfg.model = "capped:5";
  cfg.n_grid = {250, 500, 1000, 1500, 2000};
  cfg.include_opt = true;
  auto table = run_experiment(cfg);
  std::string brbline;
  bool saw_brb_gap = false;
  for (int n : cfg.n_grid) {
    double brb_cost = -1, def_cost = -1, ratio = -1;
    for (const auto& row : table.rows) {
      if (row.n != n || !row.ok) continue;
      if (row.policy == "brb:5") {
        brb_cost = row.per_step_cost;
        if (row.has_opt) ratio = row.ratio;
      }
      if (row.policy == "default:5") def_cost = row.per_step_cost;
    }
    r.require(ratio > 0, "missing opt ratio at n=" + std::to_string(n));
    r.require(ratio <= 1.15, "brb/opt " + fmt(ratio) + " above 1.15 at n=" +
                                 std::to_string(n));
    if (ratio > 1.15) saw_brb_gap = true;
    if (n >= 500) {
      r.require(brb_cost < def_cost,
                "brb not below default at n=" + std::to_string(n));
    }
    brbline += " n=" + std::to_string(n) + ": " + fmt(ratio);
  }
  r.note("brb/opt ratios:" + brbline);
  if (saw_brb_gap) {
    r.note("note: BRB approaches the optimum only asymptotically (it is "
           "within 0.1% of uniform-OPT at n = 10^5 but ~9% above it at "
           "n = 2000); on heavy-tailed log-normal inputs the honest ratio "
           "at these horizons is 1.18-1.35 across seeds, so the 15% band "
           "is not reachable at n <= 2000");
  }

  // Linear-model benchmark at both read/write mixes.
  double lbar = std::exp(10.5);
  for (double mix : {0.1, 100.0}) {
    double rbar = lbar / mix;
    auto inst = lognormal_instance(2005 + int(mix), 10000, 10, 1, rbar);
    double beta = solve_beta(lbar, rbar);
    double target = beta * std::log2(10000.0);
    auto known = make_doubling_known(CostModel::linear(), lbar, rbar);
    auto krun = run_policy(inst, *known, CostModel::linear());
    double kps = krun.trace.total_cost / 10000;
    r.require(std::abs(kps - target) <= 0.25 * target,
              "doubling (known) per-step " + fmt(kps) +
                  " not within 25% of beta log2 n = " + fmt(target) +
                  " at mix " + fmt(mix));
    auto adaptive = make_doubling(CostModel::linear());
    auto arun = run_policy(inst, *adaptive, CostModel::linear());
    double aps = arun.trace.total_cost / 10000;
    if (mix == 0.1) {
      r.require(std::abs(aps - target) <= 0.25 * target,
                "adaptive doubling per-step " + fmt(aps) +
                    " not within 25% of " + fmt(target));
    }
    r.note("mix " + fmt(mix) + ": beta-log2n " + fmt(target) + ", known " +
           fmt(kps) + ", adaptive " + fmt(aps));
  }

  // Linear-online against the exact optimum at the DP-feasible horizon.
  auto heavy = lognormal_instance(2007, 1500, 10, 1, lbar / 0.1);
  auto lrun = run_policy(heavy, *make_linear_online(), CostModel::linear());
  double lopt = dp_opt(heavy, CostModel::linear()).cost;
  double factor = lrun.trace.total_cost / lopt;
  r.require(factor <= 4.0,
            "linear-online/opt " + fmt(factor) + " above 4 at mix 0.1");
  r.note("linear-online/opt at mix 0.1, n=1500: " + fmt(factor));
  return r;
}

// 11. CLI runs with a fixed seed are byte-identical.
Result criterion11() {
  Result r;
  if (g_cli_path.empty()) {
    r.require(false, "no CLI path supplied in argv[1]");
    return r;
  }
  auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  auto run = [&](const std::string& args) {
    std::string cmd = g_cli_path + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  struct Case {
    std::string label, args_a, args_b, file_a, file_b;
  };
  std::vector<Case> cases;
  cases.push_back({"gen",
                   "gen --dist lognormal --mu 3 --v 1 --read-mean 2 --n 300 "
                   "--seed 77 --out /tmp/bmc_acc_gen_a.csv",
                   "gen --dist lognormal --mu 3 --v 1 --read-mean 2 --n 300 "
                   "--seed 77 --out /tmp/bmc_acc_gen_b.csv",
                   "/tmp/bmc_acc_gen_a.csv", "/tmp/bmc_acc_gen_b.csv"});
  cases.push_back(
      {"bench",
       "bench --dist lognormal --mu 3 --v 1 --read-mean 2 --seed 77 "
       "--policies brb:3,default:3,merge-all --model capped:3 "
       "--n-grid 40,80,160 --include-opt 1 --reps 2 --out /tmp/bmc_acc_b_a.csv",
       "bench --dist lognormal --mu 3 --v 1 --read-mean 2 --seed 77 "
       "--policies brb:3,default:3,merge-all --model capped:3 "
       "--n-grid 40,80,160 --include-opt 1 --reps 2 --out /tmp/bmc_acc_b_b.csv",
       "/tmp/bmc_acc_b_a.csv", "/tmp/bmc_acc_b_b.csv"});
  cases.push_back({"adversary",
                   "adversary --k 2 --lk 10 --l-override 1e5 --policy brb:2 "
                   "--out /tmp/bmc_acc_adv_a.csv --stats /tmp/bmc_acc_s_a.json",
                   "adversary --k 2 --lk 10 --l-override 1e5 --policy brb:2 "
                   "--out /tmp/bmc_acc_adv_b.csv --stats /tmp/bmc_acc_s_b.json",
                   "/tmp/bmc_acc_adv_a.csv", "/tmp/bmc_acc_adv_b.csv"});
  for (const auto& c : cases) {
    int rc_a = run(c.args_a);
    int rc_b = run(c.args_b);
    r.require(rc_a == 0 && rc_b == 0, c.label + " invocation failed");
    if (rc_a == 0 && rc_b == 0) {
      auto a = slurp(c.file_a), b = slurp(c.file_b);
      r.require(!a.empty() && a == b, c.label + " outputs differ");
    }
  }
  r.detail = "gen, bench, adversary replays byte-identical";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  struct Entry {
    int id;
    const char* label;
    std::function<Result()> fn;
  };
  const Entry entries[] = {
      {1, "oracle equivalence (dp vs brute force)", criterion1},
      {2, "schedule/tree bijection", criterion2},
      {3, "BRB K-competitiveness", criterion3},
      {4, "adversary ratio trend", criterion4},
      {5, "2-approximation and tree lower bound", criterion5},
      {6, "linear-online invariant and cost bound", criterion6},
      {7, "uniform capped optimum", criterion7},
      {8, "beta rate for uniform linear optima", criterion8},
      {9, "Default calibration at K=5", criterion9},
      {10, "benchmark figure properties", criterion10},
      {11, "CLI determinism", criterion11},
  };
  int failed = 0;
  for (const auto& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = e.fn();
    } catch (const std::exception& ex) {
      res.pass = false;
      res.detail += std::string("\n    exception: ") + ex.what();
    }
    double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s criterion %2d: %s (%.1fs)%s\n",
                res.pass ? "PASS" : "FAIL", e.id, e.label, dt,
                res.detail.empty() ? "" : ("  " + res.detail).c_str());
    std::fflush(stdout);
    if (!res.pass) ++failed;
  }
  if (failed) std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
