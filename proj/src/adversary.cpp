#include "bmc/adversary.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <map>

namespace bmc {

namespace {

double pow_int(double base, long long e) {
  double v = 1;
  for (long long i = 0; i < e; ++i) v *= base;
  return v;
}

}  // namespace

LengthLadder build_ladder(int k, double l_k,
                          const std::vector<double>& overrides) {
  if (k < 1) throw Error("build_ladder: K must be >= 1");
  if (l_k <= k) throw Error("build_ladder: L_K must exceed K");
  LengthLadder lad;
  lad.k = k;
  lad.L.assign(k + 1, 0.0);
  lad.N.assign(k + 1, 0);
  lad.L[k] = l_k;
  lad.N[k] = 1;

  if (overrides.empty()) {
    lad.paper_exact = true;
    // L_h = L_{h+1} * L_K^{N_h}, N_h = product of L_{h+1}..L_K. Checked
    // in log space before materializing.
    double log2lk = std::log2(l_k);
    double nprod = 1;
    for (int h = k - 1; h >= 1; --h) {
      nprod *= lad.L[h + 1];
      if (nprod > 4e15 || std::log2(lad.L[h + 1]) + nprod * log2lk > 1000) {
        throw Error(
            "build_ladder: the ladder recurrence overflows 64-bit floats at "
            "L_" +
            std::to_string(h) + "; pass explicit overrides for L_1..L_" +
            std::to_string(k - 1));
      }
      lad.N[h] = static_cast<long long>(nprod);
      lad.L[h] = lad.L[h + 1] * pow_int(l_k, lad.N[h]);
    }
  } else {
    if (static_cast<int>(overrides.size()) != k - 1) {
      throw Error("build_ladder: expected " + std::to_string(k - 1) +
                  " override values L_1..L_" + std::to_string(k - 1));
    }
    for (int h = 1; h <= k - 1; ++h) lad.L[h] = overrides[h - 1];
    for (int h = 1; h <= k - 1; ++h) {
      if (lad.L[h] <= lad.L[h + 1]) {
        throw Error("build_ladder: overrides must be strictly decreasing");
      }
    }
    // Number of L_K-separated h-lengths fitting below the next level.
    for (int h = k - 1; h >= 1; --h) {
      double slots = std::floor(std::log2(lad.L[h] / lad.L[h + 1]) /
                                    std::log2(l_k) +
                                1e-9);
      if (slots < 1) {
        throw Error("build_ladder: L_" + std::to_string(h) +
                    " leaves no room for " + std::to_string(h) +
                    "-lengths; raise it to at least L_" + std::to_string(h + 1) +
                    " * L_K");
      }
      lad.N[h] = static_cast<long long>(slots);
    }
  }

  lad.w.assign(k + 1, {});
  for (int h = 1; h <= k; ++h) {
    lad.w[h].reserve(lad.N[h]);
    for (long long i = 1; i <= lad.N[h]; ++i) {
      lad.w[h].push_back(pow_int(l_k, i) / lad.L[h]);
    }
  }

  // Achieved separation: smallest ratio between consecutive distinct
  // values of the full set.
  std::vector<double> all;
  for (int h = 1; h <= k; ++h) {
    all.insert(all.end(), lad.w[h].begin(), lad.w[h].end());
  }
  std::sort(all.begin(), all.end());
  double sep = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < all.size(); ++i) {
    if (all[i] > all[i - 1]) sep = std::min(sep, all[i] / all[i - 1]);
  }
  lad.separation = all.size() < 2 ? l_k : sep;
  return lad;
}

namespace {

// Streaming max-based simulator for one slot schedule beta(b): an
// h-length merges into slot h+1 when h < b, else into slot h; zeros are
// 0-lengths. Slot K is the bottom of the stack, slot 1 the top.
class BetaSim {
 public:
  BetaSim(int k, int b) : k_(k), b_(b) {}

  void arrive(double value, int h) {
    int target = h < b_ ? h + 1 : h;
    if (target < 1) target = 1;
    if (target > k_) target = k_;
    double maxv = value;
    while (!files_.empty() && files_.back().slot <= target) {
      maxv = std::max(maxv, files_.back().maxv);
      files_.pop_back();
    }
    files_.push_back({target, maxv});
    cost_ += maxv;
  }

  double cost() const { return cost_; }

 private:
  struct File {
    int slot;
    double maxv;
  };
  int k_, b_;
  std::vector<File> files_;
  double cost_ = 0;
};

// The policy-side stack with per-file ladder maxima, used to detect
// "merged the h-length with a strictly larger length".
struct PolicyStack {
  struct File {
    double len;
    double maxv;
  };
  std::vector<File> files;
  double cost = 0;
  int max_stack = 0;

  // Tracked ladder values: position of the file holding them.
  struct Tracked {
    double value = 0;
    int pos = -1;
    bool merged_larger = false;
  };
  std::vector<Tracked> tracked;  // per level h (1..K)

  explicit PolicyStack(int k) : tracked(k + 1) {}

  void step(double len, int h, int width) {
    files.push_back({len, h >= 1 ? len : 0.0});
    int m = static_cast<int>(files.size());
    if (width < 1 || width > m) {
      throw ScheduleError(0, "adversary: policy returned invalid width " +
                                 std::to_string(width));
    }
    int base = m - width;
    double sum = 0, maxv = 0;
    for (int i = base; i < m; ++i) {
      sum += files[i].len;
      maxv = std::max(maxv, files[i].maxv);
    }
    files.resize(base);
    files.push_back({sum, maxv});
    cost += sum;
    max_stack = std::max(max_stack, static_cast<int>(files.size()));
    for (auto& tr : tracked) {
      if (tr.pos >= base) {
        tr.pos = base;
        if (maxv > tr.value) tr.merged_larger = true;
      }
    }
  }

  void track(int h, double value) {
    tracked[h].value = value;
    tracked[h].pos = static_cast<int>(files.size()) - 1;
    tracked[h].merged_larger = false;
  }
};

struct AdversaryRun {
  Policy& policy;
  const LengthLadder& ladder;
  bool keep;
  PolicyStack stack;
  std::vector<BetaSim> betas;
  std::vector<long long> next_index;  // per level h
  AdversaryStats stats;
  std::vector<double> inst_len;

  AdversaryRun(Policy& p, const LengthLadder& lad, bool keep_instance)
      : policy(p), ladder(lad), keep(keep_instance), stack(lad.k) {
    for (int b = 1; b <= lad.k; ++b) betas.emplace_back(lad.k, b);
    next_index.assign(lad.k + 1, 0);
    stats.n.assign(lad.k + 1, {});
    stats.tau.assign(lad.k + 1, {});
  }

  void emit(double value, int h) {
    ++stats.steps;
    for (auto& beta : betas) beta.arrive(value, h);
    if (keep) inst_len.push_back(value);
    int width = policy.decide(value, 0.0);
    stack.step(value, h, width);
  }

  // Runs one h-phase; returns true if it ended because the policy merged
  // the h-length with a larger length (false = timed out).
  bool run_phase(int h) {
    long long idx = next_index[h]++;
    if (idx >= ladder.N[h]) {
      throw InternalError("adversary: ladder exhausted at level " +
                          std::to_string(h) +
                          " (capacity accounting bug or too-shallow ladder)");
    }
    double value = ladder.w[h][idx];
    emit(value, h);
    stack.track(h, value);
    long long cap = ladder.k == h
                        ? std::min(static_cast<long long>(ladder.L[h]),
                                   h >= 2 ? ladder.N[h - 1] : LLONG_MAX)
                        : static_cast<long long>(ladder.L[h]);
    long long count = 0;
    long long timeouts = 0;
    bool merged = false;
    while (count < cap) {
      if (h == 1) {
        emit(0.0, 0);
      } else {
        bool sub_merged = run_phase(h - 1);
        if (!sub_merged) ++timeouts;
      }
      ++count;
      if (stack.tracked[h].merged_larger) {
        merged = true;
        break;
      }
    }
    stats.n[h].push_back(count);
    stats.tau[h].push_back(timeouts);
    return merged;
  }

  AdversaryResult finish() {
    AdversaryResult res;
    res.policy_cost = stack.cost;
    stats.policy_cost = stack.cost;
    stats.max_stack = stack.max_stack;
    double wn = 0;
    for (int h = 1; h <= ladder.k; ++h) {
      for (size_t i = 0; i < stats.n[h].size(); ++i) {
        wn += ladder.w[h][i] * static_cast<double>(stats.n[h][i]);
      }
    }
    stats.averaging_bound = 2.0 + wn / ladder.k;
    stats.reference_bound = std::numeric_limits<double>::infinity();
    for (auto& beta : betas) {
      stats.beta_costs.push_back(beta.cost());
      stats.reference_bound = std::min(stats.reference_bound, beta.cost());
    }
    res.stats = std::move(stats);
    if (keep) {
      std::vector<double> reads(inst_len.size(), 0.0);
      res.instance = Instance(std::move(inst_len), std::move(reads));
    }
    return res;
  }
};

}  // namespace

AdversaryResult run_adversary(Policy& policy, const LengthLadder& ladder,
                              const AdversaryOptions& options) {
  AdversaryRun run(policy, ladder, options.keep_instance);
  run.run_phase(ladder.k);
  return run.finish();
}

double max_based_cost(const Instance& instance, const Schedule& schedule) {
  if (schedule.size() != instance.size()) {
    throw ScheduleError(0, "schedule length does not match instance length");
  }
  std::vector<double> maxes;
  double cost = 0;
  for (int t = 1; t <= instance.size(); ++t) {
    maxes.push_back(instance.length(t));
    int m = static_cast<int>(maxes.size());
    int w = schedule.width(t);
    if (w < 1 || w > m) {
      throw ScheduleError(t, "invalid width at t=" + std::to_string(t));
    }
    double maxv = 0;
    for (int i = 0; i < w; ++i) {
      maxv = std::max(maxv, maxes.back());
      maxes.pop_back();
    }
    maxes.push_back(maxv);
    cost += maxv;
  }
  return cost;
}

ReferenceBound reference_schedules_bound(const Instance& instance,
                                         const LengthLadder& ladder) {
  // Classify each arrival back to its ladder level by exact value.
  std::map<double, int> level_of;
  for (int h = 1; h <= ladder.k; ++h) {
    for (double v : ladder.w[h]) level_of[v] = h;
  }
  std::vector<BetaSim> betas;
  for (int b = 1; b <= ladder.k; ++b) betas.emplace_back(ladder.k, b);
  for (int t = 1; t <= instance.size(); ++t) {
    double v = instance.length(t);
    int h = 0;
    if (v != 0.0) {
      auto it = level_of.find(v);
      if (it == level_of.end()) {
        throw Error("reference_schedules_bound: length " + std::to_string(v) +
                    " at t=" + std::to_string(t) +
                    " is not a value of this ladder");
      }
      h = it->second;
    }
    for (auto& beta : betas) beta.arrive(v, h);
  }
  ReferenceBound rb;
  rb.bound = std::numeric_limits<double>::infinity();
  for (auto& beta : betas) {
    rb.beta_costs.push_back(beta.cost());
    rb.bound = std::min(rb.bound, beta.cost());
  }
  if (instance.size() == 0) rb.bound = 0;
  return rb;
}

}  // namespace bmc
