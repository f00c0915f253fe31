#include "bmc/policies.hpp"

#include <algorithm>
#include <cmath>

#include "bmc/merge_tree.hpp"
#include "bmc/offline.hpp"

namespace bmc {

namespace {

class MergeAllPolicy final : public Policy {
 public:
  int decide(double, double) override {
    int w = stack_ + 1;
    stack_ = 1;
    return w;
  }
  std::string name() const override { return "merge-all"; }

 private:
  int stack_ = 0;
};

class DefaultPolicy final : public Policy {
 public:
  explicit DefaultPolicy(int k) : k_(k) {
    if (k < 1) throw Error("default policy requires K >= 1");
  }

  int decide(double length, double) override {
    stack_.push_back(length);
    pref_.push_back((pref_.empty() ? 0.0 : pref_.back()) + length);
    int m = static_cast<int>(stack_.size());
    double total = pref_.back();
    // Deepest file smaller than the mass above it; merging from there
    // restores the tiering invariant, and nothing shallower can.
    int tier_width = 1;
    for (int i = 0; i < m - 1; ++i) {
      if (stack_[i] < total - pref_[i]) {
        tier_width = m - i;
        break;
      }
    }
    int cap_width = std::max(1, m + 1 - k_);
    int w = std::max(tier_width, cap_width);
    apply(w);
    return w;
  }

  std::string name() const override { return "default:" + std::to_string(k_); }

 private:
  void apply(int w) {
    int m = static_cast<int>(stack_.size());
    double merged = pref_[m - 1] - (m - w > 0 ? pref_[m - w - 1] : 0.0);
    stack_.resize(m - w);
    pref_.resize(m - w);
    stack_.push_back(merged);
    pref_.push_back((pref_.empty() ? 0.0 : pref_.back()) + merged);
  }

  int k_;
  std::vector<double> stack_;
  std::vector<double> pref_;  // inclusive prefix sums from the bottom
};

// One recursion level of the rent-or-buy scheme. A level's "world" is
// the suffix of arrivals since its parent's current phase began; its
// full merge covers exactly that world.
struct BrbLevel {
  int level;
  double world_start_prefix;  // l[1, u-1] where u starts the world
  bool has_bottom = false;
  double child_acc = 0;
  std::unique_ptr<BrbLevel> child;

  BrbLevel(int level, double start) : level(level), world_start_prefix(start) {}

  int files() const {
    return (has_bottom ? 1 : 0) + (child ? child->files() : 0);
  }

  struct Step {
    int width;
    double cost;
  };

  Step peek(double length, double prefix) const {
    if (!has_bottom) return {1, length};
    double world = prefix - world_start_prefix;
    if (level == 1) return {files() + 1, world};
    Step c = child->peek(length, prefix);
    if (child_acc + c.cost >= (level - 1) * world) {
      return {files() + 1, world};
    }
    return c;
  }

  Step commit(double length, double prefix) {
    if (!has_bottom) {
      has_bottom = true;
      if (level >= 2) child = std::make_unique<BrbLevel>(level - 1, prefix);
      return {1, length};
    }
    double world = prefix - world_start_prefix;
    if (level == 1) {
      return {2, world};
    }
    Step c = child->peek(length, prefix);
    if (child_acc + c.cost >= (level - 1) * world) {
      int w = files() + 1;
      child = std::make_unique<BrbLevel>(level - 1, prefix);
      child_acc = 0;
      return {w, world};
    }
    Step done = child->commit(length, prefix);
    child_acc += done.cost;
    return done;
  }
};

class BrbPolicy final : public Policy {
 public:
  explicit BrbPolicy(int k) : k_(k) {
    if (k < 1) throw Error("brb policy requires K >= 1");
    root_ = std::make_unique<BrbLevel>(k, 0.0);
  }

  int decide(double length, double) override {
    prefix_ += length;
    int files_before = root_->files();
    auto step = root_->commit(length, prefix_);
    if (step.width == files_before + 1) ++phase_;
    return step.width;
  }

  std::string name() const override { return "brb:" + std::to_string(k_); }
  int phase() const override { return phase_; }

 private:
  int k_;
  double prefix_ = 0;
  std::unique_ptr<BrbLevel> root_;
  int phase_ = 0;
};

class LinearOnlinePolicy final : public Policy {
 public:
  int decide(double length, double read_rate) override {
    // rR of entry i is charged_ - entries_[i].read_at_birth.
    int m = static_cast<int>(entries_.size());
    int v = -1;
    for (int i = 0; i < m; ++i) {
      double rr = charged_ - entries_[i].read_at_birth;
      if (entries_[i].left_mass < rr + read_rate) {
        v = i;
        break;
      }
    }
    int width;
    if (v < 0) {
      width = 1;
      charged_ += read_rate;  // charge survivors, then add the new file
      entries_.push_back({length, length, read_rate, 0.0, charged_});
      spine_base_ += length + read_rate - charged_;
    } else {
      width = m - v + 1;
      double absorbed = 0;
      for (int i = v; i < m; ++i) {
        const Entry& e = entries_[i];
        absorbed += e.file_len;
        double rr_frozen = charged_ - e.read_at_birth;
        nonspine_phi_ += 2 * (e.node_len + e.node_read + rr_frozen);
        spine_base_ -= e.node_len + e.node_read - e.read_at_birth;
      }
      entries_.resize(v);
      charged_ += read_rate;
      entries_.push_back(
          {absorbed + length, length, read_rate, absorbed, charged_});
      spine_base_ += length + read_rate - charged_;
    }
    return width;
  }

  std::string name() const override { return "linear-online"; }

  std::optional<double> potential() const override {
    return nonspine_phi_ + spine_base_ +
           static_cast<double>(entries_.size()) * charged_;
  }

  std::vector<SpineFile> spine_files() const {
    std::vector<SpineFile> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) {
      out.push_back({e.left_mass, charged_ - e.read_at_birth});
    }
    return out;
  }

 private:
  struct Entry {
    double file_len;       // total length of the stack file
    double node_len;       // arrival that created it
    double node_read;
    double left_mass;      // frozen l[L_s]
    double read_at_birth;  // charged_ when created; rR = charged_ - this
  };
  std::vector<Entry> entries_;
  double charged_ = 0;       // total read rate charged to older survivors
  double nonspine_phi_ = 0;  // 2*(l_x + r_x + r[R_x]) over retired nodes
  double spine_base_ = 0;    // sum of (l_x + r_x - read_at_birth) on spine
};

class DoublingPolicy final : public Policy {
 public:
  DoublingPolicy(const CostModel& model, bool known, double lbar, double rbar)
      : model_(model), known_(known), lbar_(lbar), rbar_(rbar) {
    if (model.kind() == CostModel::Kind::General) {
      throw Error("doubling policy requires a capped or linear model");
    }
  }

  void prepare(int n) override {
    if (known_) {
      horizon_ = n;
      schedule_ = uniform_schedule(lbar_, rbar_, n, /*reserve_bottom=*/false);
    }
  }

  int decide(double length, double read_rate) override {
    ++t_;
    int width;
    if (known_) {
      if (t_ > horizon_) {
        throw InternalError("doubling-known: run exceeds prepared horizon");
      }
      width = schedule_.width(t_);
    } else if ((t_ & (t_ - 1)) == 0) {
      // Power-of-two time: full merge starts a new phase. The uniform
      // schedule for this phase comes from the means of arrivals seen
      // strictly before now.
      phase_start_ = t_;
      ++phase_;
      if (t_ > 1) {
        double lb = sum_len_ / (t_ - 1);
        double rb = sum_read_ / (t_ - 1);
        schedule_ = uniform_schedule(lb, rb, t_, /*reserve_bottom=*/true);
      }
      width = stack_ + 1;
      sub_ = 0;
    } else {
      // Position 2..horizon of the phase schedule, clamped to the files
      // actually above the bottom (the phase-start merge absorbed the
      // schedule's first file).
      int p = t_ - phase_start_ + 1;
      int w = schedule_.width(p);
      width = std::min(w, sub_ + 1);
      sub_ = sub_ + 2 - width;
    }
    stack_ = known_ ? 0 : 1 + sub_;
    sum_len_ += length;
    sum_read_ += read_rate;
    return width;
  }

  std::string name() const override {
    if (known_) return "doubling-known";
    return model_.kind() == CostModel::Kind::CappedK
               ? "doubling-capped:" + std::to_string(model_.cap())
               : "doubling-linear";
  }
  int phase() const override { return phase_; }
  bool approximate() const override { return approx_; }

 private:
  Schedule uniform_schedule(double lbar, double rbar, int n,
                            bool reserve_bottom) {
    if (model_.kind() == CostModel::Kind::CappedK) {
      int budget = reserve_bottom ? model_.cap() - 1 : model_.cap();
      if (budget < 1) {
        // One slot total: only full merges fit.
        std::vector<int> w(n);
        for (int i = 0; i < n; ++i) w[i] = i == 0 ? 1 : 2;
        return Schedule(std::move(w));
      }
      UniformParams p{std::max(lbar, 0.0), std::max(rbar, 0.0), n};
      return tree_to_schedule(uniform_opt_cappedK(p, budget).tree);
    }
    UniformParams p{std::max(lbar, 1e-300), std::max(rbar, 1e-300), n};
    if (n > kExactUniformLimit) {
      approx_ = true;
      auto res = approx2_linear(Instance::uniform(p.mean_length, p.mean_read, n));
      return tree_to_schedule(res.tree);
    }
    return tree_to_schedule(uniform_opt_linear(p).tree);
  }

  static constexpr int kExactUniformLimit = 1 << 14;

  CostModel model_;
  bool known_;
  double lbar_, rbar_;
  int horizon_ = 0;
  int t_ = 0;
  int phase_ = 0;
  int phase_start_ = 1;
  int stack_ = 0;
  int sub_ = 0;
  double sum_len_ = 0, sum_read_ = 0;
  Schedule schedule_;
  bool approx_ = false;
};

}  // namespace

std::unique_ptr<Policy> make_merge_all() {
  return std::make_unique<MergeAllPolicy>();
}

std::unique_ptr<Policy> make_default(int k) {
  return std::make_unique<DefaultPolicy>(k);
}

std::unique_ptr<Policy> make_brb(int k) {
  return std::make_unique<BrbPolicy>(k);
}

std::unique_ptr<Policy> make_linear_online() {
  return std::make_unique<LinearOnlinePolicy>();
}

std::unique_ptr<Policy> make_doubling(const CostModel& model) {
  return std::make_unique<DoublingPolicy>(model, false, 0, 0);
}

std::unique_ptr<Policy> make_doubling_known(const CostModel& model,
                                            double lbar, double rbar) {
  return std::make_unique<DoublingPolicy>(model, true, lbar, rbar);
}

std::unique_ptr<Policy> parse_policy(const std::string& spec,
                                     const CostModel& model) {
  auto int_arg = [&](const std::string& s) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw Error("policy '" + spec + "': bad integer argument");
    }
  };
  if (spec == "merge-all") return make_merge_all();
  if (spec == "linear-online") return make_linear_online();
  if (spec == "doubling-linear") return make_doubling(CostModel::linear());
  if (spec.rfind("default:", 0) == 0) return make_default(int_arg(spec.substr(8)));
  if (spec.rfind("brb:", 0) == 0) return make_brb(int_arg(spec.substr(4)));
  if (spec.rfind("doubling-capped:", 0) == 0) {
    return make_doubling(CostModel::capped(int_arg(spec.substr(16))));
  }
  if (spec.rfind("doubling-known:", 0) == 0) {
    std::string args = spec.substr(15);
    auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw Error("policy '" + spec + "': expected doubling-known:LBAR,RBAR");
    }
    double lbar = 0, rbar = 0;
    try {
      lbar = std::stod(args.substr(0, comma));
      rbar = std::stod(args.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error("policy '" + spec + "': bad numeric argument");
    }
    return make_doubling_known(model, lbar, rbar);
  }
  throw Error("unknown policy '" + spec + "'");
}

PolicyRun run_policy(const Instance& instance, Policy& policy,
                     const CostModel& model, const SimulateOptions& options) {
  PolicyRun run;
  run.policy_name = policy.name();
  policy.prepare(instance.size());
  StackSim sim(model);
  run.trace.steps.reserve(instance.size());
  run.schedule.widths.reserve(instance.size());
  for (int t = 1; t <= instance.size(); ++t) {
    double l = instance.length(t);
    double r = instance.read_rate(t);
    int w = policy.decide(l, r);
    double merged = sim.step(l, r, w);
    run.schedule.widths.push_back(w);
    StepRecord rec;
    rec.merge_cost = merged;
    rec.stack_size = sim.stack_size();
    rec.read_cost = r * model.read_cost(rec.stack_size);
    run.trace.steps.push_back(rec);
    if (options.record_stacks) run.trace.stacks.push_back(sim.stack());
    if (auto phi = policy.potential()) run.potential.push_back(*phi);
    if (policy.phase() >= 0) run.phase.push_back(policy.phase());
  }
  run.trace.final_stack = sim.stack();
  run.trace.total_merge = sim.total_merge();
  run.trace.total_read = sim.total_read();
  run.trace.total_cost = sim.total_cost();
  run.trace.max_stack = sim.max_stack();
  run.approximate = policy.approximate();
  return run;
}

std::vector<SpineFile> linear_online_spine(const Policy& policy) {
  if (auto* p = dynamic_cast<const LinearOnlinePolicy*>(&policy)) {
    return p->spine_files();
  }
  return {};
}

}  // namespace bmc
