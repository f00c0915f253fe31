#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bmc/core.hpp"

namespace bmc {

/// An online compaction policy. decide() sees one arrival at a time and
/// commits to a merge width; decisions may depend only on arrivals seen
/// so far. Policies are single-run mutable state.
class Policy {
 public:
  virtual ~Policy() = default;

  /// Merge width for this arrival (counting the new file). Commits.
  virtual int decide(double length, double read_rate) = 0;

  virtual std::string name() const = 0;

  /// Called once before a run when the horizon is known. Only the
  /// known-distribution doubling mode uses it.
  virtual void prepare(int /*n*/) {}

  /// Diagnostics after the most recent decide().
  virtual std::optional<double> potential() const { return std::nullopt; }
  virtual int phase() const { return -1; }
  virtual bool approximate() const { return false; }
};

std::unique_ptr<Policy> make_merge_all();

/// Merge minimally subject to: every file at least as large as the sum
/// of files above it, and stack size at most K.
std::unique_ptr<Policy> make_default(int k);

/// Balanced rent-or-buy for the capped-K model. Level 1 always merges
/// its whole scope; level h ends a phase with a full merge as soon as
/// the recursive child's cost over the phase reaches (h-1) times the
/// cost of that merge.
std::unique_ptr<Policy> make_brb(int k);

/// Linear-model policy maintaining l[L_s] >= r[R_s] for every stack
/// file: merges from the deepest file whose slack the arrival's read
/// rate would exhaust, otherwise appends.
std::unique_ptr<Policy> make_linear_online();

/// Average-case policy: full merge at every power-of-two time, playing
/// the optimal uniform schedule (from empirical means so far) above the
/// bottom file within each phase.
std::unique_ptr<Policy> make_doubling(const CostModel& model);

/// Known-distribution variant: plays the static optimal uniform schedule
/// for (lbar, rbar)^n for the whole horizon (n supplied via prepare()).
std::unique_ptr<Policy> make_doubling_known(const CostModel& model,
                                            double lbar, double rbar);

/// Policy selection strings: merge-all | default:K | brb:K |
/// linear-online | doubling-capped:K | doubling-linear |
/// doubling-known:LBAR,RBAR
std::unique_ptr<Policy> parse_policy(const std::string& spec,
                                     const CostModel& model);

struct PolicyRun {
  SimulationTrace trace;
  Schedule schedule;
  std::vector<double> potential;  // per step; empty unless policy reports it
  std::vector<int> phase;         // per step; empty unless policy reports it
  bool approximate = false;
  std::string policy_name;
};

/// Streams the instance through the policy and the stack simulator.
PolicyRun run_policy(const Instance& instance, Policy& policy,
                     const CostModel& model,
                     const SimulateOptions& options = {});

/// Exposed for invariant checks on the linear-online policy.
struct SpineFile {
  double left_mass = 0;   // frozen l[L_s]
  double right_read = 0;  // accumulating r[R_s]
};

/// Returns the live stack aggregates when `policy` is the linear-online
/// policy, empty otherwise.
std::vector<SpineFile> linear_online_spine(const Policy& policy);

}  // namespace bmc
