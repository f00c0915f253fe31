#pragma once

#include <vector>

#include "bmc/core.hpp"
#include "bmc/policies.hpp"

namespace bmc {

/// Well-separated length ladder: K separation parameters L_1 >> ... >> L_K
/// with h-lengths w_{h,i} = L_K^i / L_h for i = 1..N_h. L_h also caps the
/// number of sub-phases an h-phase may run before timing out.
struct LengthLadder {
  int k = 0;
  std::vector<double> L;              // 1-based, L[1..k]
  std::vector<long long> N;           // 1-based, h-length counts; N[k] = 1
  std::vector<std::vector<double>> w; // w[h][i-1] = w_{h,i}
  double separation = 0;              // achieved factor between distinct values
  bool paper_exact = false;

  double weight(int h, int i) const { return w[h][i - 1]; }
};

/// Builds the ladder. Without overrides, uses L_h = L_{h+1} * L_K^{N_h}
/// with N_h the product of the shallower parameters; errors when that
/// recurrence overflows doubles (practically K >= 3) and suggests
/// override mode. With overrides (explicit L_1..L_{K-1}), any decreasing
/// positive ladder is accepted; N_h becomes the number of h-lengths that
/// fit between L_{h+1}-separated neighbours, and the achieved separation
/// factor is reported.
LengthLadder build_ladder(int k, double l_k,
                          const std::vector<double>& overrides = {});

struct AdversaryStats {
  /// n[h][i-1]: sub-phase count of the i-th h-phase (zeros for h = 1).
  std::vector<std::vector<long long>> n;
  /// tau[h][i-1]: how many of those sub-phases timed out (h >= 2).
  std::vector<std::vector<long long>> tau;
  double policy_cost = 0;
  int max_stack = 0;
  long long steps = 0;
  /// Max-based costs of the K reference schedules, streamed during the
  /// run, and their minimum.
  std::vector<double> beta_costs;
  double reference_bound = 0;
  /// 2 + (1/K) * sum of w_{h,i} n_{h,i}: the averaging bound the
  /// reference schedules satisfy.
  double averaging_bound = 0;
};

struct AdversaryOptions {
  /// When false the realized instance is not stored (long runs); the
  /// streamed reference bound in the stats is still computed.
  bool keep_instance = true;
};

struct AdversaryResult {
  Instance instance;  // empty when not kept
  AdversaryStats stats;
  double policy_cost = 0;
};

/// Plays the phase-driven adaptive instance against a deterministic
/// policy under the capped-K game (read rates all zero). A 1-phase emits
/// the next unused 1-length then zeros until the policy merges that
/// 1-length with a strictly larger length or L_1 zeros elapse; an
/// h-phase emits the next h-length then runs (h-1)-phases under the same
/// stopping rule; the whole instance is one K-phase. The stack cap is
/// not enforced: the realized max stack is reported instead, so
/// cap-violating policies can still be measured.
AdversaryResult run_adversary(Policy& policy, const LengthLadder& ladder,
                              const AdversaryOptions& options = {});

/// Cost of the schedule when a merge produces (and pays) the maximum of
/// the merged lengths instead of their sum. No read costs.
double max_based_cost(const Instance& instance, const Schedule& schedule);

struct ReferenceBound {
  std::vector<double> beta_costs;  // per b = 1..K
  double bound = 0;                // min over b
};

/// Simulates the K slot schedules beta(1)..beta(K) (max-based) over an
/// instance realized from this ladder and returns the minimum cost, an
/// upper bound on OPT up to the 1/(1 - 1/L_K) separation factor.
ReferenceBound reference_schedules_bound(const Instance& instance,
                                         const LengthLadder& ladder);

}  // namespace bmc
