#pragma once

#include "bmc/core.hpp"
#include "bmc/merge_tree.hpp"

namespace bmc {

struct OptResult {
  double cost = 0;
  Schedule schedule;
  MergeTree tree;
};

/// Exact offline optimum via the interval recurrence
///   OPT_d[i,j] = min_s OPT_d[i,s-1] + l[i,s] + r[s,j] f_d(1) + OPT_{d+1}[s+1,j].
/// O(n^3) for the linear model (depth-independent), O(K n^3) capped,
/// O(n^4) general. Ties break toward the smallest split.
OptResult dp_opt(const Instance& instance, const CostModel& model);

/// Exhaustive minimum over all schedules; the ground-truth oracle for
/// dp_opt. Refuses instances longer than max_n.
OptResult brute_force_opt(const Instance& instance, const CostModel& model,
                          int max_n = 12);

struct ApproxResult {
  MergeTree tree;
  double cost = 0;
};

/// Linear-model 2-approximation: balanced split by prefix length vs
/// suffix read mass, found by binary search per node. The per-node
/// searches make the construction O(n log n) worst case after the O(n)
/// prefix-sum preprocessing.
ApproxResult approx2_linear(const Instance& instance);

/// Uniform instance parameters (all steps identical).
struct UniformParams {
  double mean_length = 0;
  double mean_read = 0;
  int n = 0;
};

struct UniformOpt {
  double cost = 0;
  MergeTree tree;
};

/// Exact capped-K optimum on the uniform instance: tree with right-depth
/// < K filled level by level of increasing left-depth. O(n) nodes built.
UniformOpt uniform_opt_cappedK(const UniformParams& params, int k);

/// Exact linear-model optimum on the uniform instance via the
/// length-indexed DP (subproblem cost depends only on interval length).
UniformOpt uniform_opt_linear(const UniformParams& params);

/// Nodes a subtree can hold with at most `left_budget` further left
/// edges and `right_budget` right edges on any path.
double binomial_capacity(int left_budget, int right_budget);

/// Solves 2^(-lbar/beta) + 2^(-rbar/beta) = 1 by bisection (abs 1e-12).
double solve_beta(double mean_length, double mean_read);

/// (K+1)/(K!)^{1/K}; approaches e for large K.
double c_K(int k);

}  // namespace bmc
