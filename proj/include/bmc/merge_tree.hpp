#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bmc/core.hpp"

namespace bmc {

/// Binary search tree over keys 1..n, the bijective image of a schedule.
/// Stored as index-based node arrays; key k lives at index k. Subtree
/// aggregates over the arrival values are maintained incrementally on
/// spine insertion; depth caches are recomputed lazily.
class MergeTree {
 public:
  MergeTree() = default;

  /// Builds from explicit links (0 = none). Validates BST structure.
  /// `lengths`/`read_rates` give per-key arrival values; pass empty
  /// vectors for a values-free structural tree.
  MergeTree(int n, const std::vector<int>& left, const std::vector<int>& right,
            std::vector<double> lengths = {}, std::vector<double> read_rates = {});

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }
  int root() const { return root_; }
  int left(int key) const { return left_[key]; }
  int right(int key) const { return right_[key]; }
  int parent(int key) const { return parent_[key]; }

  double node_length(int key) const { return len_[key]; }
  double node_read(int key) const { return read_[key]; }

  /// Subtree aggregates: sums over T_key of arrival values.
  double sub_len(int key) const { return sub_len_[key]; }
  double sub_read(int key) const { return sub_read_[key]; }
  /// Aggregates over the left / right subtree, 0 when empty.
  double left_len(int key) const {
    return left_[key] ? sub_len_[left_[key]] : 0.0;
  }
  double right_read(int key) const {
    return right_[key] ? sub_read_[right_[key]] : 0.0;
  }

  int left_depth(int key) const;
  int right_depth(int key) const;

  /// max_t (1 + right_depth(t)); 0 for the empty tree.
  int latency() const;

  /// Keys on the right spine, root first (bottom of stack first).
  std::vector<int> spine() const;
  bool on_spine(int key) const;

  struct SpinePosition {
    bool append = true;
    int above = 0;  // spine key displaced by the new node when !append

    static SpinePosition Append() { return {true, 0}; }
    static SpinePosition Above(int key) { return {false, key}; }
  };

  /// Inserts key n+1 carrying the given arrival values. Either appends
  /// below the spine bottom or takes a spine node's place, making that
  /// node its left child. Relations among existing nodes never change;
  /// aggregates are updated along the spine. Throws if `pos.above` is
  /// not on the right spine.
  void spine_insert(double length, double read_rate, SpinePosition pos);

  /// Subtree key intervals [lo, hi] per key; index 0 unused.
  void key_intervals(std::vector<int>& lo, std::vector<int>& hi) const;

 private:
  void ensure_depths() const;
  void recompute_aggregates();
  void validate() const;

  int n_ = 0;
  int root_ = 0;
  std::vector<int> left_{0}, right_{0}, parent_{0};
  std::vector<double> len_{0.0}, read_{0.0};
  std::vector<double> sub_len_{0.0}, sub_read_{0.0};
  mutable std::vector<int> ld_, rd_;
  mutable bool depths_valid_ = false;
};

/// Builds the tree of a schedule. For every t the result has
/// k_t = 1 + right_depth(t). Throws on invalid schedules.
MergeTree schedule_to_tree(const Instance& instance, const Schedule& schedule);

/// Inverse bijection. Round trips are exact.
Schedule tree_to_schedule(const MergeTree& tree);

/// cost_f(T) = sum over t of l_t(1 + left_depth) + r_t f(1 + right_depth).
/// Equals the simulated cost of the corresponding schedule.
double tree_cost(const MergeTree& tree, const Instance& instance,
                 const CostModel& model);

/// Linear-model lower bound on OPT:
/// sum over t of l_t + r_t + min(l[L_t], r[R_t]).
double tree_lower_bound(const MergeTree& tree, const Instance& instance);

/// Newline-delimited `key,left_child_key_or_0,right_child_key_or_0`.
void serialize_tree(std::ostream& out, const MergeTree& tree);
std::string serialize_tree(const MergeTree& tree);
MergeTree parse_tree(std::istream& in);

}  // namespace bmc
