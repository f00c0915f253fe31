#include "bmc/merge_tree.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>
#include <sstream>

namespace bmc {

MergeTree::MergeTree(int n, const std::vector<int>& left,
                     const std::vector<int>& right,
                     std::vector<double> lengths,
                     std::vector<double> read_rates) {
  n_ = n;
  if (static_cast<int>(left.size()) != n + 1 ||
      static_cast<int>(right.size()) != n + 1) {
    throw Error("malformed tree: link arrays must have size n+1");
  }
  left_ = left;
  right_ = right;
  parent_.assign(n + 1, 0);
  len_.assign(n + 1, 0.0);
  read_.assign(n + 1, 0.0);
  if (!lengths.empty()) {
    if (static_cast<int>(lengths.size()) != n ||
        static_cast<int>(read_rates.size()) != n) {
      throw Error("malformed tree: value arrays must have size n");
    }
    for (int k = 1; k <= n; ++k) {
      len_[k] = lengths[k - 1];
      read_[k] = read_rates[k - 1];
    }
  }
  std::vector<bool> is_child(n + 1, false);
  for (int k = 1; k <= n; ++k) {
    for (int c : {left_[k], right_[k]}) {
      if (c < 0 || c > n) throw Error("malformed tree: link out of range");
      if (c != 0) {
        if (is_child[c]) throw Error("malformed tree: node has two parents");
        is_child[c] = true;
        parent_[c] = k;
      }
    }
  }
  root_ = 0;
  for (int k = 1; k <= n; ++k) {
    if (!is_child[k]) {
      if (root_ != 0) throw Error("malformed tree: multiple roots");
      root_ = k;
    }
  }
  if (n > 0 && root_ == 0) throw Error("malformed tree: no root");
  validate();
  sub_len_.assign(n + 1, 0.0);
  sub_read_.assign(n + 1, 0.0);
  recompute_aggregates();
}

void MergeTree::validate() const {
  if (n_ == 0) return;
  // Preorder interval propagation: every key must be visited exactly once
  // and lie inside its BST interval.
  std::vector<std::array<int, 3>> stack;  // key, lo, hi
  stack.push_back({root_, 1, n_});
  int visited = 0;
  while (!stack.empty()) {
    auto [k, lo, hi] = stack.back();
    stack.pop_back();
    if (k < lo || k > hi) {
      throw Error("malformed tree: BST order violated at key " +
                  std::to_string(k));
    }
    ++visited;
    if (left_[k]) stack.push_back({left_[k], lo, k - 1});
    if (right_[k]) stack.push_back({right_[k], k + 1, hi});
  }
  if (visited != n_) {
    throw Error("malformed tree: disconnected nodes");
  }
}

void MergeTree::recompute_aggregates() {
  // Children precede parents when keys are processed by subtree size;
  // simplest is an explicit post-order.
  if (n_ == 0) return;
  std::vector<int> order;
  order.reserve(n_);
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int k = stack.back();
    stack.pop_back();
    order.push_back(k);
    if (left_[k]) stack.push_back(left_[k]);
    if (right_[k]) stack.push_back(right_[k]);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int k = *it;
    sub_len_[k] = len_[k] + (left_[k] ? sub_len_[left_[k]] : 0.0) +
                  (right_[k] ? sub_len_[right_[k]] : 0.0);
    sub_read_[k] = read_[k] + (left_[k] ? sub_read_[left_[k]] : 0.0) +
                   (right_[k] ? sub_read_[right_[k]] : 0.0);
  }
}

void MergeTree::ensure_depths() const {
  if (depths_valid_) return;
  ld_.assign(n_ + 1, 0);
  rd_.assign(n_ + 1, 0);
  if (n_ > 0) {
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      int k = stack.back();
      stack.pop_back();
      if (left_[k]) {
        ld_[left_[k]] = ld_[k] + 1;
        rd_[left_[k]] = rd_[k];
        stack.push_back(left_[k]);
      }
      if (right_[k]) {
        ld_[right_[k]] = ld_[k];
        rd_[right_[k]] = rd_[k] + 1;
        stack.push_back(right_[k]);
      }
    }
  }
  depths_valid_ = true;
}

int MergeTree::left_depth(int key) const {
  ensure_depths();
  return ld_[key];
}

int MergeTree::right_depth(int key) const {
  ensure_depths();
  return rd_[key];
}

int MergeTree::latency() const {
  ensure_depths();
  int best = 0;
  for (int k = 1; k <= n_; ++k) best = std::max(best, 1 + rd_[k]);
  return best;
}

std::vector<int> MergeTree::spine() const {
  std::vector<int> s;
  for (int k = root_; k != 0; k = right_[k]) s.push_back(k);
  return s;
}

bool MergeTree::on_spine(int key) const {
  for (int k = root_; k != 0; k = right_[k]) {
    if (k == key) return true;
  }
  return false;
}

void MergeTree::spine_insert(double length, double read_rate,
                             SpinePosition pos) {
  int m = n_ + 1;
  left_.push_back(0);
  right_.push_back(0);
  parent_.push_back(0);
  len_.push_back(length);
  read_.push_back(read_rate);
  sub_len_.push_back(length);
  sub_read_.push_back(read_rate);
  if (pos.append) {
    if (n_ == 0) {
      root_ = m;
    } else {
      int bottom = root_;
      while (right_[bottom]) {
        sub_len_[bottom] += length;
        sub_read_[bottom] += read_rate;
        bottom = right_[bottom];
      }
      sub_len_[bottom] += length;
      sub_read_[bottom] += read_rate;
      right_[bottom] = m;
      parent_[m] = bottom;
    }
  } else {
    int c = pos.above;
    if (c < 1 || c > n_ || !on_spine(c)) {
      left_.pop_back();
      right_.pop_back();
      parent_.pop_back();
      len_.pop_back();
      read_.pop_back();
      sub_len_.pop_back();
      sub_read_.pop_back();
      throw Error("spine_insert: key " + std::to_string(c) +
                  " is not on the right spine");
    }
    for (int k = root_; k != c; k = right_[k]) {
      sub_len_[k] += length;
      sub_read_[k] += read_rate;
    }
    int p = parent_[c];
    left_[m] = c;
    parent_[c] = m;
    parent_[m] = p;
    if (p == 0) {
      root_ = m;
    } else {
      right_[p] = m;
    }
    sub_len_[m] += sub_len_[c];
    sub_read_[m] += sub_read_[c];
  }
  n_ = m;
  depths_valid_ = false;
}

void MergeTree::key_intervals(std::vector<int>& lo, std::vector<int>& hi) const {
  lo.assign(n_ + 1, 0);
  hi.assign(n_ + 1, 0);
  if (n_ == 0) return;
  std::vector<std::array<int, 3>> stack;
  stack.push_back({root_, 1, n_});
  while (!stack.empty()) {
    auto [k, a, b] = stack.back();
    stack.pop_back();
    lo[k] = a;
    hi[k] = b;
    if (left_[k]) stack.push_back({left_[k], a, k - 1});
    if (right_[k]) stack.push_back({right_[k], k + 1, b});
  }
}

MergeTree schedule_to_tree(const Instance& instance, const Schedule& schedule) {
  int n = instance.size();
  if (schedule.size() != n) {
    throw ScheduleError(0, "schedule length does not match instance length");
  }
  // Stack sizes k_t, validated as we go.
  std::vector<int> k(n + 1, 0);
  for (int t = 1; t <= n; ++t) {
    int w = schedule.width(t);
    if (w < 1 || w > k[t - 1] + 1) {
      throw ScheduleError(t, "invalid width at t=" + std::to_string(t));
    }
    k[t] = k[t - 1] + 2 - w;
  }
  // by_k[d] lists the times with stack size d, ascending.
  std::vector<std::vector<int>> by_k(n + 2);
  for (int t = 1; t <= n; ++t) by_k[k[t]].push_back(t);

  std::vector<int> left(n + 1, 0), right(n + 1, 0);
  // Interval [i,j] at depth d: the root is the last t in [i,j] with
  // k_t = d + 1; its left subtree stays at depth d, the right one sits
  // one deeper.
  struct Item {
    int i, j, d, parent;
    bool is_left;
  };
  std::vector<Item> work;
  if (n > 0) work.push_back({1, n, 0, 0, false});
  int root = 0;
  while (!work.empty()) {
    auto [i, j, d, parent, is_left] = work.back();
    work.pop_back();
    if (i > j) continue;
    const auto& times = by_k[d + 1];
    auto it = std::upper_bound(times.begin(), times.end(), j);
    if (it == times.begin() || *std::prev(it) < i) {
      throw InternalError("schedule_to_tree: no stack-size-" +
                          std::to_string(d + 1) + " time in [" +
                          std::to_string(i) + "," + std::to_string(j) + "]");
    }
    int s = *std::prev(it);
    if (parent == 0) {
      root = s;
    } else if (is_left) {
      left[parent] = s;
    } else {
      right[parent] = s;
    }
    work.push_back({i, s - 1, d, s, true});
    work.push_back({s + 1, j, d + 1, s, false});
  }
  (void)root;
  return MergeTree(n, left, right, instance.lengths(), instance.read_rates());
}

Schedule tree_to_schedule(const MergeTree& tree) {
  int n = tree.size();
  std::vector<int> widths(n);
  int prev_k = 0;
  for (int t = 1; t <= n; ++t) {
    int kt = 1 + tree.right_depth(t);
    int w = prev_k + 2 - kt;
    if (w < 1 || w > prev_k + 1) {
      throw InternalError("tree_to_schedule: inconsistent right depths at t=" +
                          std::to_string(t));
    }
    widths[t - 1] = w;
    prev_k = kt;
  }
  return Schedule(std::move(widths));
}

double tree_cost(const MergeTree& tree, const Instance& instance,
                 const CostModel& model) {
  if (tree.size() != instance.size()) {
    throw Error("tree_cost: tree size does not match instance length");
  }
  double total = 0;
  for (int t = 1; t <= tree.size(); ++t) {
    int k = 1 + tree.right_depth(t);
    if (!model.feasible(k)) {
      throw InfeasibleError(t, "tree latency exceeds K at key " +
                                   std::to_string(t));
    }
    total += instance.length(t) * (1 + tree.left_depth(t)) +
             instance.read_rate(t) * model.read_cost(k);
  }
  return total;
}

double tree_lower_bound(const MergeTree& tree, const Instance& instance) {
  if (tree.size() != instance.size()) {
    throw Error("tree_lower_bound: tree size does not match instance length");
  }
  std::vector<int> lo, hi;
  tree.key_intervals(lo, hi);
  double total = 0;
  for (int t = 1; t <= tree.size(); ++t) {
    double left_len = instance.len_sum(lo[t], t - 1);
    double right_read = instance.read_sum(t + 1, hi[t]);
    total += instance.length(t) + instance.read_rate(t) +
             std::min(left_len, right_read);
  }
  return total;
}

void serialize_tree(std::ostream& out, const MergeTree& tree) {
  for (int k = 1; k <= tree.size(); ++k) {
    out << k << ',' << tree.left(k) << ',' << tree.right(k) << '\n';
  }
}

std::string serialize_tree(const MergeTree& tree) {
  std::ostringstream os;
  serialize_tree(os, tree);
  return os.str();
}

MergeTree parse_tree(std::istream& in) {
  std::vector<int> left{0}, right{0};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    int key = 0, l = 0, r = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto take = [&](int& v) {
      auto [np, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        throw Error("tree line " + std::to_string(lineno) + ": parse error");
      }
      p = np;
      if (p != end && *p == ',') ++p;
    };
    take(key);
    take(l);
    take(r);
    if (key != static_cast<int>(left.size())) {
      throw Error("tree line " + std::to_string(lineno) +
                  ": keys must appear in order 1..n");
    }
    left.push_back(l);
    right.push_back(r);
  }
  int n = static_cast<int>(left.size()) - 1;
  return MergeTree(n, left, right);
}

}  // namespace bmc
