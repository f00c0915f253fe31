#include "bmc/offline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>

namespace bmc {

namespace {

constexpr double kHuge = std::numeric_limits<double>::max() / 4;

// Dense (n+2)x(n+2) table, 1-based rows/columns with padding so that
// [i][s-1] and [s+1][j] never index out of range.
class Table {
 public:
  explicit Table(int n) : n_(n), stride_(n + 2), cost_((n + 2) * (n + 2), 0.0) {}
  double& at(int i, int j) { return cost_[i * stride_ + j]; }
  double at(int i, int j) const { return cost_[i * stride_ + j]; }
  const double* row(int i) const { return &cost_[i * stride_]; }

 private:
  int n_, stride_;
  std::vector<double> cost_;
};

class SplitTable {
 public:
  explicit SplitTable(int n) : stride_(n + 2), s_((n + 2) * (n + 2), 0) {}
  uint32_t& at(int i, int j) { return s_[i * stride_ + j]; }
  uint32_t at(int i, int j) const { return s_[i * stride_ + j]; }

 private:
  int stride_;
  std::vector<uint32_t> s_;
};

// Fills `out` (and its transpose) for one depth given the next depth's
// transposed table (nullptr means depth+1 must stay empty: split s = j).
void fill_depth(const Instance& inst, double fd1, const Table* next_t,
                bool self_reference, Table& out, Table& out_t,
                SplitTable& split) {
  int n = inst.size();
  for (int len = 1; len <= n; ++len) {
    for (int i = 1; i + len - 1 <= n; ++i) {
      int j = i + len - 1;
      double best;
      int best_s;
      if (next_t == nullptr && !self_reference) {
        // Innermost depth: the right subproblem must be empty.
        best = out.at(i, j - 1) + inst.len_sum(i, j) +
               fd1 * inst.read_sum(j, j);
        best_s = j;
      } else {
        best = kHuge;
        best_s = i;
        const double* row_a = out.row(i);
        const Table& bt = self_reference ? out_t : *next_t;
        const double* col_b = bt.row(j);
        double pl_i = inst.len_sum(1, i - 1);
        double pr_j = inst.read_sum(1, j);
        for (int s = i; s <= j; ++s) {
          double v = row_a[s - 1] + (inst.len_sum(1, s) - pl_i) +
                     fd1 * (pr_j - inst.read_sum(1, s - 1)) + col_b[s + 1];
          if (v < best) {
            best = v;
            best_s = s;
          }
        }
      }
      out.at(i, j) = best;
      out_t.at(j, i) = best;
      split.at(i, j) = static_cast<uint32_t>(best_s);
    }
  }
}

// Rebuilds the optimal tree from split tables. `split_for_depth` maps a
// depth to its split table (the same table at every depth for the
// linear model).
template <typename SplitFor>
MergeTree tree_from_splits(const Instance& inst, SplitFor&& split_for_depth) {
  int n = inst.size();
  std::vector<int> left(n + 1, 0), right(n + 1, 0);
  struct Item {
    int i, j, d, parent;
    bool is_left;
  };
  std::vector<Item> work;
  if (n > 0) work.push_back({1, n, 0, 0, false});
  while (!work.empty()) {
    auto [i, j, d, parent, is_left] = work.back();
    work.pop_back();
    if (i > j) continue;
    int s = static_cast<int>(split_for_depth(d).at(i, j));
    if (s < i || s > j) throw InternalError("dp_opt: corrupt split table");
    if (parent != 0) {
      (is_left ? left[parent] : right[parent]) = s;
    }
    work.push_back({i, s - 1, d, s, true});
    work.push_back({s + 1, j, d + 1, s, false});
  }
  return MergeTree(n, left, right, inst.lengths(), inst.read_rates());
}

OptResult result_from_tree(double cost, MergeTree tree) {
  OptResult r;
  r.cost = cost;
  r.schedule = tree_to_schedule(tree);
  r.tree = std::move(tree);
  return r;
}

OptResult dp_linear(const Instance& inst) {
  int n = inst.size();
  Table cost(n), cost_t(n);
  SplitTable split(n);
  fill_depth(inst, 1.0, nullptr, /*self_reference=*/true, cost, cost_t, split);
  auto tree = tree_from_splits(inst, [&](int) -> const SplitTable& {
    return split;
  });
  return result_from_tree(cost.at(1, n), std::move(tree));
}

OptResult dp_capped(const Instance& inst, int k) {
  int n = inst.size();
  int depths = std::min(k, n);
  std::vector<SplitTable> splits;
  splits.reserve(depths);
  for (int d = 0; d < depths; ++d) splits.emplace_back(n);

  // Depths are filled bottom-up; only the next depth's transpose is kept.
  Table next_t(0);
  double root_cost = 0;
  for (int d = depths - 1; d >= 0; --d) {
    Table out(n), out_t(n);
    fill_depth(inst, 0.0, d == depths - 1 ? nullptr : &next_t,
               /*self_reference=*/false, out, out_t, splits[d]);
    if (d == 0) root_cost = out.at(1, n);
    next_t = std::move(out_t);
  }
  auto tree = tree_from_splits(inst, [&](int d) -> const SplitTable& {
    if (d >= depths) throw InternalError("dp_opt: depth exceeds capped budget");
    return splits[d];
  });
  return result_from_tree(root_cost, std::move(tree));
}

OptResult dp_general(const Instance& inst, const CostModel& model) {
  int n = inst.size();
  // Depth d is reachable only with d < i, so d <= n-1. Cost tables are
  // transient (only the next depth's transpose is live); splits are kept
  // for reconstruction.
  std::vector<std::unique_ptr<SplitTable>> split(n);
  std::vector<double> fd1(n);
  for (int d = 0; d < n; ++d) fd1[d] = model.shifted_unit(d);
  std::unique_ptr<Table> next_t;
  double root_cost = 0;
  for (int d = n - 1; d >= 0; --d) {
    Table out(n);
    auto out_t = std::make_unique<Table>(n);
    split[d] = std::make_unique<SplitTable>(n);
    fill_depth(inst, fd1[d], next_t.get(), /*self_reference=*/false, out,
               *out_t, *split[d]);
    if (d == 0) root_cost = out.at(1, n);
    next_t = std::move(out_t);
  }
  auto tree = tree_from_splits(inst, [&](int d) -> const SplitTable& {
    return *split[d];
  });
  return result_from_tree(root_cost, std::move(tree));
}

}  // namespace

OptResult dp_opt(const Instance& instance, const CostModel& model) {
  if (instance.size() == 0) return {};
  switch (model.kind()) {
    case CostModel::Kind::Linear:
      return dp_linear(instance);
    case CostModel::Kind::CappedK:
      return dp_capped(instance, model.cap());
    case CostModel::Kind::General:
      return dp_general(instance, model);
  }
  throw InternalError("dp_opt: unknown model kind");
}

namespace {

struct BruteForce {
  const Instance& inst;
  const CostModel& model;
  std::vector<double> stack{};
  std::vector<int> widths{};
  std::vector<int> best_widths{};
  double best = kHuge;
  double cost = 0;

  void search(int t) {
    int n = inst.size();
    if (cost >= best) return;
    if (t > n) {
      best = cost;
      best_widths = widths;
      return;
    }
    stack.push_back(inst.length(t));
    int files = static_cast<int>(stack.size());
    for (int w = 1; w <= files; ++w) {
      int k_after = files - w + 1;
      if (!model.feasible(k_after)) continue;
      // Merge the top w files, remembering them for the undo.
      std::vector<double> saved(stack.end() - w, stack.end());
      double merged = 0;
      for (double v : saved) merged += v;
      stack.resize(files - w);
      stack.push_back(merged);
      double step = merged + inst.read_rate(t) * model.read_cost(k_after);
      cost += step;
      widths.push_back(w);
      search(t + 1);
      widths.pop_back();
      cost -= step;
      stack.pop_back();
      stack.insert(stack.end(), saved.begin(), saved.end());
    }
    stack.pop_back();
  }
};

}  // namespace

OptResult brute_force_opt(const Instance& instance, const CostModel& model,
                          int max_n) {
  if (instance.size() > max_n) {
    throw Error("brute_force_opt: n=" + std::to_string(instance.size()) +
                " exceeds max_n=" + std::to_string(max_n));
  }
  if (instance.size() == 0) return {};
  BruteForce bf{instance, model};
  bf.search(1);
  if (bf.best >= kHuge) {
    throw InternalError("brute_force_opt: no feasible schedule found");
  }
  OptResult r;
  r.cost = bf.best;
  r.schedule = Schedule(bf.best_widths);
  r.tree = schedule_to_tree(instance, r.schedule);
  return r;
}

ApproxResult approx2_linear(const Instance& instance) {
  int n = instance.size();
  std::vector<int> left(n + 1, 0), right(n + 1, 0);
  struct Item {
    int i, j, parent;
    bool is_left;
  };
  std::vector<Item> work;
  if (n > 0) work.push_back({1, n, 0, false});
  while (!work.empty()) {
    auto [i, j, parent, is_left] = work.back();
    work.pop_back();
    if (i > j) continue;
    // Largest s in [i, j] with l[i, s-1] <= r[s, j]; the predicate is
    // monotone (true then false) and true at s = i.
    int lo = i, hi = j;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (instance.len_sum(i, mid - 1) <= instance.read_sum(mid, j)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    int s = lo;
    if (parent != 0) {
      (is_left ? left[parent] : right[parent]) = s;
    }
    work.push_back({i, s - 1, s, true});
    work.push_back({s + 1, j, s, false});
  }
  ApproxResult r;
  r.tree = MergeTree(n, left, right, instance.lengths(), instance.read_rates());
  r.cost = tree_cost(r.tree, instance, CostModel::linear());
  return r;
}

double binomial_capacity(int left_budget, int right_budget) {
  if (left_budget < 0 || right_budget < 0) return 0;
  // Solves cap(d,b) = 1 + cap(d-1,b) + cap(d,b-1):
  // cap = C(d+b+2, d+1) - 1, computed multiplicatively with saturation.
  double cap = 1;
  int top = left_budget + right_budget + 2;
  int choose = left_budget + 1;
  for (int i = 1; i <= choose; ++i) {
    cap = cap * (top - choose + i) / i;
    if (cap > 1e18) return 1e18;
  }
  return cap - 1;
}

UniformOpt uniform_opt_cappedK(const UniformParams& params, int k) {
  if (k < 1) throw Error("uniform_opt_cappedK: K must be >= 1");
  int n = params.n;
  UniformOpt out;
  if (n == 0) return out;
  int rb = k - 1;  // right budget: right depth < K

  // Cells (a, b) hold C(a+b, a) positions: left depth a, right depth b.
  // Saturates well above any representable n.
  constexpr long long kSat = (1LL << 62);
  auto cell_count = [&](int a, int b) -> long long {
    double c = 1;
    for (int i = 1; i <= std::min(a, b); ++i) {
      c = c * (std::max(a, b) + i) / i;
      if (c > 9e17) return kSat;
    }
    return std::llround(c);
  };

  // Smallest max left depth whose rows cover n nodes.
  int dstar = 0;
  long long filled = 0;
  auto row_count = [&](int a) {
    long long total = 0;
    for (int b = 0; b <= rb; ++b) {
      total += cell_count(a, b);
      if (total >= kSat) return kSat;
    }
    return total;
  };
  while (filled + row_count(dstar) < n) {
    filled += row_count(dstar);
    ++dstar;
    if (dstar > n) throw InternalError("uniform_opt_cappedK: fill overflow");
  }
  long long remainder = n - filled;

  // Per-cell quotas: full below level dstar, b-ascending fill at dstar.
  std::vector<std::vector<long long>> quota(dstar + 1,
                                            std::vector<long long>(rb + 1, 0));
  for (int a = 0; a < dstar; ++a) {
    for (int b = 0; b <= rb; ++b) quota[a][b] = cell_count(a, b);
  }
  for (int b = 0; b <= rb && remainder > 0; ++b) {
    long long take = std::min(cell_count(dstar, b), remainder);
    quota[dstar][b] = take;
    remainder -= take;
  }
  if (remainder > 0) throw InternalError("uniform_opt_cappedK: quota deficit");

  // Allocate positions depth-first; a position is realized whenever its
  // cell still has quota. All ancestors of a quota-bearing cell sit in
  // full cells, so nothing is stranded.
  struct Tmp {
    int left = 0, right = 0, a = 0;
  };
  std::vector<Tmp> nodes(1);  // index 0 unused
  long long total_left_depth = 0;
  struct Pos {
    int id, a, b;
  };
  std::vector<Pos> stack;
  if (quota[0][0] <= 0) throw InternalError("uniform_opt_cappedK: empty root");
  --quota[0][0];
  nodes.push_back({0, 0, 0});
  stack.push_back({1, 0, 0});
  while (!stack.empty()) {
    auto [id, a, b] = stack.back();
    stack.pop_back();
    if (a + 1 <= dstar && quota[a + 1][b] > 0) {
      --quota[a + 1][b];
      nodes.push_back({0, 0, a + 1});
      total_left_depth += a + 1;
      int cid = static_cast<int>(nodes.size()) - 1;
      nodes[id].left = cid;
      stack.push_back({cid, a + 1, b});
    }
    if (b + 1 <= rb && quota[a][b + 1] > 0) {
      --quota[a][b + 1];
      nodes.push_back({0, 0, a});
      total_left_depth += a;
      int cid = static_cast<int>(nodes.size()) - 1;
      nodes[id].right = cid;
      stack.push_back({cid, a, b + 1});
    }
  }
  if (static_cast<int>(nodes.size()) - 1 != n) {
    throw InternalError("uniform_opt_cappedK: allocated " +
                        std::to_string(nodes.size() - 1) + " nodes, wanted " +
                        std::to_string(n));
  }

  // In-order traversal assigns keys 1..n.
  std::vector<int> key_of(nodes.size(), 0);
  {
    std::vector<std::pair<int, bool>> st;  // (id, expanded)
    st.push_back({1, false});
    int next_key = 0;
    while (!st.empty()) {
      auto [id, expanded] = st.back();
      st.pop_back();
      if (!expanded) {
        if (nodes[id].right) st.push_back({nodes[id].right, false});
        st.push_back({id, true});
        if (nodes[id].left) st.push_back({nodes[id].left, false});
      } else {
        key_of[id] = ++next_key;
      }
    }
  }
  std::vector<int> left(n + 1, 0), right(n + 1, 0);
  for (size_t id = 1; id < nodes.size(); ++id) {
    int key = key_of[id];
    if (nodes[id].left) left[key] = key_of[nodes[id].left];
    if (nodes[id].right) right[key] = key_of[nodes[id].right];
  }
  out.tree = MergeTree(n, left, right,
                       std::vector<double>(n, params.mean_length),
                       std::vector<double>(n, params.mean_read));
  out.cost = params.mean_length * (n + static_cast<double>(total_left_depth));
  return out;
}

UniformOpt uniform_opt_linear(const UniformParams& params) {
  int n = params.n;
  UniformOpt out;
  if (n == 0) return out;
  double lbar = params.mean_length, rbar = params.mean_read;
  std::vector<double> opt(n + 1, 0.0);
  std::vector<int> split(n + 1, 0);
  for (int m = 1; m <= n; ++m) {
    double best = kHuge;
    int best_s = 1;
    for (int s = 1; s <= m; ++s) {
      double v = opt[s - 1] + s * lbar + (m - s + 1) * rbar + opt[m - s];
      if (v < best) {
        best = v;
        best_s = s;
      }
    }
    opt[m] = best;
    split[m] = best_s;
  }
  std::vector<int> left(n + 1, 0), right(n + 1, 0);
  struct Item {
    int i, j, parent;
    bool is_left;
  };
  std::vector<Item> work{{1, n, 0, false}};
  while (!work.empty()) {
    auto [i, j, parent, is_left] = work.back();
    work.pop_back();
    if (i > j) continue;
    int s = i + split[j - i + 1] - 1;
    if (parent != 0) {
      (is_left ? left[parent] : right[parent]) = s;
    }
    work.push_back({i, s - 1, s, true});
    work.push_back({s + 1, j, s, false});
  }
  out.tree = MergeTree(n, left, right, std::vector<double>(n, lbar),
                       std::vector<double>(n, rbar));
  out.cost = opt[n];
  return out;
}

double solve_beta(double mean_length, double mean_read) {
  if (mean_length <= 0 || mean_read <= 0) {
    throw Error("solve_beta: means must be positive");
  }
  auto g = [&](double beta) {
    return std::exp2(-mean_length / beta) + std::exp2(-mean_read / beta) - 1.0;
  };
  double lo = 0.0;
  double hi = std::max(mean_length, mean_read);
  // g is strictly increasing with g(0+) = -1 and g(hi) >= 0.
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) >= 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double c_K(int k) {
  if (k < 1) throw Error("c_K: K must be >= 1");
  return (k + 1) * std::exp(-std::lgamma(k + 1.0) / k);
}

}  // namespace bmc
