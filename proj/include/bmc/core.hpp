#pragma once

#include <functional>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A schedule width was structurally invalid at time `t`.
class ScheduleError : public Error {
 public:
  ScheduleError(int t, const std::string& what) : Error(what), t(t) {}
  int t;
};

/// A capped-K run exceeded its stack budget at time `t`.
class InfeasibleError : public Error {
 public:
  InfeasibleError(int t, const std::string& what) : Error(what), t(t) {}
  int t;
};

/// An internal invariant was violated (a bug, not an input condition).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Relative/absolute tolerance used by comparison helpers throughout.
inline constexpr double kRelTol = 1e-9;

inline bool approx_eq(double a, double b, double rel = kRelTol,
                      double abs = 1e-12) {
  double diff = a > b ? a - b : b - a;
  double scale = std::max(a > 0 ? a : -a, b > 0 ? b : -b);
  return diff <= abs || diff <= rel * scale;
}

/// Time-ordered sequence of (length, read rate) pairs, indexed t = 1..n.
/// Prefix sums are precomputed so interval sums are O(1).
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<double> lengths, std::vector<double> read_rates);

  static Instance uniform(double mean_length, double mean_read, int n);

  int size() const { return static_cast<int>(len_.size()); }
  bool empty() const { return len_.empty(); }

  double length(int t) const { return len_[t - 1]; }
  double read_rate(int t) const { return read_[t - 1]; }

  /// Sum of lengths over [i, j], inclusive; 0 when i > j.
  double len_sum(int i, int j) const {
    return j < i ? 0.0 : plen_[j] - plen_[i - 1];
  }
  /// Sum of read rates over [i, j], inclusive; 0 when i > j.
  double read_sum(int i, int j) const {
    return j < i ? 0.0 : pread_[j] - pread_[i - 1];
  }

  double total_length() const { return plen_.empty() ? 0.0 : plen_.back(); }
  double total_read() const { return pread_.empty() ? 0.0 : pread_.back(); }

  /// First m steps as a new instance.
  Instance prefix(int m) const;

  const std::vector<double>& lengths() const { return len_; }
  const std::vector<double>& read_rates() const { return read_; }

 private:
  std::vector<double> len_, read_;
  std::vector<double> plen_, pread_;  // plen_[t] = sum of len_[0..t-1]
};

/// Read-cost function family: capped-K, linear, or a general
/// non-decreasing f over positive integers.
class CostModel {
 public:
  enum class Kind { CappedK, Linear, General };

  static CostModel capped(int k);
  static CostModel linear();
  static CostModel general(std::function<double(int)> f,
                           std::string name = "general");

  Kind kind() const { return kind_; }
  int cap() const { return cap_; }

  /// False only for capped-K stacks above the cap.
  bool feasible(int stack_size) const {
    return kind_ != Kind::CappedK || stack_size <= cap_;
  }

  /// f(k). Precondition: feasible(k).
  double read_cost(int k) const;

  /// f_d(1) = f(1+d) - f(d), with f_0 = f. Used by the interval DP.
  /// Precondition for capped-K: d + 1 <= cap.
  double shifted_unit(int d) const;

  const std::string& name() const { return name_; }

 private:
  CostModel(Kind kind, int cap, std::function<double(int)> f,
            std::string name)
      : kind_(kind), cap_(cap), f_(std::move(f)), name_(std::move(name)) {}

  Kind kind_;
  int cap_ = 0;
  std::function<double(int)> f_;
  std::string name_;
};

/// Per-step merge widths j_1..j_n, each counting the newly inserted file.
struct Schedule {
  std::vector<int> widths;

  Schedule() = default;
  explicit Schedule(std::vector<int> w) : widths(std::move(w)) {}

  int size() const { return static_cast<int>(widths.size()); }
  int width(int t) const { return widths[t - 1]; }
};

struct StepRecord {
  double merge_cost = 0;  // L_t
  double read_cost = 0;   // r_t * f(k_t)
  int stack_size = 0;     // k_t
};

struct SimulationTrace {
  std::vector<StepRecord> steps;
  /// Stack contents after each step, bottom to top. Only filled when
  /// requested; quadratic in the worst case.
  std::vector<std::vector<double>> stacks;
  std::vector<double> final_stack;  // bottom to top
  double total_merge = 0;
  double total_read = 0;
  double total_cost = 0;
  int max_stack = 0;
};

struct SimulateOptions {
  bool record_stacks = false;
};

/// Scores `schedule` against `instance` under `model`. Throws
/// ScheduleError on an out-of-range width and InfeasibleError when a
/// capped-K stack exceeds its cap, both identifying the offending time.
SimulationTrace simulate(const Instance& instance, const Schedule& schedule,
                         const CostModel& model,
                         const SimulateOptions& options = {});

/// Total cost convenience wrapper around simulate().
double cost_of(const Instance& instance, const Schedule& schedule,
               const CostModel& model);

struct Validity {
  enum class Status { Valid, InvalidWidth, Infeasible };
  Status status = Status::Valid;
  int t = 0;  // first offending time when not valid
  std::string message = "valid";

  bool ok() const { return status == Status::Valid; }
};

/// Non-throwing validity report: first violated width bound or capped-K
/// violation, or "valid".
Validity validate_schedule(const Instance& instance, const Schedule& schedule,
                           const CostModel& model);

/// Incremental stack simulator used by policy runners and the adversary.
/// Push one (length, width) step at a time; maintains costs and the stack.
class StackSim {
 public:
  explicit StackSim(CostModel model) : model_(std::move(model)) {}

  /// Applies one step; returns the merge cost L_t. Throws like simulate().
  double step(double length, double read_rate, int width);

  int stack_size() const { return static_cast<int>(stack_.size()); }
  int time() const { return t_; }
  int max_stack() const { return max_stack_; }
  double total_merge() const { return total_merge_; }
  double total_read() const { return total_read_; }
  double total_cost() const { return total_merge_ + total_read_; }
  const std::vector<double>& stack() const { return stack_; }

 private:
  CostModel model_;
  std::vector<double> stack_;  // top at end
  int t_ = 0;
  int max_stack_ = 0;
  double total_merge_ = 0;
  double total_read_ = 0;
};

}  // namespace bmc
