#include "bmc/core.hpp"

#include <algorithm>
#include <cmath>

namespace bmc {

Instance::Instance(std::vector<double> lengths, std::vector<double> read_rates)
    : len_(std::move(lengths)), read_(std::move(read_rates)) {
  if (len_.size() != read_.size()) {
    throw Error("instance: lengths and read rates must have equal size");
  }
  plen_.resize(len_.size() + 1, 0.0);
  pread_.resize(len_.size() + 1, 0.0);
  for (size_t i = 0; i < len_.size(); ++i) {
    if (len_[i] < 0 || read_[i] < 0) {
      throw Error("instance: negative length or read rate at t=" +
                  std::to_string(i + 1));
    }
    plen_[i + 1] = plen_[i] + len_[i];
    pread_[i + 1] = pread_[i] + read_[i];
  }
}

Instance Instance::uniform(double mean_length, double mean_read, int n) {
  return Instance(std::vector<double>(n, mean_length),
                  std::vector<double>(n, mean_read));
}

Instance Instance::prefix(int m) const {
  m = std::min(m, size());
  return Instance(std::vector<double>(len_.begin(), len_.begin() + m),
                  std::vector<double>(read_.begin(), read_.begin() + m));
}

CostModel CostModel::capped(int k) {
  if (k < 1) throw Error("capped model requires K >= 1");
  return CostModel(Kind::CappedK, k, {}, "capped:" + std::to_string(k));
}

CostModel CostModel::linear() {
  return CostModel(Kind::Linear, 0, {}, "linear");
}

CostModel CostModel::general(std::function<double(int)> f, std::string name) {
  if (!f) throw Error("general model requires a cost function");
  return CostModel(Kind::General, 0, std::move(f), std::move(name));
}

double CostModel::read_cost(int k) const {
  switch (kind_) {
    case Kind::CappedK:
      if (k > cap_) {
        throw InfeasibleError(0, "read_cost queried above capped-K budget");
      }
      return 0.0;
    case Kind::Linear:
      return static_cast<double>(k);
    case Kind::General:
      return f_(k);
  }
  return 0.0;
}

double CostModel::shifted_unit(int d) const {
  switch (kind_) {
    case Kind::CappedK:
      if (d + 1 > cap_) {
        throw InfeasibleError(0, "shifted_unit queried above capped-K budget");
      }
      return 0.0;
    case Kind::Linear:
      return 1.0;
    case Kind::General:
      return d == 0 ? f_(1) : f_(1 + d) - f_(d);
  }
  return 0.0;
}

double StackSim::step(double length, double read_rate, int width) {
  ++t_;
  stack_.push_back(length);
  int files = static_cast<int>(stack_.size());
  if (width < 1 || width > files) {
    throw ScheduleError(
        t_, "invalid width " + std::to_string(width) + " at t=" +
                std::to_string(t_) + " (only " + std::to_string(files) +
                " files present)");
  }
  double merged = 0;
  for (int i = 0; i < width; ++i) {
    merged += stack_.back();
    stack_.pop_back();
  }
  stack_.push_back(merged);
  total_merge_ += merged;
  int k = static_cast<int>(stack_.size());
  max_stack_ = std::max(max_stack_, k);
  if (!model_.feasible(k)) {
    throw InfeasibleError(
        t_, "stack size " + std::to_string(k) + " exceeds K=" +
                std::to_string(model_.cap()) + " at t=" + std::to_string(t_));
  }
  total_read_ += read_rate * model_.read_cost(k);
  return merged;
}

SimulationTrace simulate(const Instance& instance, const Schedule& schedule,
                         const CostModel& model,
                         const SimulateOptions& options) {
  if (schedule.size() != instance.size()) {
    throw ScheduleError(0, "schedule length " + std::to_string(schedule.size()) +
                               " does not match instance length " +
                               std::to_string(instance.size()));
  }
  SimulationTrace trace;
  trace.steps.reserve(instance.size());
  StackSim sim(model);
  for (int t = 1; t <= instance.size(); ++t) {
    double r = instance.read_rate(t);
    double merged = sim.step(instance.length(t), r, schedule.width(t));
    StepRecord rec;
    rec.merge_cost = merged;
    rec.stack_size = sim.stack_size();
    rec.read_cost = r * model.read_cost(rec.stack_size);
    trace.steps.push_back(rec);
    if (options.record_stacks) trace.stacks.push_back(sim.stack());
  }
  trace.final_stack = sim.stack();
  trace.total_merge = sim.total_merge();
  trace.total_read = sim.total_read();
  trace.total_cost = sim.total_cost();
  trace.max_stack = sim.max_stack();
  return trace;
}

double cost_of(const Instance& instance, const Schedule& schedule,
               const CostModel& model) {
  return simulate(instance, schedule, model).total_cost;
}

Validity validate_schedule(const Instance& instance, const Schedule& schedule,
                           const CostModel& model) {
  Validity v;
  if (schedule.size() != instance.size()) {
    v.status = Validity::Status::InvalidWidth;
    v.t = 0;
    v.message = "schedule length does not match instance length";
    return v;
  }
  int k = 0;
  for (int t = 1; t <= instance.size(); ++t) {
    int w = schedule.width(t);
    if (w < 1 || w > k + 1) {
      v.status = Validity::Status::InvalidWidth;
      v.t = t;
      v.message = "invalid width " + std::to_string(w) + " at t=" +
                  std::to_string(t) + " (only " + std::to_string(k + 1) +
                  " files present)";
      return v;
    }
    k = k + 2 - w;
    if (!model.feasible(k)) {
      v.status = Validity::Status::Infeasible;
      v.t = t;
      v.message = "stack size " + std::to_string(k) + " exceeds K=" +
                  std::to_string(model.cap()) + " at t=" + std::to_string(t);
      return v;
    }
  }
  return v;
}

}  // namespace bmc
