#include "bmc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "bmc/io.hpp"
#include "bmc/offline.hpp"
#include "bmc/policies.hpp"

namespace bmc {

CostModel parse_model(const std::string& spec) {
  if (spec == "linear") return CostModel::linear();
  if (spec == "sqrt") {
    return CostModel::general([](int k) { return std::sqrt(double(k)); },
                              "sqrt");
  }
  if (spec.rfind("capped:", 0) == 0) {
    try {
      return CostModel::capped(std::stoi(spec.substr(7)));
    } catch (const std::exception&) {
      throw Error("model '" + spec + "': bad K");
    }
  }
  throw Error("unknown model '" + spec + "' (expected linear, capped:K, sqrt)");
}

namespace {

int worker_count(size_t cells) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("BMC_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) hw = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<size_t>(hw, std::max<size_t>(cells, 1)));
}

uint64_t mix_seed(uint64_t seed, uint64_t rep) {
  uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (rep + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& config) {
  if (config.n_grid.empty()) throw Error("run_experiment: empty n grid");
  if (config.policies.empty()) throw Error("run_experiment: no policies");
  std::vector<int> grid = config.n_grid;
  std::sort(grid.begin(), grid.end());
  int max_n = grid.back();
  CostModel model = parse_model(config.model);

  // One long instance per repetition, truncated per cell.
  std::vector<Instance> inputs;
  for (int rep = 0; rep < config.repetitions; ++rep) {
    WorkloadSpec spec = config.workload;
    spec.n = std::max(spec.n, max_n);
    spec.seed = mix_seed(config.workload.seed, rep);
    inputs.push_back(generate(spec));
  }

  struct Cell {
    int n, rep;
    std::string policy;
  };
  std::vector<Cell> cells;
  for (int n : grid) {
    for (const auto& p : config.policies) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        cells.push_back({n, rep, p});
      }
    }
  }
  std::vector<ResultRow> rows(cells.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      const Cell& cell = cells[i];
      ResultRow& row = rows[i];
      row.n = cell.n;
      row.policy = cell.policy;
      row.rep = cell.rep;
      try {
        Instance inst = inputs[cell.rep].prefix(cell.n);
        auto policy = parse_policy(cell.policy, model);
        PolicyRun run = run_policy(inst, *policy, model);
        row.total_cost = run.trace.total_cost;
        row.per_step_cost = run.trace.total_cost / cell.n;
        row.max_stack = run.trace.max_stack;
      } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  int workers = worker_count(cells.size());
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  // OPT per (n, rep), solved serially: the DP dominates memory and the
  // policy cells dominate the cell count.
  if (config.include_opt) {
    int cap = model.kind() == CostModel::Kind::CappedK ? config.opt_cap_capped
                                                       : config.opt_cap_linear;
    std::map<std::pair<int, int>, double> opt_cost;
    for (int n : grid) {
      if (n > cap) continue;
      for (int rep = 0; rep < config.repetitions; ++rep) {
        opt_cost[{n, rep}] = dp_opt(inputs[rep].prefix(n), model).cost;
      }
    }
    for (auto& row : rows) {
      auto it = opt_cost.find({row.n, row.rep});
      if (it != opt_cost.end() && row.ok) {
        row.has_opt = true;
        row.opt_cost = it->second;
        row.ratio = it->second > 0 ? row.total_cost / it->second
                                   : (row.total_cost > 0 ? HUGE_VAL : 1.0);
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.policy != b.policy) return a.policy < b.policy;
    return a.rep < b.rep;
  });
  return ResultsTable{std::move(rows)};
}

void write_results_csv(std::ostream& out, const ResultsTable& table) {
  out << "n,policy,rep,total_cost,per_step_cost,max_stack,opt_cost,ratio\n";
  for (const auto& r : table.rows) {
    out << r.n << ',' << r.policy << ',' << r.rep << ',';
    if (r.ok) {
      out << format_double(r.total_cost) << ',' << format_double(r.per_step_cost)
          << ',' << r.max_stack << ',';
      if (r.has_opt) {
        out << format_double(r.opt_cost) << ',' << format_double(r.ratio);
      } else {
        out << ',';
      }
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

void write_results_csv(const std::string& path, const ResultsTable& table) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open for writing: " + path);
  write_results_csv(f, table);
}

ResultsTable read_results_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(f, line)) throw Error("empty results file: " + path);
  ResultsTable table;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur.push_back(c);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 8) {
      throw Error("results line " + std::to_string(lineno) +
                  ": expected 8 fields");
    }
    ResultRow r;
    r.n = std::atoi(fields[0].c_str());
    r.policy = fields[1];
    r.rep = std::atoi(fields[2].c_str());
    r.ok = !fields[3].empty();
    if (r.ok) {
      r.total_cost = std::atof(fields[3].c_str());
      r.per_step_cost = std::atof(fields[4].c_str());
      r.max_stack = std::atoi(fields[5].c_str());
      r.has_opt = !fields[6].empty();
      if (r.has_opt) {
        r.opt_cost = std::atof(fields[6].c_str());
        r.ratio = std::atof(fields[7].c_str());
      }
    }
    table.rows.push_back(std::move(r));
  }
  return table;
}

namespace {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (n, mean per-step)
};

std::vector<Series> build_series(const ResultsTable& table) {
  // Mean per-step cost over repetitions, one series per policy, plus an
  // "opt" series where opt costs are present.
  std::map<std::string, std::map<int, std::pair<double, int>>> acc;
  std::map<int, std::pair<double, int>> opt_acc;
  for (const auto& r : table.rows) {
    if (!r.ok) continue;
    auto& cell = acc[r.policy][r.n];
    cell.first += r.per_step_cost;
    cell.second += 1;
    if (r.has_opt) {
      auto& oc = opt_acc[r.n];
      oc.first += r.opt_cost / r.n;
      oc.second += 1;
    }
  }
  std::vector<Series> series;
  for (auto& [policy, by_n] : acc) {
    Series s;
    s.name = policy;
    for (auto& [n, cell] : by_n) {
      s.points.push_back({double(n), cell.first / cell.second});
    }
    series.push_back(std::move(s));
  }
  if (!opt_acc.empty()) {
    Series s;
    s.name = "opt";
    for (auto& [n, cell] : opt_acc) {
      s.points.push_back({double(n), cell.first / cell.second});
    }
    series.push_back(std::move(s));
  }
  return series;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

void write_svg(std::ostream& out, const std::vector<Series>& series) {
  const double width = 720, height = 480;
  const double ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = 0, ymax = -HUGE_VAL;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymax *= 1.05;
  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes with 5 ticks each.
  out << "<line x1=\"" << ml << "\" y1=\"" << py(ymin) << "\" x2=\""
      << width - mr << "\" y2=\"" << py(ymin)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << py(ymin) << "\" x2=\"" << ml
      << "\" y2=\"" << mt << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double xv = xmin + (xmax - xmin) * i / 5;
    double yv = ymin + (ymax - ymin) * i / 5;
    out << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(xv)
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">n</text>\n";
  out << "<text x=\"14\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << (mt + height - mb) / 2 << ")\">cost per step</text>\n";
  int ci = 0;
  for (const auto& s : series) {
    const char* color = kPalette[ci % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : s.points) out << px(x) << ',' << py(y) << ' ';
    out << "\"/>\n";
    for (auto [x, y] : s.points) {
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << width - mr - 150 << "\" y=\"" << mt + 16 + 16 * ci
        << "\" font-size=\"12\" fill=\"" << color << "\">" << s.name
        << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
}

void write_table(std::ostream& out, const std::vector<Series>& series) {
  // All n values appearing in any series, one row each.
  std::vector<double> ns;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) ns.push_back(x);
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  out << "# per-step cost by n\n";
  out << "n";
  for (const auto& s : series) out << '\t' << s.name;
  out << '\n';
  for (double n : ns) {
    out << format_double(n);
    for (const auto& s : series) {
      auto it = std::find_if(s.points.begin(), s.points.end(),
                             [&](auto& p) { return p.first == n; });
      out << '\t' << (it == s.points.end() ? "" : format_double(it->second));
    }
    out << '\n';
  }
}

}  // namespace

void emit_plot_data(const ResultsTable& table, const std::string& svg_path,
                    const std::string& table_path) {
  auto series = build_series(table);
  if (series.empty()) throw Error("emit_plot_data: empty results table");
  if (!svg_path.empty()) {
    std::ofstream f(svg_path);
    if (!f) throw Error("cannot open for writing: " + svg_path);
    write_svg(f, series);
  }
  if (!table_path.empty()) {
    std::ofstream f(table_path);
    if (!f) throw Error("cannot open for writing: " + table_path);
    write_table(f, series);
  }
}

}  // namespace bmc
