#include "bmc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace bmc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open for reading: " + path);
  return f;
}

std::vector<std::string> split_csv(const std::string& line) {
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
  return fields;
}

double parse_double(const std::string& s, int line) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "line " + std::to_string(line) +
                               ": cannot parse number '" + s + "'");
  }
}

long parse_int(const std::string& s, int line) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(line, "line " + std::to_string(line) +
                               ": cannot parse integer '" + s + "'");
  }
  return v;
}

}  // namespace

void write_instance_csv(std::ostream& out, const Instance& instance) {
  out << "t,length,read_rate\n";
  for (int t = 1; t <= instance.size(); ++t) {
    out << t << ',' << format_double(instance.length(t)) << ','
        << format_double(instance.read_rate(t)) << '\n';
  }
}

void write_instance_csv(const std::string& path, const Instance& instance) {
  auto f = open_out(path);
  write_instance_csv(f, instance);
}

Instance read_instance_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty instance file");
  if (split_csv(line) != std::vector<std::string>{"t", "length", "read_rate"}) {
    throw ParseError(1, "line 1: expected header t,length,read_rate");
  }
  std::vector<double> lens, reads;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw ParseError(lineno, "line " + std::to_string(lineno) +
                                   ": expected 3 fields");
    }
    long t = parse_int(fields[0], lineno);
    if (t != static_cast<long>(lens.size()) + 1) {
      throw ParseError(lineno, "line " + std::to_string(lineno) +
                                   ": expected t=" +
                                   std::to_string(lens.size() + 1));
    }
    lens.push_back(parse_double(fields[1], lineno));
    reads.push_back(parse_double(fields[2], lineno));
  }
  return Instance(std::move(lens), std::move(reads));
}

Instance read_instance_csv(const std::string& path) {
  auto f = open_in(path);
  return read_instance_csv(f);
}

void write_schedule_csv(std::ostream& out, const Schedule& schedule) {
  out << "t,width\n";
  for (int t = 1; t <= schedule.size(); ++t) {
    out << t << ',' << schedule.width(t) << '\n';
  }
}

void write_schedule_csv(const std::string& path, const Schedule& schedule) {
  auto f = open_out(path);
  write_schedule_csv(f, schedule);
}

Schedule read_schedule_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty schedule file");
  if (split_csv(line) != std::vector<std::string>{"t", "width"}) {
    throw ParseError(1, "line 1: expected header t,width");
  }
  std::vector<int> widths;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 2) {
      throw ParseError(lineno, "line " + std::to_string(lineno) +
                                   ": expected 2 fields");
    }
    long t = parse_int(fields[0], lineno);
    if (t != static_cast<long>(widths.size()) + 1) {
      throw ParseError(lineno, "line " + std::to_string(lineno) +
                                   ": expected t=" +
                                   std::to_string(widths.size() + 1));
    }
    widths.push_back(static_cast<int>(parse_int(fields[1], lineno)));
  }
  return Schedule(std::move(widths));
}

Schedule read_schedule_csv(const std::string& path) {
  auto f = open_in(path);
  return read_schedule_csv(f);
}

}  // namespace bmc
