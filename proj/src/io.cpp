#include "levycop/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace levycop {

std::string kind_name(JumpKind kind) {
  switch (kind) {
    case JumpKind::par: return "par";
    case JumpKind::perp1: return "perp1";
    case JumpKind::perp2: return "perp2";
    case JumpKind::both: return "both";
  }
  throw std::logic_error("kind_name: unknown kind");
}

JumpKind parse_kind(const std::string& name) {
  if (name == "par") return JumpKind::par;
  if (name == "perp1") return JumpKind::perp1;
  if (name == "perp2") return JumpKind::perp2;
  if (name == "both") return JumpKind::both;
  throw std::runtime_error("unknown jump kind: " + name);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_path_csv(std::ostream& out, const JumpPath& path) {
  out << "time,w1,w2\n";
  for (const Jump& j : path.jumps) {
    out << format_double(j.time) << ',' << format_double(j.w1) << ','
        << format_double(j.w2) << '\n';
  }
}

void write_classified_csv(std::ostream& out, const ClassifiedPath& path) {
  out << "time,w1,w2,kind\n";
  for (const ClassifiedJump& j : path.jumps) {
    out << format_double(j.time) << ',' << format_double(j.w1) << ','
        << format_double(j.w2) << ',' << kind_name(j.kind) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

}  // namespace

ClassifiedPath read_classified_csv(std::istream& in, double horizon_hint) {
  ClassifiedPath path{horizon_hint, {}};
  std::string line;
  int line_no = 0;
  double max_time = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("time,", 0) == 0) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    ClassifiedJump j;
    j.time = parse_double(fields[0], line_no);
    j.w1 = parse_double(fields[1], line_no);
    j.w2 = parse_double(fields[2], line_no);
    j.kind = parse_kind(fields[3]);
    max_time = std::max(max_time, j.time);
    path.jumps.push_back(j);
  }
  if (path.horizon <= 0.0) path.horizon = max_time;
  return path;
}

JumpPath read_path_csv(std::istream& in, double horizon_hint) {
  JumpPath path{horizon_hint, {}};
  std::string line;
  int line_no = 0;
  double max_time = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("time,", 0) == 0) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 3 fields, got " + std::to_string(fields.size()));
    }
    Jump j;
    j.time = parse_double(fields[0], line_no);
    j.w1 = parse_double(fields[1], line_no);
    j.w2 = parse_double(fields[2], line_no);
    max_time = std::max(max_time, j.time);
    path.jumps.push_back(j);
  }
  if (path.horizon <= 0.0) path.horizon = max_time;
  return path;
}

namespace {

// days from civil date (Howard Hinnant's algorithm), era-based
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

long parse_date_days(const std::string& s, int line_no) {
  int y = 0, m = 0, d = 0;
  char dash1 = 0, dash2 = 0;
  // strip surrounding quotes, if any
  std::string t = s;
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
  std::stringstream ts(t);
  if (!(ts >> y >> dash1 >> m >> dash2 >> d) || dash1 != '-' || dash2 != '-' ||
      m < 1 || m > 12 || d < 1 || d > 31) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad date '" + s + "'");
  }
  return days_from_civil(y, m, d);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

DanishSummary preprocess_danish(std::istream& in, double horizon_override) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("line 1: empty input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  // locate the date / building / contents columns by header name, falling back
  // to the first three columns
  const auto header = split_csv_line(line);
  int col_date = 0, col_build = 1, col_cont = 2;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    const std::string h = lower(header[i]);
    if (h.find("date") != std::string::npos) col_date = i;
    if (h.find("build") != std::string::npos) col_build = i;
    if (h.find("cont") != std::string::npos) col_cont = i;
  }
  const int needed = std::max({col_date, col_build, col_cont}) + 1;

  constexpr double kThreshold = 0.75;
  const double log_threshold = std::log(kThreshold);

  DanishSummary summary;
  std::vector<long> days;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++summary.total_rows;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) < needed) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected at least " +
                               std::to_string(needed) + " fields, got " +
                               std::to_string(fields.size()));
    }
    const long day = parse_date_days(fields[col_date], line_no);
    const double building = parse_double(fields[col_build], line_no);
    const double content = parse_double(fields[col_cont], line_no);
    if (building < 0.0 || content < 0.0) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": negative loss");
    }

    ClassifiedJump j{0.0, 0.0, 0.0, JumpKind::par};
    if (building > kThreshold && content > kThreshold) {
      j.kind = JumpKind::par;
      j.w1 = std::log(building) - log_threshold;
      j.w2 = std::log(content) - log_threshold;
    } else if (building > kThreshold && content == 0.0) {
      j.kind = JumpKind::perp1;
      j.w1 = std::log(building) - log_threshold;
    } else if (content > kThreshold && building == 0.0) {
      j.kind = JumpKind::perp2;
      j.w2 = std::log(content) - log_threshold;
    } else {
      continue;
    }
    days.push_back(day);
    summary.path.jumps.push_back(j);
  }

  summary.retained = static_cast<long>(summary.path.jumps.size());
  double horizon = horizon_override;
  if (!(horizon > 0.0)) {
    long span = 0;
    if (!days.empty()) span = days.back() - days.front();
    horizon = span > 0 ? static_cast<double>(span) / 365.0 : 1.0;
  }
  summary.path.horizon = horizon;
  const double n = static_cast<double>(std::max<long>(summary.retained, 1));
  for (long i = 0; i < summary.retained; ++i) {
    summary.path.jumps[static_cast<std::size_t>(i)].time =
        horizon * (static_cast<double>(i) + 1.0) / n;
  }
  return summary;
}

}  // namespace levycop
