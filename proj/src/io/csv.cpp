#include "rtdp/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtdp {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("csv: cannot parse number: '" + s + "'");
  }
  return v;
}

void write_run_csv(const std::string& path, const std::vector<EpisodeRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("csv: cannot open for writing: " + path);
  out << "episode,real_steps,traces,seconds,return\n";
  for (const EpisodeRow& r : rows) {
    out << r.episode << ',' << r.real_steps << ',' << r.traces << ','
        << format_double(r.seconds) << ',' << format_double(r.episode_return) << '\n';
  }
  if (!out) throw std::runtime_error("csv: write failed: " + path);
}

std::vector<EpisodeRow> read_run_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "episode,real_steps,traces,seconds,return") {
    throw std::runtime_error("csv: bad run.csv header in " + path);
  }
  std::vector<EpisodeRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    EpisodeRow r;
    std::getline(ss, field, ',');
    r.episode = std::stoll(field);
    std::getline(ss, field, ',');
    r.real_steps = std::stoll(field);
    std::getline(ss, field, ',');
    r.traces = std::stoll(field);
    std::getline(ss, field, ',');
    r.seconds = parse_double(field);
    std::getline(ss, field, ',');
    r.episode_return = parse_double(field);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace rtdp
