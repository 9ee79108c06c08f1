#include "contourmon/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "contourmon/contour.hpp"
#include "contourmon/error.hpp"
#include "json.hpp"

namespace contourmon::report {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double parse_num(const std::string& s) {
  if (s == "-inf") return -INFINITY;
  if (s == "inf") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::Io, "run csv: bad number '" + s + "'");
  }
  if (used != s.size()) fail(ErrorCode::Io, "run csv: bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void write_run_csv(const dfc::RunReport& report, std::ostream& out) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : report.records) {
    out << r.iteration << ',' << r.m_requested << ',' << r.m_traced << ',' << num(r.learning_error) << ','
        << num(r.mae) << ',' << num(r.mae_db) << ',' << num(r.span_ratio) << ',' << r.kappa << ',' << num(r.delta)
        << ',' << num(r.cost_increment) << ',' << num(r.cost_cumulative) << ',';
    for (std::size_t k = 0; k < r.levels.size(); ++k) out << (k ? ";" : "") << num(r.levels[k]);
    out << '\n';
  }
}

std::vector<metrics::IterationRecord> read_run_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader) fail(ErrorCode::Io, "run csv: missing or unexpected header");
  std::vector<metrics::IterationRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 12) fail(ErrorCode::Io, "run csv: expected 12 columns");
    metrics::IterationRecord r;
    r.iteration = static_cast<int>(parse_num(cells[0]));
    r.m_requested = static_cast<int>(parse_num(cells[1]));
    r.m_traced = static_cast<int>(parse_num(cells[2]));
    r.learning_error = parse_num(cells[3]);
    r.mae = parse_num(cells[4]);
    r.mae_db = parse_num(cells[5]);
    r.span_ratio = parse_num(cells[6]);
    r.kappa = static_cast<int>(parse_num(cells[7]));
    r.delta = parse_num(cells[8]);
    r.cost_increment = parse_num(cells[9]);
    r.cost_cumulative = parse_num(cells[10]);
    if (!cells[11].empty()) {
      for (const auto& l : split(cells[11], ';')) r.levels.push_back(parse_num(l));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_traces_csv(const dfc::RunReport& report, std::ostream& out) {
  out << "iteration,level,piece_id,x,y\n";
  for (const auto& t : report.traces) {
    for (const Vec2& c : t.trace.reported) {
      out << t.iteration << ',' << num(t.level) << ',' << t.piece_id << ',' << num(c.x) << ',' << num(c.y) << '\n';
    }
  }
}

void write_final_contours_csv(const dfc::RunReport& report, std::ostream& out) {
  out << "level,piece_id,x,y\n";
  if (!report.final_estimate) return;
  std::vector<double> lv = report.traced_levels;
  std::sort(lv.begin(), lv.end());
  for (double level : lv) {
    const auto pieces = contour::extract_contours(*report.final_estimate, level);
    contour::write_contours_csv(pieces, out, false);
  }
}

void write_summary_json(const dfc::RunReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  j["mode"] = dfc::to_string(report.mode);
  j["seed"] = report.seed;
  j["converged"] = report.converged;
  j["termination"] = report.termination;
  j["iterations"] = report.records.size();
  j["samples"] = report.sample_count;
  j["traces"] = report.traces.size();
  if (!report.records.empty()) {
    const auto& last = report.records.back();
    j["final"] = {{"M_requested", last.m_requested},
                  {"learning_error", last.learning_error},
                  {"mae", last.mae},
                  {"mae_db", std::isfinite(last.mae_db) ? nlohmann::ordered_json(last.mae_db) : nullptr},
                  {"span_ratio", last.span_ratio},
                  {"cost", last.cost_cumulative}};
  }
  j["notes"] = report.notes;
  out << j.dump(2) << '\n';
}

}  // namespace contourmon::report
