#include "contourmon/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "contourmon/error.hpp"

namespace contourmon::compare {

namespace {

struct Curve {
  std::vector<double> cost;
  std::vector<double> mae_db;

  double at(double c) const {
    if (cost.size() == 1) return mae_db.front();
    const auto it = std::upper_bound(cost.begin(), cost.end(), c);
    if (it == cost.begin()) return mae_db.front();
    if (it == cost.end()) return mae_db.back();
    const std::size_t k = static_cast<std::size_t>(it - cost.begin());
    const double t = (c - cost[k - 1]) / (cost[k] - cost[k - 1]);
    return mae_db[k - 1] + t * (mae_db[k] - mae_db[k - 1]);
  }
};

// Iterations that added no cost replace the previous point.
Curve make_curve(std::span<const metrics::IterationRecord> records) {
  Curve c;
  for (const auto& r : records) {
    if (!std::isfinite(r.mae_db)) continue;
    if (!c.cost.empty() && r.cost_cumulative <= c.cost.back()) {
      c.mae_db.back() = r.mae_db;
      continue;
    }
    c.cost.push_back(r.cost_cumulative);
    c.mae_db.push_back(r.mae_db);
  }
  return c;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::optional<double> cost_at_mae_db(std::span<const metrics::IterationRecord> records, double target_mae_db) {
  for (const auto& r : records) {
    if (r.mae_db <= target_mae_db) return r.cost_cumulative;
  }
  return std::nullopt;
}

double lowest_common_mae_db(std::span<const metrics::IterationRecord> a, std::span<const metrics::IterationRecord> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::InvalidArgument, "compare: empty run");
  auto best = [](std::span<const metrics::IterationRecord> r) {
    return std::min_element(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.mae_db < y.mae_db; })
        ->mae_db;
  };
  return std::max(best(a), best(b));
}

Comparison compare(std::span<const metrics::IterationRecord> a, std::span<const metrics::IterationRecord> b,
                   std::span<const double> mae_db_targets) {
  if (a.empty() || b.empty()) fail(ErrorCode::InvalidArgument, "compare: both reports must have iterations");
  Comparison out;
  const Curve ca = make_curve(a);
  const Curve cb = make_curve(b);
  if (!ca.cost.empty() && !cb.cost.empty()) {
    const double lo = std::max(ca.cost.front(), cb.cost.front());
    const double hi = std::min(ca.cost.back(), cb.cost.back());
    std::vector<double> axis;
    for (const Curve* c : {&ca, &cb}) {
      for (double x : c->cost) {
        if (x >= lo && x <= hi) {
          axis.push_back(x);
        } else {
          out.partial = true;
        }
      }
    }
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    for (double x : axis) {
      const double ma = ca.at(x);
      const double mb = cb.at(x);
      out.rows.push_back({x, ma, mb, ma - mb});
    }
    if (lo > hi) out.warning = "cost ranges do not overlap; no common cost points";
  } else {
    out.partial = true;
    out.warning = "a run has no finite MAE-dB values";
  }
  if (out.partial && out.warning.empty()) out.warning = "cost points outside the common cost range were skipped";
  for (double t : mae_db_targets) out.targets.push_back({t, cost_at_mae_db(a, t), cost_at_mae_db(b, t)});
  return out;
}

void write_cost_table_csv(const Comparison& c, const std::string& label_a, const std::string& label_b,
                          std::ostream& out) {
  out << "cost,mae_db_" << label_a << ",mae_db_" << label_b << ",difference\n";
  for (const auto& r : c.rows) {
    out << num(r.cost) << ',' << num(r.mae_db_a) << ',' << num(r.mae_db_b) << ',' << num(r.difference) << '\n';
  }
}

void write_target_table_csv(const Comparison& c, const std::string& label_a, const std::string& label_b,
                            std::ostream& out) {
  out << "target_mae_db,cost_" << label_a << ",cost_" << label_b << '\n';
  auto cell = [](const std::optional<double>& v) { return v ? num(*v) : std::string("unreached"); };
  for (const auto& t : c.targets) out << num(t.target_mae_db) << ',' << cell(t.cost_a) << ',' << cell(t.cost_b) << '\n';
}

}  // namespace contourmon::compare
