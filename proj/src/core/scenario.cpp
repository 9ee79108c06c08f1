#include "contourmon/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "contourmon/error.hpp"

namespace contourmon::scenario {

namespace pt = boost::property_tree;

dfc::RunConfig Scenario::run_config(dfc::Mode m, std::uint64_t seed) const {
  dfc::RunConfig c = config;
  c.mode = m;
  c.field.seed = seed;
  return c;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T convert(const std::string& key, const std::string& raw) {
  std::istringstream in(raw);
  T v{};
  in >> v;
  if (in.fail() || !(in >> std::ws).eof()) fail(ErrorCode::Config, "scenario: bad value for '" + key + "': " + raw);
  return v;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {
    for (const auto& [section, body] : tree_) {
      if (body.empty() && !body.data().empty()) {
        fail(ErrorCode::Config, "scenario: key '" + section + "' outside of a section");
      }
      for (const auto& [key, value] : body) present_.insert(section + "." + key);
    }
  }

  template <class T>
  void get(const std::string& path, T& target) {
    const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!v) return;
    consumed_.insert(path);
    target = convert<T>(path, trim(*v));
  }

  std::optional<std::string> raw(const std::string& path) {
    const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (v) consumed_.insert(path);
    return v ? std::optional<std::string>(trim(*v)) : std::nullopt;
  }

  void reject_unknown() const {
    for (const auto& key : present_) {
      if (!consumed_.contains(key)) fail(ErrorCode::Config, "scenario: unknown key '" + key + "'");
    }
  }

 private:
  const pt::ptree& tree_;
  std::set<std::string> present_;
  std::set<std::string> consumed_;
};

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split_list(text)) {
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      fail(ErrorCode::Config, "seed list: '" + item + "' is not a non-negative integer");
    }
    seeds.push_back(convert<std::uint64_t>("seeds", item));
  }
  if (seeds.empty()) fail(ErrorCode::Config, "seed list: empty");
  return seeds;
}

Scenario parse(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::Config, std::string("scenario: ") + e.what());
  }

  Scenario s;
  Reader r(tree);
  auto& c = s.config;
  r.get("scenario.name", s.name);
  r.get("scenario.mode", s.mode);
  r.get("scenario.output_dir", s.output_dir);
  if (auto seeds = r.raw("scenario.seeds")) s.seeds = parse_seed_list(*seeds);

  r.get("field.width", c.field.area.width);
  r.get("field.height", c.field.area.height);
  r.get("field.n1", c.field.n1);
  r.get("field.n2", c.field.n2);
  r.get("field.sigma1", c.field.sigma1);
  r.get("field.sigma2", c.field.sigma2);
  r.get("field.target_max", c.field.target_max);
  r.get("field.probe_resolution", c.field.probe_resolution);

  r.get("grid.P", c.grid.P);
  r.get("grid.Q", c.grid.Q);

  r.get("run.initial_m", c.initial_m);
  r.get("run.initial_kappa", c.initial_kappa);
  r.get("run.initial_delta_fraction", c.initial_delta_fraction);
  r.get("run.error_threshold", c.convergence.error_threshold);
  r.get("run.span_window", c.convergence.span_window);
  r.get("run.max_iterations", c.convergence.max_iterations);
  r.get("run.survey_spacing", c.survey_spacing);
  r.get("run.pdf_bins", c.pdf_bins);
  r.get("run.max_nodes", c.fit.max_nodes);

  r.get("trace.step", c.trace.step);
  r.get("trace.trace_tol", c.trace.trace_tol);
  r.get("trace.search_radius", c.trace.search_radius);
  r.get("trace.max_steps", c.trace.max_steps);
  r.get("trace.report_spacing", c.trace.report_spacing);

  if (auto targets = r.raw("compare.mae_db_targets")) {
    s.mae_db_targets.clear();
    for (const auto& t : split_list(*targets)) s.mae_db_targets.push_back(convert<double>("compare.mae_db_targets", t));
  }
  r.reject_unknown();

  c.grid.area = c.field.area;
  if (s.mode != "both") dfc::parse_mode(s.mode);
  if (s.output_dir.empty()) fail(ErrorCode::Config, "scenario: output_dir must not be empty");
  c.validate();
  return s;
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Config, "scenario: cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace contourmon::scenario
