// extern "C" surface over the C++ core. Exceptions never cross this boundary:
// every entry point converts them into a cmon_status and records the message
// for cmon_last_error().

#include "contourmon/contourmon.h"

#include <exception>
#include <fstream>
#include <functional>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "contourmon/compare.hpp"
#include "contourmon/dfc.hpp"
#include "contourmon/error.hpp"
#include "contourmon/field.hpp"
#include "contourmon/interp.hpp"
#include "contourmon/metrics.hpp"
#include "contourmon/report_io.hpp"
#include "contourmon/scenario.hpp"

struct cmon_scenario {
  contourmon::scenario::Scenario value;
};

struct cmon_report {
  contourmon::dfc::RunReport value;
  std::optional<contourmon::field::ScalarField> field;
};

struct cmon_field {
  contourmon::field::ScalarField value;
};

struct cmon_records {
  std::vector<contourmon::metrics::IterationRecord> value;
};

namespace {

thread_local std::string g_last_error;

cmon_status to_status(contourmon::ErrorCode code) {
  using contourmon::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return CMON_ERR_INVALID_ARGUMENT;
    case ErrorCode::Config: return CMON_ERR_CONFIG;
    case ErrorCode::Io: return CMON_ERR_IO;
    case ErrorCode::InsufficientData: return CMON_ERR_INSUFFICIENT_DATA;
    case ErrorCode::Numerical: return CMON_ERR_NUMERICAL;
    case ErrorCode::DegenerateField: return CMON_ERR_DEGENERATE_FIELD;
    case ErrorCode::Shape: return CMON_ERR_SHAPE;
  }
  return CMON_ERR_INTERNAL;
}

cmon_status fail_with(cmon_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
cmon_status guarded(F&& body) {
  try {
    body();
    return CMON_OK;
  } catch (const contourmon::Error& e) {
    return fail_with(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(CMON_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(CMON_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(CMON_ERR_INTERNAL, "unknown exception");
  }
}

#define CMON_REQUIRE(cond)                                                         \
  do {                                                                             \
    if (!(cond)) return fail_with(CMON_ERR_INVALID_ARGUMENT, "null or bad argument: " #cond); \
  } while (0)

cmon_status write_file(const char* path, const std::function<void(std::ostream&)>& writer) {
  CMON_REQUIRE(path != nullptr);
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) contourmon::fail(contourmon::ErrorCode::Io, std::string("cannot open '") + path + "' for writing");
    writer(out);
    out.flush();
    if (!out) contourmon::fail(contourmon::ErrorCode::Io, std::string("write failed for '") + path + "'");
  });
}

void fill(const contourmon::metrics::IterationRecord& r, cmon_iteration* out) {
  out->iteration = r.iteration;
  out->m_requested = r.m_requested;
  out->m_traced = r.m_traced;
  out->learning_error = r.learning_error;
  out->mae = r.mae;
  out->mae_db = r.mae_db;
  out->span_ratio = r.span_ratio;
  out->kappa = r.kappa;
  out->delta = r.delta;
  out->cost_increment = r.cost_increment;
  out->cost_cumulative = r.cost_cumulative;
}

}  // namespace

extern "C" {

const char* cmon_version(void) { return "0.1.0"; }

const char* cmon_last_error(void) { return g_last_error.c_str(); }

const char* cmon_status_string(cmon_status status) {
  switch (status) {
    case CMON_OK: return "ok";
    case CMON_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CMON_ERR_CONFIG: return "configuration error";
    case CMON_ERR_IO: return "i/o error";
    case CMON_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case CMON_ERR_NUMERICAL: return "numerical error";
    case CMON_ERR_DEGENERATE_FIELD: return "degenerate field";
    case CMON_ERR_SHAPE: return "shape mismatch";
    case CMON_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

/* ---- scenarios ---- */

cmon_status cmon_scenario_load(const char* path, cmon_scenario** out) {
  CMON_REQUIRE(path != nullptr && out != nullptr);
  return guarded([&] { *out = new cmon_scenario{contourmon::scenario::load(path)}; });
}

cmon_status cmon_scenario_parse(const char* text, cmon_scenario** out) {
  CMON_REQUIRE(text != nullptr && out != nullptr);
  return guarded([&] { *out = new cmon_scenario{contourmon::scenario::parse(text)}; });
}

cmon_status cmon_scenario_default(cmon_scenario** out) {
  CMON_REQUIRE(out != nullptr);
  return guarded([&] { *out = new cmon_scenario{}; });
}

void cmon_scenario_free(cmon_scenario* scenario) { delete scenario; }

cmon_status cmon_scenario_name(const cmon_scenario* s, const char** out) {
  CMON_REQUIRE(s != nullptr && out != nullptr);
  *out = s->value.name.c_str();
  return CMON_OK;
}

cmon_status cmon_scenario_mode(const cmon_scenario* s, const char** out) {
  CMON_REQUIRE(s != nullptr && out != nullptr);
  *out = s->value.mode.c_str();
  return CMON_OK;
}

cmon_status cmon_scenario_output_dir(const cmon_scenario* s, const char** out) {
  CMON_REQUIRE(s != nullptr && out != nullptr);
  *out = s->value.output_dir.c_str();
  return CMON_OK;
}

cmon_status cmon_scenario_seed_count(const cmon_scenario* s, size_t* out) {
  CMON_REQUIRE(s != nullptr && out != nullptr);
  *out = s->value.seeds.size();
  return CMON_OK;
}

cmon_status cmon_scenario_seed_at(const cmon_scenario* s, size_t index, uint64_t* out) {
  CMON_REQUIRE(s != nullptr && out != nullptr && index < s->value.seeds.size());
  *out = s->value.seeds[index];
  return CMON_OK;
}

cmon_status cmon_scenario_target_count(const cmon_scenario* s, size_t* out) {
  CMON_REQUIRE(s != nullptr && out != nullptr);
  *out = s->value.mae_db_targets.size();
  return CMON_OK;
}

cmon_status cmon_scenario_target_at(const cmon_scenario* s, size_t index, double* out) {
  CMON_REQUIRE(s != nullptr && out != nullptr && index < s->value.mae_db_targets.size());
  *out = s->value.mae_db_targets[index];
  return CMON_OK;
}

cmon_status cmon_scenario_set_seeds(cmon_scenario* s, const uint64_t* seeds, size_t count) {
  CMON_REQUIRE(s != nullptr && seeds != nullptr && count > 0);
  s->value.seeds.assign(seeds, seeds + count);
  return CMON_OK;
}

cmon_status cmon_scenario_set_max_iterations(cmon_scenario* s, int max_iterations) {
  CMON_REQUIRE(s != nullptr);
  if (max_iterations < 1) return fail_with(CMON_ERR_CONFIG, "max_iterations must be at least 1");
  s->value.config.convergence.max_iterations = max_iterations;
  return CMON_OK;
}

cmon_status cmon_scenario_set_output_dir(cmon_scenario* s, const char* dir) {
  CMON_REQUIRE(s != nullptr && dir != nullptr && *dir != '\0');
  s->value.output_dir = dir;
  return CMON_OK;
}

/* ---- runs ---- */

cmon_status cmon_run(const cmon_scenario* s, cmon_mode mode, uint64_t seed, cmon_report** out) {
  CMON_REQUIRE(s != nullptr && out != nullptr);
  CMON_REQUIRE(mode == CMON_MODE_DUAL_SG || mode == CMON_MODE_BASELINE);
  return guarded([&] {
    const auto m = mode == CMON_MODE_DUAL_SG ? contourmon::dfc::Mode::DualSg : contourmon::dfc::Mode::Baseline;
    const auto config = s->value.run_config(m, seed);
    auto truth = contourmon::field::generate_field(config.field);
    auto report = contourmon::dfc::run(config, truth);
    *out = new cmon_report{std::move(report), std::move(truth)};
  });
}

void cmon_report_free(cmon_report* report) { delete report; }

cmon_status cmon_report_iteration_count(const cmon_report* r, size_t* out) {
  CMON_REQUIRE(r != nullptr && out != nullptr);
  *out = r->value.records.size();
  return CMON_OK;
}

cmon_status cmon_report_iteration(const cmon_report* r, size_t index, cmon_iteration* out) {
  CMON_REQUIRE(r != nullptr && out != nullptr && index < r->value.records.size());
  fill(r->value.records[index], out);
  return CMON_OK;
}

cmon_status cmon_report_levels(const cmon_report* r, size_t index, const double** levels, size_t* count) {
  CMON_REQUIRE(r != nullptr && levels != nullptr && count != nullptr && index < r->value.records.size());
  const auto& lv = r->value.records[index].levels;
  *levels = lv.data();
  *count = lv.size();
  return CMON_OK;
}

cmon_status cmon_report_converged(const cmon_report* r, int* out) {
  CMON_REQUIRE(r != nullptr && out != nullptr);
  *out = r->value.converged ? 1 : 0;
  return CMON_OK;
}

cmon_status cmon_report_termination(const cmon_report* r, const char** out) {
  CMON_REQUIRE(r != nullptr && out != nullptr);
  *out = r->value.termination.c_str();
  return CMON_OK;
}

cmon_status cmon_report_note_count(const cmon_report* r, size_t* out) {
  CMON_REQUIRE(r != nullptr && out != nullptr);
  *out = r->value.notes.size();
  return CMON_OK;
}

cmon_status cmon_report_note_at(const cmon_report* r, size_t index, const char** out) {
  CMON_REQUIRE(r != nullptr && out != nullptr && index < r->value.notes.size());
  *out = r->value.notes[index].c_str();
  return CMON_OK;
}

cmon_status cmon_report_ranges(const cmon_report* r, double* truth_min, double* truth_max, double* estimate_min,
                               double* estimate_max) {
  CMON_REQUIRE(r != nullptr && r->value.truth && r->value.final_estimate);
  if (truth_min) *truth_min = r->value.truth->min();
  if (truth_max) *truth_max = r->value.truth->max();
  if (estimate_min) *estimate_min = r->value.final_estimate->min();
  if (estimate_max) *estimate_max = r->value.final_estimate->max();
  return CMON_OK;
}

cmon_status cmon_report_write_csv(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr);
  return write_file(path, [&](std::ostream& o) { contourmon::report::write_run_csv(r->value, o); });
}

cmon_status cmon_report_write_summary(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr);
  return write_file(path, [&](std::ostream& o) { contourmon::report::write_summary_json(r->value, o); });
}

cmon_status cmon_report_write_traces(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr);
  return write_file(path, [&](std::ostream& o) { contourmon::report::write_traces_csv(r->value, o); });
}

cmon_status cmon_report_write_contours(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr);
  return write_file(path, [&](std::ostream& o) { contourmon::report::write_final_contours_csv(r->value, o); });
}

cmon_status cmon_report_write_estimate(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr && r->value.final_estimate);
  return write_file(path, [&](std::ostream& o) { contourmon::interp::write_grid_csv(*r->value.final_estimate, o); });
}

cmon_status cmon_report_write_truth(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr && r->value.truth);
  return write_file(path, [&](std::ostream& o) { contourmon::interp::write_grid_csv(*r->value.truth, o); });
}

cmon_status cmon_report_write_error_map(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr && r->value.truth && r->value.final_estimate);
  return write_file(path, [&](std::ostream& o) {
    contourmon::interp::write_grid_csv(contourmon::metrics::local_error_map(*r->value.truth, *r->value.final_estimate),
                                       o);
  });
}

cmon_status cmon_report_write_field(const cmon_report* r, const char* path) {
  CMON_REQUIRE(r != nullptr);
  return write_file(path, [&](std::ostream& o) {
    if (!r->field) contourmon::fail(contourmon::ErrorCode::InvalidArgument, "report has no generated field");
    contourmon::field::write_components_csv(*r->field, o);
  });
}

/* ---- comparison ---- */

cmon_status cmon_records_from_report(const cmon_report* r, cmon_records** out) {
  CMON_REQUIRE(r != nullptr && out != nullptr);
  return guarded([&] { *out = new cmon_records{r->value.records}; });
}

cmon_status cmon_records_read_csv(const char* path, cmon_records** out) {
  CMON_REQUIRE(path != nullptr && out != nullptr);
  return guarded([&] {
    std::ifstream in(path);
    if (!in) contourmon::fail(contourmon::ErrorCode::Io, std::string("cannot read '") + path + "'");
    *out = new cmon_records{contourmon::report::read_run_csv(in)};
  });
}

void cmon_records_free(cmon_records* records) { delete records; }

cmon_status cmon_records_count(const cmon_records* r, size_t* out) {
  CMON_REQUIRE(r != nullptr && out != nullptr);
  *out = r->value.size();
  return CMON_OK;
}

cmon_status cmon_records_at(const cmon_records* r, size_t index, cmon_iteration* out) {
  CMON_REQUIRE(r != nullptr && out != nullptr && index < r->value.size());
  fill(r->value[index], out);
  return CMON_OK;
}

cmon_status cmon_compare(const cmon_records* a, const cmon_records* b, const char* label_a, const char* label_b,
                         const double* targets, size_t target_count, const char* cost_table_path,
                         const char* target_table_path, int* partial) {
  CMON_REQUIRE(a != nullptr && b != nullptr && label_a != nullptr && label_b != nullptr);
  CMON_REQUIRE(targets != nullptr || target_count == 0);
  CMON_REQUIRE(cost_table_path != nullptr && target_table_path != nullptr);
  std::optional<contourmon::compare::Comparison> cmp;
  cmon_status st = guarded([&] {
    cmp = contourmon::compare::compare(a->value, b->value, std::span<const double>(targets, target_count));
  });
  if (st != CMON_OK) return st;
  if (partial) *partial = cmp->partial ? 1 : 0;
  st = write_file(cost_table_path,
                  [&](std::ostream& o) { contourmon::compare::write_cost_table_csv(*cmp, label_a, label_b, o); });
  if (st != CMON_OK) return st;
  st = write_file(target_table_path,
                  [&](std::ostream& o) { contourmon::compare::write_target_table_csv(*cmp, label_a, label_b, o); });
  if (st == CMON_OK && cmp->partial) g_last_error = cmp->warning;
  return st;
}

/* ---- fields ---- */

cmon_status cmon_field_generate(const cmon_scenario* s, uint64_t seed, cmon_field** out) {
  CMON_REQUIRE(s != nullptr && out != nullptr);
  return guarded([&] {
    auto cfg = s->value.config.field;
    cfg.seed = seed;
    *out = new cmon_field{contourmon::field::generate_field(cfg)};
  });
}

void cmon_field_free(cmon_field* field) { delete field; }

cmon_status cmon_field_eval(const cmon_field* f, double x, double y, double* out) {
  CMON_REQUIRE(f != nullptr && out != nullptr);
  *out = f->value.eval(x, y);
  return CMON_OK;
}

cmon_status cmon_field_gradient(const cmon_field* f, double x, double y, double* gx, double* gy) {
  CMON_REQUIRE(f != nullptr && gx != nullptr && gy != nullptr);
  const auto g = f->value.gradient(x, y);
  *gx = g.x;
  *gy = g.y;
  return CMON_OK;
}

cmon_status cmon_field_component_count(const cmon_field* f, size_t* out) {
  CMON_REQUIRE(f != nullptr && out != nullptr);
  *out = f->value.components().size();
  return CMON_OK;
}

cmon_status cmon_field_write_components(const cmon_field* f, const char* path) {
  CMON_REQUIRE(f != nullptr);
  return write_file(path, [&](std::ostream& o) { contourmon::field::write_components_csv(f->value, o); });
}

}  // extern "C"
