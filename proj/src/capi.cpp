#include "hoover/hoover.h"

#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "hoover/error.hpp"
#include "hoover/mc_eval.hpp"
#include "hoover/model_registry.hpp"
#include "hoover/run_config.hpp"

struct hoover_model {
  hoover::NmcModel model;
};

struct hoover_result {
  hoover::RunResult result;
};

struct hoover_sweep {
  std::vector<hoover::SweepRow> rows;
};

namespace {

thread_local std::string last_error;

hoover_status status_of(hoover::ErrorCode code) {
  using hoover::ErrorCode;
  switch (code) {
    case ErrorCode::kConfig: return HOOVER_ERROR_CONFIG;
    case ErrorCode::kDegenerateRegion: return HOOVER_ERROR_DEGENERATE_REGION;
    case ErrorCode::kContractViolation: return HOOVER_ERROR_CONTRACT;
    case ErrorCode::kSimulationFault: return HOOVER_ERROR_SIMULATION;
    case ErrorCode::kUnknownModel: return HOOVER_ERROR_UNKNOWN_MODEL;
    case ErrorCode::kParse: return HOOVER_ERROR_PARSE;
    case ErrorCode::kOutOfDomain: return HOOVER_ERROR_OUT_OF_DOMAIN;
    case ErrorCode::kNumerical: return HOOVER_ERROR_NUMERICAL;
    case ErrorCode::kDimensionGuard: return HOOVER_ERROR_DIMENSION_GUARD;
    case ErrorCode::kIo: return HOOVER_ERROR_IO;
  }
  return HOOVER_ERROR_UNKNOWN;
}

hoover_status set_error(hoover_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body` and converts every exception into a status code.
template <typename Body>
hoover_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return HOOVER_OK;
  } catch (const hoover::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(HOOVER_ERROR_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return set_error(HOOVER_ERROR_UNKNOWN, e.what());
  } catch (...) {
    return set_error(HOOVER_ERROR_UNKNOWN, "unknown exception");
  }
}

hoover_status copy_text(const std::string& text, char* buffer, size_t capacity, size_t* required) {
  if (required != nullptr) *required = text.size() + 1;
  if (buffer == nullptr) return HOOVER_OK;
  if (capacity < text.size() + 1) {
    return set_error(HOOVER_ERROR_BUFFER_TOO_SMALL,
                     "buffer holds " + std::to_string(capacity) + " bytes, need " +
                         std::to_string(text.size() + 1));
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return HOOVER_OK;
}

hoover::ParamBlock parse_params(const char* params_json) {
  hoover::ParamBlock block;
  if (params_json == nullptr || *params_json == '\0') return block;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(params_json);
  } catch (const nlohmann::json::parse_error& e) {
    hoover::fail(hoover::ErrorCode::kParse, std::string("malformed model parameters: ") + e.what());
  }
  hoover::require(j.is_object(), hoover::ErrorCode::kConfig, "model parameters must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    hoover::require(v.is_number(), hoover::ErrorCode::kConfig, "model parameter '" + k + "' must be a number");
    block[k] = v.get<double>();
  }
  return block;
}

}  // namespace

extern "C" {

const char* hoover_version(void) { return "1.0.0"; }

const char* hoover_status_name(hoover_status status) {
  switch (status) {
    case HOOVER_OK: return "ok";
    case HOOVER_ERROR_CONFIG: return "configuration error";
    case HOOVER_ERROR_DEGENERATE_REGION: return "degenerate region";
    case HOOVER_ERROR_CONTRACT: return "contract violation";
    case HOOVER_ERROR_SIMULATION: return "simulation fault";
    case HOOVER_ERROR_UNKNOWN_MODEL: return "unknown model";
    case HOOVER_ERROR_PARSE: return "parse error";
    case HOOVER_ERROR_OUT_OF_DOMAIN: return "point outside search space";
    case HOOVER_ERROR_NUMERICAL: return "numerical failure";
    case HOOVER_ERROR_DIMENSION_GUARD: return "dimension guard";
    case HOOVER_ERROR_IO: return "i/o error";
    case HOOVER_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case HOOVER_ERROR_BUFFER_TOO_SMALL: return "buffer too small";
    case HOOVER_ERROR_UNKNOWN: return "unknown error";
  }
  return "unknown error";
}

const char* hoover_last_error(void) { return last_error.c_str(); }

hoover_status hoover_model_create(const char* name, const char* params_json, int time_bound,
                                  hoover_model** out) {
  if (name == nullptr || out == nullptr) {
    return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "name and out must not be NULL");
  }
  *out = nullptr;
  return guarded([&] {
    hoover::ModelRequest request{name, parse_params(params_json), std::nullopt};
    if (time_bound > 0) request.time_bound = time_bound;
    *out = new hoover_model{hoover::make_model(request)};
  });
}

void hoover_model_destroy(hoover_model* model) { delete model; }

hoover_status hoover_model_dimension(const hoover_model* model, size_t* dimension) {
  if (model == nullptr || dimension == nullptr) {
    return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "model and dimension must not be NULL");
  }
  *dimension = model->model.search_space.dimension();
  return HOOVER_OK;
}

hoover_status hoover_model_bounds(const hoover_model* model, double* lower, double* upper,
                                  size_t capacity) {
  if (model == nullptr || lower == nullptr || upper == nullptr) {
    return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "arguments must not be NULL");
  }
  const auto& space = model->model.search_space;
  if (capacity < space.dimension()) {
    return set_error(HOOVER_ERROR_BUFFER_TOO_SMALL, "bounds need " + std::to_string(space.dimension()) + " slots");
  }
  std::copy(space.lower().begin(), space.lower().end(), lower);
  std::copy(space.upper().begin(), space.upper().end(), upper);
  return HOOVER_OK;
}

hoover_status hoover_model_is_synthesis(const hoover_model* model, int* synthesis) {
  if (model == nullptr || synthesis == nullptr) {
    return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "arguments must not be NULL");
  }
  *synthesis = model->model.mode == hoover::ModelMode::kSynthesis ? 1 : 0;
  return HOOVER_OK;
}

hoover_status hoover_estimate_point(const hoover_model* model, const double* point, size_t dimension,
                                    uint64_t samples, uint64_t seed, hoover_estimate* out) {
  if (model == nullptr || out == nullptr || (point == nullptr && dimension > 0)) {
    return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "arguments must not be NULL");
  }
  return guarded([&] {
    const auto est = hoover::mc_estimate(model->model, std::span<const double>(point, dimension),
                                         samples, seed);
    *out = hoover_estimate{est.mean, est.std_error, est.sample_count};
  });
}

hoover_status hoover_run(const char* config_json, unsigned threads, hoover_result** out) {
  if (config_json == nullptr || out == nullptr) {
    return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "config and out must not be NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const hoover::RunConfig cfg = hoover::parse_run_config(config_json);
    *out = new hoover_result{hoover::execute_run(cfg, threads)};
  });
}

void hoover_result_destroy(hoover_result* result) { delete result; }

hoover_status hoover_result_best(const hoover_result* result, double* point, size_t capacity,
                                 size_t* dimension, double* estimate) {
  if (result == nullptr) return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "result must not be NULL");
  const auto& best = result->result.best_point;
  if (dimension != nullptr) *dimension = best.size();
  if (estimate != nullptr) *estimate = result->result.best_estimate;
  if (point == nullptr) return HOOVER_OK;
  if (capacity < best.size()) {
    return set_error(HOOVER_ERROR_BUFFER_TOO_SMALL, "best point needs " + std::to_string(best.size()) + " slots");
  }
  std::copy(best.begin(), best.end(), point);
  return HOOVER_OK;
}

hoover_status hoover_result_json(const hoover_result* result, char* buffer, size_t capacity,
                                 size_t* required) {
  if (result == nullptr) return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "result must not be NULL");
  return copy_text(hoover::to_json(result->result).dump(2) + "\n", buffer, capacity, required);
}

hoover_status hoover_result_trace_jsonl(const hoover_result* result, char* buffer, size_t capacity,
                                        size_t* required) {
  if (result == nullptr) return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "result must not be NULL");
  return copy_text(hoover::traces_to_jsonl(result->result), buffer, capacity, required);
}

hoover_status hoover_sweep_run(const char* config_json, const uint64_t* budgets, size_t count,
                               size_t repeats, unsigned threads, hoover_sweep** out) {
  if (config_json == nullptr || out == nullptr || (budgets == nullptr && count > 0)) {
    return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "arguments must not be NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const hoover::RunConfig cfg = hoover::parse_run_config(config_json);
    const hoover::NmcModel model = hoover::make_model(cfg.model_request());
    hoover::SweepSpec spec;
    spec.budgets.assign(budgets, budgets + count);
    spec.repeats = repeats;
    spec.base = cfg.meta(threads);
    spec.base.collect_traces = false;
    auto rows = hoover::budget_sweep(hoover::ModelObjective(model), model.search_space, spec);
    *out = new hoover_sweep{std::move(rows)};
  });
}

void hoover_sweep_destroy(hoover_sweep* sweep) { delete sweep; }

hoover_status hoover_sweep_table(const hoover_sweep* sweep, char* buffer, size_t capacity,
                                 size_t* required) {
  if (sweep == nullptr) return set_error(HOOVER_ERROR_INVALID_ARGUMENT, "sweep must not be NULL");
  std::ostringstream out;
  hoover::write_sweep_table(out, sweep->rows);
  return copy_text(out.str(), buffer, capacity, required);
}

}  // extern "C"
